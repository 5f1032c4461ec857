import json
import os
import unittest
from fractions import Fraction
from typing import ClassVar

from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.catalog import build_example
from homeo_orbits.homeo.maps import PiecewiseMap, validated
from homeo_orbits.homeo.pieces import AffinePiece
from homeo_orbits.utils.rational import parse_rational


class TestCase(unittest.TestCase):
	config: ClassVar = {
		"dedup_tol": Fraction(1, 2**40),
		"prec": Fraction(1, 2**42),
		"resolution": Fraction(1, 2**20),
		"transport_tol": Fraction(1, 10**9),
	}

	def load_fixture(self, name):
		with open(os.path.dirname(__file__) + f"/fixtures/{name}.json", "rb") as f:
			data = f.read()
		return json.loads(data)

	def example(self, name: str, **params) -> GeneratorSystem:
		return build_example(name, **params)

	def make_system(self, name: str) -> GeneratorSystem:
		"""Small all-affine systems from fixtures/systems.json."""
		data = self.load_fixture("systems")[name]
		generators = {}
		for generator, pieces in data["generators"].items():
			affine = tuple(
				AffinePiece(*(parse_rational(piece[key]) for key in ("lo", "hi", "slope", "offset")))
				for piece in pieces
			)
			generators[generator] = validated(PiecewiseMap(generator, affine, data.get("domain_kind", "interval")))
		return GeneratorSystem(
			name,
			generators,
			designated_points={k: parse_rational(v) for k, v in data.get("designated_points", {}).items()},
			finite_orbit_points=tuple(parse_rational(p) for p in data.get("finite_orbit_points", [])),
		)
