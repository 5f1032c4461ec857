import json
import os
import unittest
from fractions import Fraction
from typing import ClassVar

from homeo_orbits.homeo.maps import PiecewiseMap, validated
from homeo_orbits.homeo.pieces import AffinePiece, PowerPiece
from homeo_orbits.utils.rational import parse_rational


class TestCase(unittest.TestCase):
	config: ClassVar = {
		"prec": Fraction(1, 2**42),
		"resolution": Fraction(1, 2**20),
	}

	def load_fixture(self, name):
		with open(os.path.dirname(__file__) + f"/fixtures/{name}.json", "rb") as f:
			data = f.read()
		return json.loads(data)

	def make_map(self, name: str, validate: bool = True) -> PiecewiseMap:
		data = self.load_fixture("maps")[name]
		m = PiecewiseMap(
			name=name,
			pieces=tuple(_piece(piece) for piece in data["pieces"]),
			domain_kind=data.get("domain_kind", "interval"),
			core=tuple(parse_rational(v) for v in data["core"]) if "core" in data else None,
		)
		return validated(m) if validate else m


def _piece(data: dict):
	lo = None if data["lo"] is None else parse_rational(data["lo"])
	hi = None if data["hi"] is None else parse_rational(data["hi"])
	if data["kind"] == "affine":
		return AffinePiece(lo, hi, parse_rational(data["slope"]), parse_rational(data["offset"]))
	fields = {key: parse_rational(data[key]) for key in ("c", "a", "b", "e", "s") if key in data}
	return PowerPiece(lo, hi, **fields)
