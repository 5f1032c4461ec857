import json
import os
import unittest
from fractions import Fraction
from typing import ClassVar

from homeo_orbits.action.orbit import OrbitBudget


class TestCase(unittest.TestCase):
	config: ClassVar = {
		"level_budget": OrbitBudget(max_word_len=18, max_points=10000),
		# level-n ladder rungs sit 6^-k apart, so the radius is coarsened to keep words short
		"ladder_budget": OrbitBudget(max_word_len=10, max_points=20000),
		"ladder_radius": Fraction(1, 2**12),
		"parallel_budget": OrbitBudget(max_word_len=6, max_points=200),
		"cantor_depth": 9,
	}

	def load_fixture(self, name):
		with open(os.path.dirname(__file__) + f"/fixtures/{name}.json", "rb") as f:
			data = f.read()
		return json.loads(data)
