import json
import os
import unittest
from fractions import Fraction
from typing import ClassVar


class TestCase(unittest.TestCase):
	config: ClassVar = {
		"invariance_depth": 8,
		"invariance_tol": Fraction(1, 3**12),
		"invariance_prec": Fraction(1, 3**20),
		"witness_eps": Fraction(1, 3**6),
	}

	def load_fixture(self, name):
		with open(os.path.dirname(__file__) + f"/fixtures/{name}.json", "rb") as f:
			data = f.read()
		return json.loads(data)
