import json
import os
import unittest
from fractions import Fraction
from typing import ClassVar


class TestCase(unittest.TestCase):
	config: ClassVar = {
		"prec": Fraction(1, 2**42),
		"commute_tol": Fraction(1, 10**12),
		"commute_samples": 50,
		"exact_samples": 200,
		"dense_constraint_depth": 8,
		"race_threads": 8,
		"race_rounds": 20,
		"race_depth": 6,
	}

	def load_fixture(self, name):
		with open(os.path.dirname(__file__) + f"/fixtures/{name}.json", "rb") as f:
			data = f.read()
		return json.loads(data)
