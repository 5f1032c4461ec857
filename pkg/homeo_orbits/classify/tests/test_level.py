from fractions import Fraction

import numpy as np

from homeo_orbits.action.orbit import OrbitBudget
from homeo_orbits.catalog import build_example
from homeo_orbits.catalog.systems import ladder_point_names
from homeo_orbits.classify.level import accumulation, estimate_level
from homeo_orbits.classify.params import ClassifyParams
from homeo_orbits.classify.tests.utils import TestCase
from homeo_orbits.exceptions import BaseInP, ConfigError, LadderPointCoincidesWithX


class TestAccumulation(TestCase):
	def test_geometric_approach(self):
		q = 0.5
		xs = np.sort(q + 2.0 ** -np.arange(4, 30))
		found, nearest, hits = accumulation(xs, np.array([q]), 2**-20, 2**-40)
		self.assertTrue(found)
		self.assertEqual(hits, 5)
		self.assertAlmostEqual(nearest, 2**-29)

	def test_single_close_point_is_not_enough(self):
		xs = np.array([0.25, 0.5 + 2**-22, 0.75])
		found, nearest, hits = accumulation(xs, np.array([0.5]), 2**-20, 2**-40)
		self.assertFalse(found)
		self.assertEqual(hits, 1)

	def test_points_on_q_are_ignored(self):
		found, nearest, _ = accumulation(np.array([0.5]), np.array([0.5]), 2**-20, 2**-40)
		self.assertFalse(found)
		self.assertIsNone(nearest)


class TestEstimateLevel(TestCase):
	def test_level2_integer(self):
		system = build_example("level2-integer")
		budget = self.config["level_budget"]
		estimate = estimate_level(system, system.point("x0"), budget=budget)
		self.assertEqual(estimate.level, 2)
		self.assertEqual([rung.name for rung in estimate.rungs], ["z0"])
		self.assertTrue(estimate.rungs[0].accumulates)
		self.assertFalse(estimate.rungs[0].same_orbit)

		estimate = estimate_level(system, system.point("z0"), budget=budget)
		self.assertEqual(estimate.level, 1)
		self.assertEqual(estimate.rungs, ())

	def test_case2_points_are_level_one(self):
		system = build_example("case2-single")
		for x in (Fraction(1, 3), Fraction(1, 2), Fraction(4, 5)):
			estimate = estimate_level(system, x, budget=OrbitBudget(max_word_len=8, max_points=500))
			self.assertEqual(estimate.level, 1, str(x))

	def test_rung_on_the_orbit_of_x(self):
		system = build_example("level2-integer")
		estimate = estimate_level(system, Fraction(2, 3), ladder=["z0"], budget=OrbitBudget(max_word_len=4))
		self.assertEqual(estimate.level, 1)
		self.assertTrue(estimate.rungs[0].same_orbit)

	def test_level_n_ladder(self):
		system = build_example("level-n", n=4)
		params = ClassifyParams(isolation_radius=self.config["ladder_radius"])
		names = ladder_point_names(4)
		for k, name in enumerate(names, start=1):
			estimate = estimate_level(system, system.point(name), budget=self.config["ladder_budget"], params=params)
			self.assertEqual(estimate.level, k, name)
			self.assertEqual([rung.name for rung in estimate.rungs], names[: k - 1])
			# one above the highest rung closed in on
			for rung in estimate.rungs:
				if rung.accumulates:
					self.assertLessEqual(rung.level + 1, estimate.level)
			if k > 1:
				self.assertTrue(estimate.rungs[-1].accumulates, name)
				self.assertEqual(estimate.rungs[-1].level, k - 1, name)

	def test_explicit_ladder(self):
		system = build_example("level2-integer")
		estimate = estimate_level(system, system.point("x0"), ladder=["z0"], budget=self.config["level_budget"])
		self.assertEqual(estimate.level, 2)
		estimate = estimate_level(system, system.point("x0"), ladder=["1/2"], budget=self.config["level_budget"])
		self.assertEqual(estimate.rungs[0].name, "1/2")
		self.assertEqual(estimate.level, 2)

	def test_errors(self):
		system = build_example("level2-integer")
		with self.assertRaises(LadderPointCoincidesWithX):
			estimate_level(system, Fraction(1, 2), ladder=["z0"], budget=OrbitBudget(max_word_len=2))
		with self.assertRaises(ConfigError):
			estimate_level(system, Fraction(7, 12), ladder=["nowhere"], budget=OrbitBudget(max_word_len=2))
		with self.assertRaises(BaseInP):
			estimate_level(build_example("case2-single"), 0, budget=OrbitBudget(max_word_len=2))
