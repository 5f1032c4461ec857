import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from pydantic import ValidationError

from homeo_orbits.action.orbit import OrbitBudget, orbit
from homeo_orbits.cantor.address import left_endpoint
from homeo_orbits.catalog import ExampleSpec, build_example, list_examples
from homeo_orbits.catalog.ladder import (
	CantorLadderMap,
	DenseLadderMap,
	chart,
	dense_point,
	g0_power,
	ladder_index,
	z,
)
from homeo_orbits.catalog.systems import hat_pair, ladder_point_names
from homeo_orbits.catalog.tests.utils import TestCase
from homeo_orbits.exceptions import BadParams, InverseOfEndomorphism, UnknownName
from homeo_orbits.homeo.maps import eval_map, invert_point, validate_map
from homeo_orbits.homeo.words import MapWord, eval_word
from homeo_orbits.utils.log import clear_logs, get_logs
from homeo_orbits.utils.rational import parse_rational


def value(m, x):
	return eval_map(m, x).lo


class TestCatalog(TestCase):
	def test_every_example_builds(self):
		expected = self.load_fixture("examples")
		self.assertEqual(list_examples(), list(expected))

		for name, data in expected.items():
			system = build_example(name)
			self.assertEqual(system.domain_kind.value, data["domain_kind"], name)
			self.assertEqual(list(system.generators), data["generators"], name)
			self.assertEqual(system.invertible, data["invertible"], name)
			self.assertEqual(
				system.designated_points,
				{k: parse_rational(v) for k, v in data["designated_points"].items()},
				name,
			)
			for m in system.generators.values():
				self.assertTrue(validate_map(m).usable, f"{name}: {m.name}")

	def test_spec_and_keyword_params(self):
		system = build_example(ExampleSpec(name="case2-single", params={"exponent": "3"}))
		self.assertEqual(value(system.generators["g"], Fraction(1, 2)), Fraction(1, 8))

		system = build_example("level-n", n=4)
		self.assertEqual(list(system.generators), ["f1", "f2", "f3", "f4"])
		self.assertEqual(system.ladder, tuple(ladder_point_names(4)))
		self.assertEqual(system.point("z0^000"), Fraction(259, 432))

	def test_errors(self):
		with self.assertRaises(UnknownName):
			build_example("case-5")
		with self.assertRaises(BadParams):
			build_example("case2-single", exponent=1)
		with self.assertRaises(BadParams):
			build_example("case2-single", exponent="0.5.1")
		with self.assertRaises(BadParams):
			build_example("level-n", n=6)
		with self.assertRaises(BadParams):
			build_example("cantor-ex1", n=0)
		with self.assertRaises(BadParams):
			build_example("case1-dense", exponent=2)
		with self.assertRaises(BadParams):
			build_example("semigroup", a1="5/16")
		with self.assertRaises(BadParams):
			build_example("semigroup", as_printed="maybe")
		with self.assertRaises(ValidationError):
			ExampleSpec(name="case1-dense", extra=1)


class TestLadder(TestCase):
	def test_ladder_points(self):
		self.assertEqual([z(i) for i in range(-2, 3)], [Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(2, 3), Fraction(7, 9)])
		self.assertEqual(g0_power(Fraction(7, 12), 1), Fraction(13, 18))
		self.assertEqual(g0_power(Fraction(7, 12), -1), Fraction(3, 8))

	def test_ladder_index(self):
		self.assertEqual(ladder_index(Fraction(1, 2)), (0, Fraction(1, 2)))
		self.assertEqual(ladder_index(Fraction(2, 3)), (1, Fraction(1, 2)))
		self.assertEqual(ladder_index(Fraction(13, 18)), (1, Fraction(7, 12)))
		self.assertEqual(ladder_index(Fraction(3, 8)), (-1, Fraction(7, 12)))
		self.assertIsNone(ladder_index(Fraction(0)))
		self.assertIsNone(ladder_index(Fraction(1)))
		for i in range(-30, 30):
			self.assertEqual(ladder_index(z(i)), (i, Fraction(1, 2)))

	def test_dense_points(self):
		self.assertEqual([dense_point(m) for m in range(3)], [chart(Fraction(1, 2)), chart(Fraction(1, 4)), chart(Fraction(3, 4))])


class TestLevel2Integer(TestCase):
	def setUp(self):
		self.system = build_example("level2-integer")
		self.g = self.system.generators["g"]
		self.f = self.system.generators["f"]

	def test_ladder_from_g(self):
		self.assertEqual(value(self.g, Fraction(1, 2)), Fraction(2, 3))
		self.assertEqual(value(self.g, Fraction(2, 3)), Fraction(7, 9))

	def test_f_acts_inside_every_rung(self):
		self.assertEqual(value(self.f, Fraction(1, 2)), Fraction(1, 2))
		self.assertEqual(value(self.f, Fraction(2, 3)), Fraction(2, 3))
		self.assertEqual(value(self.f, Fraction(7, 12)), Fraction(11, 18))
		self.assertEqual(invert_point(self.f, Fraction(11, 18)).lo, Fraction(7, 12))

	def test_f_and_g_commute_exactly(self):
		for k in range(1, self.config["exact_samples"] + 1):
			x = Fraction(k, self.config["exact_samples"] + 11)
			self.assertEqual(value(self.f, value(self.g, x)), value(self.g, value(self.f, x)), str(x))


class TestLevel2Dense(TestCase):
	def test_defining_constraint(self):
		system = build_example("level2-dense")
		f = system.generators["f"]
		x0 = system.point("x0")
		for n in range(self.config["dense_constraint_depth"] + 1):
			x = dense_point(n + 1)
			for _ in range(n + 1):
				x = value(f, x)
			self.assertEqual(x, g0_power(x0, n + 1), n)

	def test_agrees_with_g_below_z0(self):
		system = build_example("level2-dense")
		for x in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 16)):
			self.assertEqual(value(system.generators["f"], x), value(system.generators["g"], x))


class TestLevel2Cantor(TestCase):
	def test_defining_constraint(self):
		system = build_example("level2-cantor")
		f = system.generators["f"]
		x0 = system.point("x0")
		for n in range(3):
			x = left_endpoint(n + 2).value
			for _ in range(n + 1):
				x = value(f, x)
			self.assertEqual(x, x0 + n + 1, n)

	def test_translation_below_zero(self):
		system = build_example("level2-cantor")
		self.assertEqual(value(system.generators["f"], Fraction(-1, 2)), Fraction(1, 2))
		self.assertEqual(value(system.generators["g"], Fraction(5, 2)), Fraction(7, 2))


class TestLadderCaches(TestCase):
	def setUp(self):
		interval = sys.getswitchinterval()
		self.addCleanup(sys.setswitchinterval, interval)
		sys.setswitchinterval(1e-6)

	def build_concurrently(self, make, build):
		"""Fill a fresh map's cache from many threads at once and return the map."""
		threads = self.config["race_threads"]
		m = make()
		barrier = threading.Barrier(threads)

		def run(_):
			barrier.wait(timeout=30)
			return build(m, self.config["race_depth"])

		with ThreadPoolExecutor(max_workers=threads) as pool:
			list(pool.map(run, range(threads)))
		return m

	def test_dense_breakpoints(self):
		depth = self.config["race_depth"]
		serial = DenseLadderMap()
		expected = [serial.breakpoint(n) for n in range(depth + 1)]
		for _ in range(self.config["race_rounds"]):
			m = self.build_concurrently(DenseLadderMap, DenseLadderMap.breakpoint)
			self.assertEqual([m.breakpoint(n) for n in range(depth + 1)], expected)

	def test_cantor_splits(self):
		depth = self.config["race_depth"]
		serial = CantorLadderMap()
		expected = [serial.split(n).spec for n in range(depth + 1)]
		for _ in range(self.config["race_rounds"]):
			m = self.build_concurrently(CantorLadderMap, CantorLadderMap.split)
			self.assertEqual([m.split(n).spec for n in range(depth + 1)], expected)


class TestLevelN(TestCase):
	def test_generators_commute_and_fix_lower_rungs(self):
		system = build_example("level-n")
		f1, f2, f3 = (system.generators[name] for name in ("f1", "f2", "f3"))
		self.assertEqual(value(f2, Fraction(7, 12)), Fraction(11, 18))
		self.assertEqual(value(f3, Fraction(7, 12)), Fraction(7, 12))
		self.assertEqual(value(f3, Fraction(1, 2)), Fraction(1, 2))
		for k in range(1, 40):
			x = Fraction(k, 41)
			self.assertEqual(value(f1, value(f2, x)), value(f2, value(f1, x)), str(x))
			self.assertEqual(value(f2, value(f3, x)), value(f3, value(f2, x)), str(x))


class TestParallelPair(TestCase):
	def test_f_is_g_on_left_halves(self):
		system = build_example("parallel-pair")
		f, g = system.generators["f"], system.generators["g"]
		self.assertEqual(value(f, Fraction(13, 24)), Fraction(25, 36))
		self.assertEqual(value(f, Fraction(13, 24)), value(g, Fraction(13, 24)))
		self.assertEqual(value(f, Fraction(5, 8)), Fraction(41, 54))


class TestSemigroup(TestCase):
	def setUp(self):
		clear_logs()
		self.system = build_example("semigroup")

	def test_f_hat(self):
		image = eval_word(self.system, MapWord.parse("f h1"), Fraction(25, 64), self.config["prec"])
		self.assertTrue(image.contains(Fraction(7, 16)))

	def test_hats_commute_on_i2(self):
		a1, r = self.system.point("a1"), self.system.params["r"]
		count = self.config["commute_samples"]
		for k in range(1, count + 1):
			x = a1 + r * Fraction(k, count + 1)
			left = eval_word(self.system, MapWord.parse("f h1 g h2"), x, self.config["prec"])
			right = eval_word(self.system, MapWord.parse("g h2 f h1"), x, self.config["prec"])
			self.assertLessEqual(left.distance(right), self.config["commute_tol"], str(x))

	def test_middle_of_i2_is_filled(self):
		a1, a2, r = self.system.point("a1"), self.system.point("a2"), self.system.params["r"]
		sample = orbit(hat_pair(self.system), self.system.point("m"), OrbitBudget(max_word_len=20, max_points=1000))
		lo, hi = a1 + r / 10, a2 - r / 10
		inside = sorted(p.value for p in sample.points if lo <= p.value <= hi)
		edges = [lo, *inside, hi]
		self.assertLess(max(b - a for a, b in zip(edges, edges[1:], strict=False)), r / 20)

	def test_hats_have_no_inverse(self):
		with self.assertRaises(InverseOfEndomorphism):
			eval_word(hat_pair(self.system), MapWord.parse("f_hat^-1"), Fraction(7, 16))

	def test_repairs_are_recorded(self):
		self.assertEqual(value(self.system.generators["h2"], 0), 0)
		self.assertEqual(value(self.system.generators["g"], Fraction(3, 4)), Fraction(3, 4))
		self.assertTrue(any("h2 first piece" in note for note in self.system.notes))
		self.assertTrue(any(log.message == "semigroup repairs applied" for log in get_logs("catalog")))

	def test_as_printed(self):
		system = build_example("semigroup", as_printed=True)
		self.assertEqual(value(system.generators["h2"], 0), Fraction(1, 4))
		self.assertIn("g: piece 2 is not increasing", system.notes)
		self.assertFalse(any("h2 first piece" in note for note in system.notes))


class TestCantorExamples(TestCase):
	def test_ex1_orbit_holds_the_left_endpoints(self):
		system = build_example("cantor-ex1", n=3)
		sample = orbit(system, system.point("x0"), OrbitBudget(max_word_len=3, max_points=2000))
		for rank in range(1, 5):
			self.assertIsNotNone(sample.find(left_endpoint(rank).value), rank)

	def test_circle_swap(self):
		system = build_example("circle-swap")
		rot, f = system.generators["rot"], system.generators["f"]
		self.assertEqual(value(rot, Fraction(3, 4)), Fraction(1, 4))
		self.assertEqual(value(f, Fraction(1, 8)), Fraction(3, 16))
		self.assertEqual(value(f, Fraction(1, 2)), Fraction(1, 2))
		self.assertEqual(system.finite_orbit_points, (Fraction(0), Fraction(1, 2)))
