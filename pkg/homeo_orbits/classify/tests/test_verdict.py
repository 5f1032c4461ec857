from fractions import Fraction
from itertools import product

from homeo_orbits.action.orbit import OrbitBudget, OrbitPoint, OrbitSample, orbit
from homeo_orbits.action.structure import ComponentDecomposition, decompose
from homeo_orbits.cantor.address import cylinder_interval
from homeo_orbits.catalog import build_example
from homeo_orbits.classify.constants import Verdict
from homeo_orbits.classify.params import ClassifyParams
from homeo_orbits.classify.tests.utils import TestCase
from homeo_orbits.classify.verdict import classify, classify_with_doubling
from homeo_orbits.exceptions import BaseInP, ConfigError
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.words import MapWord
from homeo_orbits.utils.log import clear_logs, get_logs
from homeo_orbits.utils.rational import parse_rational

UNIT = ComponentDecomposition(DomainKind.INTERVAL, (), ((Fraction(0), Fraction(1)),))


def cantor_sample(depth: int) -> OrbitSample:
	"""Both ends of every depth-deep cylinder of the middle-thirds set, as if reached by long words."""
	base = Fraction(2, 3)
	ends = set()
	for digits in product("02", repeat=depth):
		ends.update(cylinder_interval("".join(digits)))
	ends.discard(base)
	deep = MapWord.letter("g", 2 * depth)
	points = [OrbitPoint(Enclosure.exact(base), MapWord())]
	points.extend(OrbitPoint(Enclosure.exact(y), deep) for y in sorted(ends))
	return OrbitSample(base, points, OrbitBudget(max_word_len=2 * depth, max_points=len(points)), depth=2 * depth)


class TestClassify(TestCase):
	def test_catalog_verdicts(self):
		for name, case in self.load_fixture("verdicts").items():
			system = build_example(name)
			sample = orbit(system, parse_rational(case["point"]), OrbitBudget(**case["budget"]))
			result = classify(sample, decompose(system), ClassifyParams(**case["params"]))
			self.assertEqual(result.verdict.value, case["verdict"], name)
			self.assertEqual(result.level, case["level"], name)
			self.assertEqual(result.evidence.budget, OrbitBudget(**case["budget"]), name)

	def test_integer_type_evidence(self):
		system = build_example("case2-single")
		result = classify(orbit(system, Fraction(1, 2), OrbitBudget(max_word_len=16)), decompose(system))
		self.assertEqual(result.evidence.isolated_point_fraction, 1)
		self.assertTrue(result.evidence.stable)
		# 1/16, 1/4, 1/2 and g^-1 .. g^-4 of 1/2
		self.assertEqual(result.evidence.window_points, 7)
		self.assertEqual(result.evidence.range, (0,))

	def test_accumulation_evidence(self):
		system = build_example("level2-integer")
		sample = orbit(system, system.point("x0"), self.config["level_budget"])
		evidence = classify(sample, decompose(system)).evidence
		self.assertFalse(evidence.stable)
		self.assertLess(evidence.min_gap, 2**-20)
		self.assertGreater(evidence.cluster_count, 0)
		# clusters sit just above the ladder points
		self.assertTrue(any(abs(c - 0.5) < 2**-16 for c in evidence.accumulation_set_summary))

	def test_cantor_type(self):
		sample = cantor_sample(self.config["cantor_depth"])
		result = classify(sample, UNIT)
		self.assertEqual(result.verdict, Verdict.CANTOR_TYPE)
		self.assertEqual(result.level, 1)
		counts = result.evidence.large_gap_counts
		self.assertLess(counts[0], counts[1])
		self.assertLess(counts[1], counts[2])
		self.assertGreaterEqual(result.evidence.gap_oscillation, 1 / 6)

	def test_too_few_points_for_cantor(self):
		result = classify(cantor_sample(5), UNIT)
		self.assertEqual(result.verdict, Verdict.INCONCLUSIVE)

	def test_single_point_is_inconclusive(self):
		system = build_example("case2-single")
		result = classify(orbit(system, Fraction(1, 2), OrbitBudget(max_points=1)), decompose(system))
		self.assertEqual(result.verdict, Verdict.INCONCLUSIVE)
		self.assertIsNone(result.level)
		self.assertEqual(result.evidence.budget_used, (0, 1))

	def test_deterministic(self):
		system = build_example("level2-integer")
		sample = orbit(system, system.point("x0"), OrbitBudget(max_word_len=10))
		first = classify(sample, decompose(system)).as_dict()
		self.assertEqual(classify(sample, decompose(system)).as_dict(), first)

	def test_errors(self):
		system = build_example("case2-single")
		with self.assertRaises(BaseInP):
			classify(orbit(system, 0, OrbitBudget(max_word_len=2)), decompose(system))
		with self.assertRaises(ConfigError):
			classify(orbit(system, Fraction(1, 2), OrbitBudget(max_word_len=2)), decompose(system), ClassifyParams(eps_dense=Fraction(1, 2**45)))

	def test_params(self):
		params = ClassifyParams(eps_dense="1/20", isolation_radius=Fraction(1, 4096))
		self.assertEqual(params.eps_dense, Fraction(1, 20))
		self.assertEqual(params.model_dump(mode="json")["isolation_radius"], "1/4096")
		for bad in ({"eps_dense": "0"}, {"edge_margin": "1/2"}, {"min_points": 0}, {"isolation_radius": 0.5}):
			with self.assertRaises(ValueError):
				ClassifyParams(**bad)


class TestClassifyWithDoubling(TestCase):
	def test_integer_type_survives(self):
		clear_logs()
		system = build_example("case2-single")
		result = classify_with_doubling(system, Fraction(1, 2), OrbitBudget(max_word_len=8, max_points=500))
		self.assertEqual(result.verdict, Verdict.INTEGER_TYPE)
		self.assertTrue(result.evidence.survived_doubling)
		self.assertEqual(result.evidence.budget, OrbitBudget(max_word_len=8, max_points=500))
		self.assertEqual(len([log for log in get_logs("classify") if log.method == "classify"]), 2)

	def test_verdict_change_is_reported(self):
		clear_logs()
		system = build_example("case2-single")
		# at depth 4 the window still gains points from the deepest words
		result = classify_with_doubling(system, Fraction(1, 2), OrbitBudget(max_word_len=4, max_points=500))
		self.assertEqual(result.verdict, Verdict.INCONCLUSIVE)
		self.assertFalse(result.evidence.survived_doubling)
		self.assertTrue(any(log.status == "Invalid" for log in get_logs("classify")))
