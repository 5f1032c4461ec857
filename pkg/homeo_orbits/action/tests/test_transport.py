from fractions import Fraction

from homeo_orbits.action.orbit import OrbitBudget, orbit
from homeo_orbits.action.tests.utils import TestCase
from homeo_orbits.action.transport import label_points, transport_word
from homeo_orbits.exceptions import BudgetExhausted, InverseOfEndomorphism
from homeo_orbits.homeo.words import MapWord, eval_word


class TestTransportWord(TestCase):
	def setUp(self):
		self.system = self.example("level2-integer")
		self.z_orbit = orbit(self.system, Fraction(1, 2), OrbitBudget(max_word_len=4))

	def test_labels(self):
		labels = label_points(self.z_orbit)
		self.assertEqual(sorted(labels), list(range(-4, 5)))
		self.assertEqual(labels[1].value, Fraction(2, 3))
		self.assertEqual(labels[-1].value, Fraction(1, 4))

	def test_forward(self):
		word = transport_word(self.system, self.z_orbit, 1, 3)
		self.assertEqual(word, MapWord.parse("g g"))

		labels = label_points(self.z_orbit)
		for source, target in ((1, 3), (2, 4)):
			image = eval_word(self.system, word, labels[source].value)
			self.assertLess(image.distance(labels[target].value), self.config["transport_tol"])

	def test_identity_and_backward(self):
		self.assertEqual(transport_word(self.system, self.z_orbit, 2, 2), MapWord())
		self.assertEqual(transport_word(self.system, self.z_orbit, 2, 0), MapWord.parse("g^-1 g^-1"))

	def test_budget(self):
		with self.assertRaises(BudgetExhausted):
			transport_word(self.system, self.z_orbit, 1, 10)

		word = transport_word(self.system, self.z_orbit, 1, 10, budget=OrbitBudget(max_word_len=12))
		self.assertEqual(word, MapWord.letter("g", 9))

	def test_semigroup(self):
		system = self.example("semigroup")
		sample = orbit(system, Fraction(7, 16), OrbitBudget(max_word_len=1))
		with self.assertRaises(InverseOfEndomorphism):
			transport_word(system, sample, 0, 1)
