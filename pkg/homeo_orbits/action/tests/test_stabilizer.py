from fractions import Fraction

from homeo_orbits.action.stabilizer import reduced_words, stabilizer_words
from homeo_orbits.action.tests.utils import TestCase
from homeo_orbits.exceptions import ConfigError
from homeo_orbits.homeo.words import MapWord

I0 = (Fraction(1, 2), Fraction(2, 3))


class TestStabilizerWords(TestCase):
	def setUp(self):
		self.system = self.example("level2-integer")

	def test_reduced_words(self):
		words = list(reduced_words(self.system, 2))
		self.assertEqual(words[0], MapWord())
		self.assertEqual(len(words), 1 + 4 + 12)
		self.assertEqual(len(set(words)), len(words))

	def test_i0(self):
		words = stabilizer_words(self.system, I0, budget=2)
		self.assertEqual(words[0], MapWord())
		self.assertIn(MapWord.parse("f"), words)
		self.assertIn(MapWord.parse("f^-1 f^-1"), words)
		self.assertNotIn(MapWord.parse("g"), words)
		self.assertNotIn(MapWord.parse("g f"), words)

	def test_conjugates_stabilize_i1(self):
		words = stabilizer_words(self.system, (Fraction(2, 3), Fraction(7, 9)), budget=3)
		self.assertIn(MapWord.parse("g^-1 f g"), words)
		self.assertIn(MapWord.parse("f"), words)

	def test_empty_interval(self):
		with self.assertRaises(ConfigError):
			stabilizer_words(self.system, (Fraction(2, 3), Fraction(1, 2)))
