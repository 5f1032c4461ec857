from fractions import Fraction

from homeo_orbits.cantor.address import CantorAddress, endpoints, left_endpoint
from homeo_orbits.cantor.example2 import block
from homeo_orbits.cantor.split import SplitHomeo, SplitHomeoSpec, build_split_homeo, match_cylinders
from homeo_orbits.cantor.tests.utils import TestCase
from homeo_orbits.exceptions import ConfigError, NotALeftEndpoint, NotInImage, PinOrderMismatch
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.maps import eval_map, invert_point


class TestSplitHomeo(TestCase):
	def setUp(self):
		# the middle gap onto the left gap of generation two
		self.spec = SplitHomeoSpec(pins=((left_endpoint(1), left_endpoint(2)),))
		self.homeo = SplitHomeo(self.spec)

	def test_matched_cylinders(self):
		self.assertEqual(match_cylinders(self.spec.pins), [("0", "00"), ("20", "02"), ("22", "2")])
		self.assertEqual(match_cylinders(()), [("", "")])

	def test_pins_and_gaps(self):
		self.assertEqual(self.homeo.forward(Fraction(1, 3)), Fraction(1, 9))
		self.assertEqual(self.homeo.forward(Fraction(2, 3)), Fraction(2, 9))
		self.assertEqual(self.homeo.forward(Fraction(1, 2)), Fraction(1, 6))
		self.assertEqual(self.homeo.forward(0), 0)
		self.assertEqual(self.homeo.forward(1), 1)

	def test_rewrite(self):
		image = self.homeo.rewrite(CantorAddress.parse("(02)"))
		self.assertEqual(str(image), "0(02)")
		self.assertEqual(image.value, Fraction(1, 12))
		self.assertEqual(self.homeo.unwrite(image), CantorAddress.parse("(02)"))

	def test_rewrite_agrees_with_forward(self):
		for address in endpoints(6):
			image = self.homeo.rewrite(address)
			self.assertEqual(image.value, self.homeo.forward(address.value), str(address))
			self.assertEqual(self.homeo.unwrite(image), address)

	def test_monotone_and_invertible(self):
		grid = [Fraction(i, 101) for i in range(102)]
		images = [self.homeo.forward(u) for u in grid]
		self.assertEqual(images, sorted(set(images)))
		self.assertEqual([self.homeo.backward(v) for v in images], grid)

	def test_two_pins(self):
		pins = ((left_endpoint(2), left_endpoint(1)), (left_endpoint(3), left_endpoint(7)))
		homeo = SplitHomeo(SplitHomeoSpec(pins=pins))
		for p, q in pins:
			self.assertEqual(homeo.rewrite(p), q)
			self.assertEqual(homeo.forward(p.value), q.value)

	def test_between_blocks(self):
		homeo = SplitHomeo(SplitHomeoSpec(source=block(1), target=block(2)))
		self.assertEqual(homeo.evaluate(Fraction(13, 18), self.config["invariance_prec"]), Enclosure.exact(Fraction(49, 54)))
		self.assertEqual(homeo.invert(Fraction(49, 54), self.config["invariance_prec"]), Enclosure.exact(Fraction(13, 18)))
		with self.assertRaises(NotInImage):
			homeo.invert(Fraction(1, 2), self.config["invariance_prec"])

	def test_bad_specs(self):
		with self.assertRaises(PinOrderMismatch):
			SplitHomeoSpec(pins=((left_endpoint(1), left_endpoint(2)), (left_endpoint(2), left_endpoint(3))))
		with self.assertRaises(NotALeftEndpoint):
			SplitHomeoSpec(pins=((CantorAddress.parse("(02)"), left_endpoint(1)),))
		with self.assertRaises(ConfigError):
			SplitHomeoSpec(pins=tuple((left_endpoint(r), left_endpoint(r)) for r in (2, 5, 1)))
		with self.assertRaises(ConfigError):
			SplitHomeoSpec(source=(Fraction(1, 2), Fraction(1, 2)))


class TestBuildSplitHomeo(TestCase):
	def test_automorphism_of_the_unit_interval(self):
		m = build_split_homeo(SplitHomeoSpec(pins=((left_endpoint(1), left_endpoint(2)),)))
		self.assertIs(m.domain_kind, DomainKind.INTERVAL)
		self.assertEqual(eval_map(m, Fraction(1, 2)), Enclosure.exact(Fraction(1, 6)))
		self.assertEqual(invert_point(m, Fraction(1, 6)), Enclosure.exact(Fraction(1, 2)))
		self.assertEqual(m.describe()["pieces"][0]["kind"], "cantor-split")

	def test_block_map_lives_on_the_line(self):
		m = build_split_homeo(SplitHomeoSpec(source=block(1), target=block(2)), name="sigma")
		self.assertIs(m.domain_kind, DomainKind.LINE)
		self.assertEqual(m.core, block(1))
