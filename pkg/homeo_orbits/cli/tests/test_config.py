import json
from fractions import Fraction

from homeo_orbits.catalog import ExampleSpec, build_example, list_examples
from homeo_orbits.cli.config import CatalogPieceConfig, SystemConfig, load_system, parse_system_config
from homeo_orbits.cli.tests.utils import TestCase
from homeo_orbits.exceptions import ConfigError
from homeo_orbits.homeo.maps import eval_map


class TestSystemConfig(TestCase):
	def test_every_example_round_trips(self):
		for name in list_examples():
			with self.subTest(example=name):
				spec = ExampleSpec(name=name)
				system = build_example(spec)
				loaded = parse_system_config(SystemConfig.from_system(system, spec).to_json()).to_system()

				self.assertEqual(loaded.describe(), system.describe())
				self.assertEqual(loaded.params, system.params)
				self.assertEqual(loaded.designated_points, system.designated_points)
				self.assertEqual(loaded.ladder, system.ladder)

	def test_params_survive_the_file(self):
		spec = ExampleSpec(name="semigroup", params={"as_printed": True})
		system = build_example(spec)
		config = SystemConfig.from_system(system, spec)
		data = json.loads(config.to_json())

		self.assertEqual(data["params"]["r"], "1/8")
		self.assertEqual(data["source"], {"name": "semigroup", "params": {"as_printed": True}})

		loaded = parse_system_config(config.to_json()).to_system()
		self.assertEqual(loaded.params["r"], Fraction(1, 8))
		self.assertIs(loaded.params["as_printed"], True)
		self.assertEqual(loaded.notes, system.notes)
		self.assertEqual(eval_map(loaded.generators["h2"], 0).lo, Fraction(1, 4))

	def test_explicit_forms(self):
		config = SystemConfig.from_system(build_example("cantor-ex1", n=2), ExampleSpec(name="cantor-ex1"))
		self.assertEqual([g.pieces[0].kind for g in config.generators], ["cantor-split", "cantor-split"])

		config = SystemConfig.from_system(build_example("level2-integer"), ExampleSpec(name="level2-integer"))
		kinds = {g.name: [p.kind for p in g.pieces] for g in config.generators}
		self.assertEqual(set(kinds["g"]), {"affine"})
		self.assertEqual(kinds["f"], ["catalog"])

	def test_lazy_generators_need_a_source(self):
		with self.assertRaises(ConfigError):
			SystemConfig.from_system(build_example("cantor-ex2"))

	def test_hand_written_affine(self):
		_, system = load_system(self.write_fixture_config("two-slopes"))
		f = system.generators["f"]
		self.assertEqual(eval_map(f, Fraction(3, 4)).lo, Fraction(5, 8))
		self.assertTrue(f.surjective)
		self.assertEqual(system.point("x"), Fraction(3, 4))

	def test_hand_written_split(self):
		_, system = load_system(self.write_fixture_config("split"))
		h = system.generators["h"]
		self.assertEqual(eval_map(h, Fraction(1, 3)).lo, Fraction(1, 9))
		self.assertEqual(eval_map(h, Fraction(1, 2)).lo, Fraction(1, 6))

	def test_catalog_piece(self):
		_, system = load_system(self.write_fixture_config("from-catalog"))
		self.assertEqual(eval_map(system.generators["g"], Fraction(1, 2)).lo, Fraction(1, 8))

		piece = CatalogPieceConfig(example="case2-single", generator="h")
		with self.assertRaises(ConfigError):
			piece.to_map("h")

	def test_endomorphisms(self):
		data = self.load_fixture("configs")["lopsided-endomorphism"]
		system = parse_system_config(json.dumps(data)).to_system()
		self.assertFalse(system.invertible)
		self.assertFalse(system.generators["f"].surjective)

		data["invertible"] = True
		with self.assertRaises(ConfigError):
			parse_system_config(json.dumps(data)).to_system()

	def test_errors_name_their_location(self):
		expected = {
			"unknown-kind": "generators.0.pieces.0",
			"bad-rational": "slope",
			"twice": "declared twice",
			"overlapping": "generators.0",
			"not-a-left-endpoint": "generators.0 (h)",
		}
		for name, where in expected.items():
			with self.subTest(config=name):
				with self.assertRaises(ConfigError) as cm:
					load_system(self.write_fixture_config(name))
				self.assertIn(where, cm.exception.message)

	def test_unparseable_document(self):
		with self.assertRaises(ConfigError):
			parse_system_config("{")
		with self.assertRaises(ConfigError) as cm:
			parse_system_config(json.dumps({"name": "empty", "generators": []}))
		self.assertIn("generators", cm.exception.message)
