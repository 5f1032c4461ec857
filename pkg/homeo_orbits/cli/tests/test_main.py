from fractions import Fraction

from homeo_orbits.cantor.address import left_endpoint
from homeo_orbits.cli.config import load_system
from homeo_orbits.cli.orbit_csv import read_orbit_csv, verify_rows
from homeo_orbits.cli.tests.utils import TestCase
from homeo_orbits.utils.log import clear_logs, get_logs


class TestExampleCommand(TestCase):
	def test_writes_a_loadable_config(self):
		path = self.example_config("level-n", "--param", "n=4")
		_, system = load_system(path)
		self.assertEqual(list(system.generators), ["f1", "f2", "f3", "f4"])
		self.assertEqual(system.params, {"n": 4})

	def test_prints_without_out(self):
		code, result, _ = self.run_cli("example", "case2-single")
		self.assertEqual(code, 0)
		self.assertEqual(result["name"], "case2-single")
		self.assertEqual(result["generators"][0]["pieces"][0]["kind"], "power")

	def test_as_printed(self):
		path = self.example_config("semigroup", "--as-printed")
		_, system = load_system(path)
		self.assertIn("g: piece 2 is not increasing", system.notes)

	def test_domain_and_usage_errors(self):
		clear_logs()
		code, _, err = self.run_cli("example", "case-5")
		self.assertEqual(code, 1)
		self.assertIn("case-5", err)
		self.assertEqual(get_logs("cli")[-1].status, "Error")

		self.assertEqual(self.run_cli("example", "case2-single", "--param", "exponent")[0], 2)
		self.assertEqual(self.run_cli("no-such-command")[0], 2)
		self.assertEqual(self.run_cli("orbit", "--system", self.path("missing.json"))[0], 2)


class TestOrbitCommand(TestCase):
	def test_case2_depth_two(self):
		system_path = self.example_config("case2-single")
		csv_path = self.path("orbit.csv")
		code, result, err = self.run_cli(
			"orbit", "--system", system_path, "--point", "1/2", "--max-word-len", "2", "--out", csv_path
		)
		self.assertEqual(code, 0, err)
		self.assertEqual(result["rows"], 5)
		self.assertEqual(result["base"], "1/2")

		rows = read_orbit_csv(csv_path)
		self.assertEqual(len(rows), 5)
		_, system = load_system(system_path)
		self.assertEqual(verify_rows(system, Fraction(1, 2), rows), [])

	def test_output_is_deterministic(self):
		system_path = self.example_config("level2-integer")
		contents = []
		for name, workers in (("one.csv", "1"), ("two.csv", "4")):
			path = self.path(name)
			code, _, err = self.run_cli(
				"orbit", "--system", system_path, "--point", "x0", "--max-word-len", "4", "--workers", workers, "--out", path
			)
			self.assertEqual(code, 0, err)
			with open(path, "rb") as f:
				contents.append(f.read())
		self.assertEqual(contents[0], contents[1])

	def test_bad_budget_is_a_usage_error(self):
		system_path = self.example_config("case2-single")
		code, _, err = self.run_cli("orbit", "--system", system_path, "--max-points", "0")
		self.assertEqual(code, 2)
		self.assertIn("max_points", err)

		code, _, _ = self.run_cli("orbit", "--system", system_path, "--point", "half")
		self.assertEqual(code, 2)


class TestAnalysisCommands(TestCase):
	def test_case1_is_dense(self):
		system_path = self.example_config("case1-dense")
		code, result, err = self.run_cli(
			"classify", "--system", system_path, "--point", "1/2", *self.config["dense_budget"], *self.config["dense_params"]
		)
		self.assertEqual(code, 0, err)
		self.assertEqual(result["verdict"], "Dense")
		self.assertEqual(result["level"], 1)

	def test_classify_with_doubling(self):
		system_path = self.example_config("case2-single")
		code, result, err = self.run_cli(
			"classify", "--system", system_path, "--max-word-len", "8", "--max-points", "500", "--budget-double"
		)
		self.assertEqual(code, 0, err)
		self.assertEqual(result["verdict"], "IntegerType")
		self.assertTrue(result["evidence"]["survived_doubling"])

	def test_point_on_a_finite_orbit(self):
		system_path = self.example_config("case2-single")
		code, _, _ = self.run_cli("classify", "--system", system_path, "--point", "0")
		self.assertEqual(code, 1)

	def test_level_without_rungs(self):
		system_path = self.example_config("case2-single")
		code, result, err = self.run_cli("level", "--system", system_path, "--max-word-len", "8", "--max-points", "500")
		self.assertEqual(code, 0, err)
		self.assertEqual(result["level"], 1)
		self.assertEqual(result["rungs"], [])

	def test_fixed_points(self):
		system_path = self.write_fixture_config("two-slopes")
		code, result, err = self.run_cli("fixed-points", "--system", system_path, "--map", "f")
		self.assertEqual(code, 0, err)
		found = {(p["lo"], p["hi"]) for p in result["fixed_points"]["f"]}
		self.assertEqual(found, {("0", "0"), ("1", "1")})

		code, _, _ = self.run_cli("fixed-points", "--system", system_path, "--map", "h")
		self.assertEqual(code, 2)

	def test_witness_interval(self):
		system_path = self.example_config("case2-single")
		code, result, err = self.run_cli("witness", "--system", system_path)
		self.assertEqual(code, 0, err)
		self.assertEqual(result["condition"], "C1")
		self.assertEqual((result["lo"], result["hi"]), ("1/4", "3/4"))
		self.assertTrue(result["verified"])

	def test_density_witness(self):
		code, result, err = self.run_cli("witness", "--density", "1/4", "7/27", "--eps", "1/81")
		self.assertEqual(code, 0, err)
		self.assertTrue(result["verified"])

		target = str(left_endpoint(40))
		code, result, err = self.run_cli("witness", "--density", "1/4", target, "--eps", "1/729")
		self.assertEqual(code, 0, err)
		self.assertTrue(result["verified"])

		self.assertEqual(self.run_cli("witness")[0], 2)

	def test_transport(self):
		system_path = self.example_config("level2-integer")
		code, result, err = self.run_cli("transport", "--system", system_path, "--max-word-len", "4", "1", "3")
		self.assertEqual(code, 0, err)
		self.assertEqual(result["word"], "g g")
		self.assertEqual(result["base"], "1/2")


class TestPlotCommand(TestCase):
	def plot(self, system_path: str, csv_path: str) -> str:
		svg_path = self.path("plot.svg")
		code, result, err = self.run_cli("plot", "--system", system_path, "--orbit", csv_path, "--out", svg_path)
		self.assertEqual(code, 0, err)
		with open(svg_path, encoding="utf-8") as f:
			return f.read()

	def test_empty_csv_draws_axes_and_graphs_only(self):
		system_path = self.example_config("case1-dense")
		csv_path = self.path("empty.csv")
		open(csv_path, "w").close()

		svg = self.plot(system_path, csv_path)
		size = self.config["svg_size"]
		self.assertTrue(svg.startswith(f'<svg width="{size}" height="{size}"'))
		self.assertIn('data-name="f"', svg)
		self.assertIn('data-name="g"', svg)
		self.assertNotIn('class="orbit"', svg)
		self.assertNotIn('class="designated"', svg)

	def test_orbit_markers(self):
		system_path = self.example_config("case2-single")
		csv_path = self.path("orbit.csv")
		self.run_cli("orbit", "--system", system_path, "--point", "x", "--max-word-len", "2", "--out", csv_path)

		svg = self.plot(system_path, csv_path)
		self.assertEqual(svg.count('class="orbit"'), 4)
		self.assertEqual(svg.count('class="designated"'), 1)
		self.assertEqual(svg, self.plot(system_path, csv_path))

	def test_circle_graphs_break_where_they_wrap(self):
		system_path = self.example_config("circle-swap")
		csv_path = self.path("empty.csv")
		open(csv_path, "w").close()

		svg = self.plot(system_path, csv_path)
		self.assertEqual(svg.count('data-name="rot"'), 2)

	def test_line_systems_use_their_view(self):
		system_path = self.example_config("level2-cantor")
		csv_path = self.path("empty.csv")
		open(csv_path, "w").close()

		svg = self.plot(system_path, csv_path)
		# x = 0 sits 3/7 of the way across the view [-3, 4]
		self.assertIn('x1="219.429"', svg)
