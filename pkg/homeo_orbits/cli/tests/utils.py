import contextlib
import io
import json
import os
import tempfile
import unittest
from typing import ClassVar

from homeo_orbits.cli.main import main


class TestCase(unittest.TestCase):
	config: ClassVar = {
		"svg_size": 512,
		"dense_budget": ["--max-word-len", "24", "--max-points", "2000"],
		"dense_params": ["--eps-dense", "1/20", "--edge-margin", "3/10"],
	}

	def setUp(self):
		workdir = tempfile.TemporaryDirectory()
		self.addCleanup(workdir.cleanup)
		self.workdir = workdir.name

	def load_fixture(self, name):
		with open(os.path.dirname(__file__) + f"/fixtures/{name}.json", "rb") as f:
			data = f.read()
		return json.loads(data)

	def path(self, name: str) -> str:
		return os.path.join(self.workdir, name)

	def write_fixture_config(self, name: str) -> str:
		"""Write one document of fixtures/configs.json to the work dir and return its path."""
		path = self.path(f"{name}.json")
		with open(path, "w", encoding="utf-8") as f:
			json.dump(self.load_fixture("configs")[name], f)
		return path

	def run_cli(self, *argv: str) -> tuple[int, dict | None, str]:
		"""Exit code, parsed JSON output (None on failure) and stderr of one CLI run."""
		out, err = io.StringIO(), io.StringIO()
		with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
			code = main(list(argv))
		result = json.loads(out.getvalue()) if code == 0 and out.getvalue() else None
		return code, result, err.getvalue()

	def example_config(self, name: str, *extra: str) -> str:
		path = self.path(f"{name}.json")
		code, _, err = self.run_cli("example", name, "--out", path, *extra)
		self.assertEqual(code, 0, err)
		return path
