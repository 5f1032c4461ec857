import importlib
from typing import Any


def get_attr(method_string: str) -> Any:
	"""Resolve a dotted path such as "homeo_orbits.catalog.systems.case1_dense"."""
	module_name, _, attr = method_string.rpartition(".")
	return getattr(importlib.import_module(module_name), attr)


def get_hooks(hook: str) -> dict[str, str]:
	from homeo_orbits import hooks

	return dict(getattr(hooks, hook, {}))
