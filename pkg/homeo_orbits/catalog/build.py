from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.catalog.systems import ExampleParams
from homeo_orbits.exceptions import UnknownName, throw
from homeo_orbits.utils import get_attr, get_hooks


class ExampleSpec(BaseModel):
	model_config = ConfigDict(extra="forbid", frozen=True)

	name: str
	# rationals as "p/q" strings, ints or Fractions; flags as booleans
	params: dict[str, Any] = Field(default_factory=dict)


def list_examples() -> list[str]:
	return list(get_hooks("examples"))


def build_example(spec: ExampleSpec | str, **params) -> GeneratorSystem:
	"""Build a catalog system; keyword params override spec.params."""
	if isinstance(spec, str):
		spec = ExampleSpec(name=spec)
	registry = get_hooks("examples")
	if spec.name not in registry:
		throw(f"no catalog example {spec.name!r}; known: {', '.join(registry)}", UnknownName)

	values = ExampleParams(spec.name, {**spec.params, **params})
	system = get_attr(registry[spec.name])(values)
	values.finish()
	return system
