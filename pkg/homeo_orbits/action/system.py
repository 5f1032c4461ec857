from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from homeo_orbits.exceptions import ConfigError, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.maps import PiecewiseMap
from homeo_orbits.utils.rational import format_rational


@dataclass(frozen=True, eq=False)
class GeneratorSystem:
	"""Named generators acting on a common space, as a group or as a semigroup.

	Generator order is declaration order; every enumeration in the action module follows it.
	"""

	name: str
	generators: Mapping[str, PiecewiseMap]
	invertible: bool = True
	designated_points: Mapping[str, Fraction] = field(default_factory=dict)
	# designated point names ordered by expected level
	ladder: tuple[str, ...] = ()
	# P(G) for circle systems, given rather than discovered
	finite_orbit_points: tuple[Fraction, ...] = ()
	# finite window for systems on the line
	view: tuple[Fraction, Fraction] | None = None
	notes: tuple[str, ...] = ()
	params: Mapping[str, Any] = field(default_factory=dict)

	def __post_init__(self):
		if not self.generators:
			throw(f"system {self.name} has no generators", ConfigError)
		object.__setattr__(self, "generators", dict(self.generators))
		object.__setattr__(
			self, "designated_points", {k: Fraction(v) for k, v in self.designated_points.items()}
		)
		object.__setattr__(self, "ladder", tuple(self.ladder))
		object.__setattr__(self, "finite_orbit_points", tuple(sorted(Fraction(p) for p in self.finite_orbit_points)))
		object.__setattr__(self, "notes", tuple(self.notes))
		object.__setattr__(self, "params", dict(self.params))
		if self.view is not None:
			object.__setattr__(self, "view", (Fraction(self.view[0]), Fraction(self.view[1])))

		kinds = {m.domain_kind for m in self.generators.values()}
		if len(kinds) > 1:
			throw(f"generators of {self.name} act on different spaces: {sorted(k.value for k in kinds)}", ConfigError)
		if self.invertible:
			for name, m in self.generators.items():
				if m.surjective is False:
					throw(f"{name} is an endomorphism; {self.name} cannot be a group", ConfigError)
		for name in self.ladder:
			if name not in self.designated_points:
				throw(f"ladder point {name!r} is not a designated point of {self.name}", ConfigError)
		if self.domain_kind is DomainKind.LINE and self.view is None:
			throw(f"{self.name} acts on the line and needs a view window", ConfigError)

	@property
	def maps(self) -> Mapping[str, PiecewiseMap]:
		return self.generators

	@property
	def domain_kind(self) -> DomainKind:
		return next(iter(self.generators.values())).domain_kind

	def letters(self) -> list[tuple[str, int]]:
		"""BFS alphabet: g1, g1^-1, g2, g2^-1, ... (forward letters only for semigroups)."""
		found = []
		for name in self.generators:
			found.append((name, 1))
			if self.invertible:
				found.append((name, -1))
		return found

	def point(self, name: str) -> Fraction:
		if name not in self.designated_points:
			throw(f"{self.name} has no designated point {name!r}", ConfigError)
		return self.designated_points[name]

	def ladder_points(self) -> list[Fraction]:
		return [self.designated_points[name] for name in self.ladder]

	def window(self) -> tuple[Fraction, Fraction]:
		if self.view is not None:
			return self.view
		return Fraction(0), Fraction(1)

	def contains(self, x: Fraction) -> bool:
		if self.domain_kind is DomainKind.LINE:
			return True
		return 0 <= x <= 1

	def describe(self) -> dict[str, Any]:
		data: dict[str, Any] = {
			"name": self.name,
			"domain_kind": self.domain_kind.value,
			"invertible": self.invertible,
			"generators": [m.describe() for m in self.generators.values()],
			"designated_points": {k: format_rational(v) for k, v in self.designated_points.items()},
			"ladder": list(self.ladder),
		}
		if self.finite_orbit_points:
			data["finite_orbit_points"] = [format_rational(p) for p in self.finite_orbit_points]
		if self.view is not None:
			data["view"] = [format_rational(v) for v in self.view]
		if self.notes:
			data["notes"] = list(self.notes)
		return data
