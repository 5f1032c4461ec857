from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from homeo_orbits.action.constants import DEFAULT_DEDUP_TOL, DEFAULT_EVAL_PREC, DEFAULT_RESOLUTION
from homeo_orbits.action.orbit import OrbitBudget, orbit
from homeo_orbits.action.stabilizer import circle_distance, reduced_words, stabilizes
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.exceptions import BaseInP, ConfigError, PNotInvariant, throw
from homeo_orbits.homeo.constants import DomainKind, FixedPointKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.fixed_points import FixedPoint, fixed_point_enclosures
from homeo_orbits.homeo.maps import eval_map
from homeo_orbits.homeo.words import MapWord
from homeo_orbits.utils.rational import format_rational

Number = Fraction | int | float


@dataclass(frozen=True)
class ComponentDecomposition:
	"""Complement of P(G): open intervals, or arcs for circle systems.

	The last arc of a circle runs from the largest point of P across 0, so its right end
	is the smallest point plus one.
	"""

	domain_kind: DomainKind
	finite_orbit_points: tuple[Fraction, ...]
	components: tuple[tuple[Fraction, Fraction], ...]

	def component_of(self, x: Number) -> int | None:
		for index, (a, b) in enumerate(self.components):
			if a < x < b:
				return index
			if self.domain_kind is DomainKind.CIRCLE and a < x + 1 < b:
				return index
		return None

	def length(self, index: int) -> Fraction:
		a, b = self.components[index]
		return b - a

	def as_dict(self) -> dict[str, Any]:
		return {
			"domain_kind": self.domain_kind.value,
			"finite_orbit_points": [format_rational(p) for p in self.finite_orbit_points],
			"components": [[format_rational(a), format_rational(b)] for a, b in self.components],
		}


@dataclass(frozen=True)
class CircleReduction:
	decomposition: ComponentDecomposition
	# per component, the words found to map it onto itself
	stabilizers: tuple[tuple[MapWord, ...], ...]

	def as_dict(self) -> dict[str, Any]:
		return {
			**self.decomposition.as_dict(),
			"stabilizers": [[word.to_text() for word in words] for words in self.stabilizers],
		}


def _combined(p: FixedPoint, q: FixedPoint, both: Enclosure) -> FixedPointKind:
	if FixedPointKind.UNRESOLVED in (p.kind, q.kind):
		return FixedPointKind.UNRESOLVED
	if p.kind is FixedPointKind.INTERVAL and q.kind is FixedPointKind.INTERVAL:
		return FixedPointKind.INTERVAL
	if p.kind is FixedPointKind.INTERVAL and p.enclosure.contains(q.enclosure):
		return q.kind
	if q.kind is FixedPointKind.INTERVAL and q.enclosure.contains(p.enclosure):
		return p.kind
	if both.is_exact and FixedPointKind.POSSIBLE not in (p.kind, q.kind):
		return FixedPointKind.CERTIFIED
	return FixedPointKind.POSSIBLE


def common_fixed_points(system: GeneratorSystem, resolution: Fraction = DEFAULT_RESOLUTION) -> list[FixedPoint]:
	"""Enclosures that meet a fixed-point enclosure of every generator.

	The first generator (all-affine ones go first) is searched on the whole window, the
	others only inside the surviving candidates.
	"""
	window = system.view if system.domain_kind is DomainKind.LINE else None
	ordered = sorted(system.generators.values(), key=lambda m: not m.all_affine)
	found = fixed_point_enclosures(ordered[0], resolution, window=window)
	for m in ordered[1:]:
		merged = []
		for p in found:
			for q in fixed_point_enclosures(m, resolution, window=(p.enclosure.lo, p.enclosure.hi)):
				both = p.enclosure.intersect(q.enclosure)
				if both is not None:
					merged.append(FixedPoint(both, _combined(p, q, both)))
		found = merged
	return found


def decompose(system: GeneratorSystem, resolution: Fraction = DEFAULT_RESOLUTION) -> ComponentDecomposition:
	"""Split the space at P(G).

	Interval systems use their certified isolated common fixed points, circle systems their
	declared finite orbit points, and line systems their view window.
	"""
	kind = system.domain_kind
	if kind is DomainKind.LINE:
		return ComponentDecomposition(kind, (), (system.view,))

	if kind is DomainKind.CIRCLE:
		points = sorted({p % 1 for p in system.finite_orbit_points})
		if not points:
			throw(f"{system.name} acts on the circle but declares no finite orbit points", ConfigError)
		arcs = [(a, b) for a, b in zip(points, points[1:], strict=False)]
		arcs.append((points[-1], points[0] + 1))
		return ComponentDecomposition(kind, tuple(points), tuple(arcs))

	points: set[Fraction] = set()
	fixed_intervals: list[Enclosure] = []
	for p in common_fixed_points(system, resolution):
		if p.kind is FixedPointKind.CERTIFIED:
			points.add(p.enclosure.mid())
		elif p.kind is FixedPointKind.INTERVAL:
			points.update((p.enclosure.lo, p.enclosure.hi))
			fixed_intervals.append(p.enclosure)
	cuts = sorted(points | {Fraction(0), Fraction(1)})
	components = tuple(
		(a, b)
		for a, b in zip(cuts, cuts[1:], strict=False)
		if not any(span.contains(Enclosure(a, b)) for span in fixed_intervals)
	)
	return ComponentDecomposition(kind, tuple(sorted(points)), components)


def reduce_circle(
	system: GeneratorSystem,
	points: list[Fraction] | None = None,
	budget: int = 3,
	tol: Fraction = DEFAULT_DEDUP_TOL,
	prec: Fraction = DEFAULT_EVAL_PREC,
) -> CircleReduction:
	"""Check that P is permuted by every generator, then split the circle at P and search
	words of length <= budget mapping each arc onto itself."""
	if system.domain_kind is not DomainKind.CIRCLE:
		throw(f"{system.name} does not act on the circle", ConfigError)
	points = sorted({Fraction(p) % 1 for p in (system.finite_orbit_points if points is None else points)})
	if not points:
		throw("reduce_circle needs at least one finite orbit point", ConfigError)

	for name, m in system.generators.items():
		for p in points:
			image = eval_map(m, p, prec)
			if not any(circle_distance(image, q) <= tol for q in points):
				throw(f"{name} moves {format_rational(p)} to {image}, off the finite orbit points", PNotInvariant)

	decomposition = decompose(
		GeneratorSystem(system.name, system.generators, system.invertible, finite_orbit_points=tuple(points))
	)
	stabilizers = tuple(
		tuple(word for word in reduced_words(system, budget) if stabilizes(system, word, a, b, tol, prec))
		for a, b in decomposition.components
	)
	return CircleReduction(decomposition, stabilizers)


def range_of(
	system: GeneratorSystem,
	decomposition: ComponentDecomposition,
	x: Fraction | int,
	budget: OrbitBudget | None = None,
	prec: Fraction = DEFAULT_EVAL_PREC,
	dedup_tol: Fraction = DEFAULT_DEDUP_TOL,
) -> set[int]:
	"""Components met by a budget-limited orbit of x: a lower bound for the range of x."""
	x = Fraction(x)
	start = decomposition.component_of(x)
	if start is None:
		throw(f"{format_rational(x)} lies on a finite orbit", BaseInP)
	found = {start}
	for point in orbit(system, x, budget, prec, dedup_tol).points:
		index = decomposition.component_of(point.value)
		if index is not None:
			found.add(index)
	return found
