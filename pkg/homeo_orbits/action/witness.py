from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from homeo_orbits.action.constants import (
	DEFAULT_EVAL_PREC,
	DEFAULT_RESOLUTION,
	WITNESS_START_HALF_WIDTH,
	Condition,
)
from homeo_orbits.action.structure import common_fixed_points
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.action.utils import create_action_log
from homeo_orbits.exceptions import NeitherConditionVerified, throw
from homeo_orbits.homeo.constants import DomainKind, FixedPointKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.fixed_points import FixedPoint, fixed_point_enclosures
from homeo_orbits.homeo.maps import PiecewiseMap, eval_map
from homeo_orbits.utils.rational import format_rational


@dataclass(frozen=True)
class Certificate:
	"""Images of the ends of J under one generator."""

	generator: str
	at_lo: Enclosure
	at_hi: Enclosure

	def overlaps(self, lo: Fraction, hi: Fraction) -> bool:
		# g(J) = [g(lo), g(hi)] meets J = [lo, hi]
		return self.at_lo.hi <= hi and self.at_hi.lo >= lo

	def as_dict(self) -> dict[str, Any]:
		return {
			"generator": self.generator,
			"image_of_lo": [format_rational(self.at_lo.lo), format_rational(self.at_lo.hi)],
			"image_of_hi": [format_rational(self.at_hi.lo), format_rational(self.at_hi.hi)],
		}


@dataclass(frozen=True)
class WitnessInterval:
	"""Compact J inside (0, 1) with g(J) meeting J for the certified generators.

	Under C1 J holds every fixed point of ``generator`` in its interior; under C2 the
	generators share no interior fixed point and each of them moves J onto itself partly.
	"""

	lo: Fraction
	hi: Fraction
	condition: Condition
	generator: str | None
	certificates: tuple[Certificate, ...]
	resolution: Fraction
	notes: tuple[str, ...] = ()

	def as_dict(self) -> dict[str, Any]:
		return {
			"lo": format_rational(self.lo),
			"hi": format_rational(self.hi),
			"condition": self.condition.value,
			"generator": self.generator,
			"certificates": [c.as_dict() for c in self.certificates],
			"resolution": format_rational(self.resolution),
			"notes": list(self.notes),
		}


def _certify(name: str, m: PiecewiseMap, lo: Fraction, hi: Fraction, prec: Fraction) -> Certificate:
	return Certificate(name, eval_map(m, lo, prec), eval_map(m, hi, prec))


def _central(resolution: Fraction) -> Iterator[tuple[Fraction, Fraction]]:
	half = Fraction(1, 2)
	t = WITNESS_START_HALF_WIDTH
	while half - t > resolution:
		yield half - t, half + t
		t = (t + half) / 2


def _around(core: Enclosure, resolution: Fraction) -> Iterator[tuple[Fraction, Fraction]]:
	lo, hi = core.lo / 2, (1 + core.hi) / 2
	while lo > resolution and 1 - hi > resolution:
		yield lo, hi
		lo, hi = lo / 2, (1 + hi) / 2


def _interior(points: list[FixedPoint]) -> list[FixedPoint]:
	return [p for p in points if not (p.is_exact and p.enclosure.lo in (0, 1))]


def _near_ends(points: list[FixedPoint], resolution: Fraction) -> bool:
	return any(p.enclosure.lo <= resolution or p.enclosure.hi >= 1 - resolution for p in points)


def _note(resolution: Fraction) -> str:
	return f"fixed points are known to stay away from 0 and 1 only down to resolution {format_rational(resolution)}"


def _by_single_generator(
	system: GeneratorSystem, resolution: Fraction, prec: Fraction, blockers: list[str]
) -> WitnessInterval | None:
	exact_picture = len(system.generators) == 1
	for name, m in system.generators.items():
		if not (m.all_affine or exact_picture):
			blockers.append(f"C1 via {name}: fixed points of a non-affine generator are only enclosed")
			continue
		interior = _interior(fixed_point_enclosures(m, resolution))
		if any(p.kind is FixedPointKind.INTERVAL for p in interior):
			blockers.append(f"C1 via {name}: it fixes a whole interval")
			continue
		if _near_ends(interior, resolution):
			blockers.append(f"C1 via {name}: fixed points come within {format_rational(resolution)} of an end")
			continue
		if interior:
			candidates = _around(Enclosure.hull(*(p.enclosure for p in interior)), resolution)
		else:
			candidates = _central(resolution)
		for lo, hi in candidates:
			certificate = _certify(name, m, lo, hi, prec)
			if certificate.overlaps(lo, hi):
				return WitnessInterval(lo, hi, Condition.C1, name, (certificate,), resolution, (_note(resolution),))
		blockers.append(f"C1 via {name}: no interval around its fixed points met its image")
	return None


def _by_all_generators(
	system: GeneratorSystem, resolution: Fraction, prec: Fraction, blockers: list[str]
) -> WitnessInterval | None:
	shared = _interior(common_fixed_points(system, resolution))
	if shared:
		where = ", ".join(str(p.enclosure) for p in shared[:3])
		blockers.append(f"C2: the generators may share interior fixed points near {where}")
		return None
	for lo, hi in _central(resolution):
		certificates = tuple(_certify(name, m, lo, hi, prec) for name, m in system.generators.items())
		if all(c.overlaps(lo, hi) for c in certificates):
			return WitnessInterval(lo, hi, Condition.C2, None, certificates, resolution, (_note(resolution),))
	blockers.append("C2: no central interval met its image under every generator")
	return None


def witness_interval(
	system: GeneratorSystem, resolution: Fraction = DEFAULT_RESOLUTION, prec: Fraction = DEFAULT_EVAL_PREC
) -> WitnessInterval:
	"""Find J certifying that the action on (0, 1) has a minimal set.

	C1 is tried first, generator by generator in declaration order, then C2.
	"""
	resolution, prec = Fraction(resolution), Fraction(prec)
	if system.domain_kind is not DomainKind.INTERVAL:
		throw(f"{system.name} does not act on [0, 1]", NeitherConditionVerified)

	blockers: list[str] = []
	witness = _by_single_generator(system, resolution, prec, blockers) or _by_all_generators(
		system, resolution, prec, blockers
	)
	if witness is None:
		create_action_log(
			status="Invalid",
			method="witness_interval",
			request_data={"system": system.name},
			message="; ".join(blockers),
		)
		throw("; ".join(blockers), NeitherConditionVerified)

	create_action_log(
		status="Success",
		method="witness_interval",
		request_data={"system": system.name, "resolution": resolution},
		response_data=witness.as_dict(),
	)
	return witness


def verify_witness(system: GeneratorSystem, witness: WitnessInterval, prec: Fraction = DEFAULT_EVAL_PREC) -> bool:
	"""Recompute every certificate of witness against system."""
	if not 0 < witness.lo <= witness.hi < 1:
		return False
	for certificate in witness.certificates:
		m = system.generators.get(certificate.generator)
		if m is None or not _certify(certificate.generator, m, witness.lo, witness.hi, prec).overlaps(
			witness.lo, witness.hi
		):
			return False
	if witness.condition is Condition.C2 and len(witness.certificates) != len(system.generators):
		return False
	return True
