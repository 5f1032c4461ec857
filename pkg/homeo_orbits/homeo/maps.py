import dataclasses
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

from homeo_orbits.exceptions import (
	GapInDomain,
	MapValidationError,
	NonAffineInput,
	NonMonotonePiece,
	NotInImage,
	OutOfDomain,
	OverlappingPieces,
	UnusableMap,
	throw,
)
from homeo_orbits.homeo.constants import DEFAULT_PREC, VALIDATION_PREC, VALIDATION_TOL, DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.pieces import AffinePiece, Piece
from homeo_orbits.homeo.utils import create_homeo_log
from homeo_orbits.utils.rational import format_rational

UNIT = Enclosure(0, 1)


@dataclass(frozen=True, eq=False)
class PiecewiseMap:
	"""Increasing map given by pieces tiling its domain.

	Circle maps are lifts on [0, 1] with F(x + 1) = F(x) + 1. Line maps are either given on
	the whole line (unbounded end pieces) or on one period starting at ``core[0]``.
	"""

	name: str
	pieces: tuple[Piece, ...]
	domain_kind: DomainKind = DomainKind.INTERVAL
	core: tuple[Fraction, Fraction] | None = None
	period: Fraction | None = None
	surjective: bool | None = None
	notes: tuple[str, ...] = field(default=())

	def __post_init__(self):
		object.__setattr__(self, "pieces", tuple(self.pieces))
		object.__setattr__(self, "domain_kind", DomainKind(self.domain_kind))
		if self.core is not None:
			object.__setattr__(self, "core", (Fraction(self.core[0]), Fraction(self.core[1])))
		if self.period is not None:
			object.__setattr__(self, "period", Fraction(self.period))

	@cached_property
	def breakpoints(self) -> list[Fraction]:
		return [piece.hi for piece in self.pieces[:-1]]

	@cached_property
	def periodicity(self) -> tuple[Fraction, Fraction] | None:
		"""(base, period) for maps commuting with a translation, else None."""
		if self.domain_kind is DomainKind.CIRCLE:
			return Fraction(0), Fraction(1)
		if self.domain_kind is DomainKind.LINE and self.period is not None:
			return self.core[0], self.period
		return None

	@property
	def all_affine(self) -> bool:
		return all(isinstance(piece, AffinePiece) for piece in self.pieces)

	@property
	def domain(self) -> tuple[Fraction | None, Fraction | None]:
		if self.domain_kind in (DomainKind.INTERVAL, DomainKind.CIRCLE):
			return Fraction(0), Fraction(1)
		if self.periodicity is not None:
			base, period = self.periodicity
			return base, base + period
		return self.pieces[0].lo, self.pieces[-1].hi

	def piece_at(self, x: Fraction) -> Piece:
		return self.pieces[bisect_left(self.breakpoints, x)]

	def describe(self) -> dict[str, Any]:
		data: dict[str, Any] = {
			"name": self.name,
			"domain_kind": self.domain_kind.value,
			"pieces": [piece.describe() for piece in self.pieces],
		}
		if self.core is not None:
			data["core"] = [format_rational(v) for v in self.core]
		if self.period is not None:
			data["period"] = format_rational(self.period)
		return data


@dataclass
class BreakpointCheck:
	at: Fraction
	left: Enclosure
	right: Enclosure
	continuous: bool


@dataclass
class ValidationReport:
	map: PiecewiseMap
	breakpoints: list[BreakpointCheck] = field(default_factory=list)
	monotone: list[bool] = field(default_factory=list)
	fixes_endpoints: bool | None = None
	surjective: bool = False
	issues: list[str] = field(default_factory=list)

	@property
	def usable(self) -> bool:
		return not self.issues

	@property
	def kind(self) -> str:
		return "automorphism" if self.surjective else "endomorphism"

	def as_dict(self) -> dict[str, Any]:
		return {
			"name": self.map.name,
			"kind": self.kind,
			"usable": self.usable,
			"fixes_endpoints": self.fixes_endpoints,
			"monotone": self.monotone,
			"continuity": [
				{"at": format_rational(check.at), "continuous": check.continuous} for check in self.breakpoints
			],
			"issues": self.issues,
		}


def _lift(m: PiecewiseMap, x: Fraction, prec: Fraction) -> Enclosure:
	if m.periodicity is not None:
		base, period = m.periodicity
		k = math.floor((x - base) / period)
		x0 = x - k * period
		return m.piece_at(x0).evaluate(x0, prec).shift(k * period)

	lo, hi = m.domain
	if (lo is not None and x < lo) or (hi is not None and x > hi):
		throw(f"{format_rational(x)} outside the domain of {m.name}", OutOfDomain)
	return m.piece_at(x).evaluate(x, prec)


def _settle(m: PiecewiseMap, value: Enclosure) -> Enclosure:
	if m.domain_kind is DomainKind.INTERVAL:
		return value.intersect(UNIT) or value
	if m.domain_kind is DomainKind.CIRCLE:
		return value.shift(-math.floor(value.lo))
	return value


def eval_map(m: PiecewiseMap, x: Fraction | int, prec: Fraction = DEFAULT_PREC) -> Enclosure:
	"""Enclosure of m(x) of width at most prec; exact on affine pieces."""
	return _settle(m, _lift(m, Fraction(x), prec))


def eval_enclosure(m: PiecewiseMap, x: Enclosure, prec: Fraction = DEFAULT_PREC) -> Enclosure:
	if x.is_exact:
		return eval_map(m, x.lo, prec)
	lo = _lift(m, x.lo, prec).lo
	hi = _lift(m, x.hi, prec).hi
	return _settle(m, Enclosure(lo, hi))


def _invert_pieces(m: PiecewiseMap, y: Fraction, prec: Fraction) -> Enclosure:
	found = []
	for piece in m.pieces:
		if not piece.may_reach(y):
			continue
		try:
			candidate = piece.invert(y, prec / 2)
		except NotInImage:
			continue
		lo = candidate.lo if piece.lo is None else max(candidate.lo, piece.lo - (prec / 2))
		hi = candidate.hi if piece.hi is None else min(candidate.hi, piece.hi + (prec / 2))
		if lo <= hi:
			found.append(candidate)
	if not found:
		throw(f"{format_rational(y)} is not in the image of {m.name}", NotInImage)
	result = Enclosure.hull(*found)
	lo, hi = m.domain
	clipped = result.intersect(Enclosure(result.lo if lo is None else lo, result.hi if hi is None else hi))
	return clipped or result


def invert_point(m: PiecewiseMap, y: Fraction | int, prec: Fraction = DEFAULT_PREC) -> Enclosure:
	"""Enclosure of the unique preimage of y; exact on affine pieces."""
	y = Fraction(y)
	if m.periodicity is None:
		if m.domain_kind is DomainKind.INTERVAL and not 0 <= y <= 1:
			throw(f"{format_rational(y)} outside [0, 1]", OutOfDomain)
		return _invert_pieces(m, y, prec)

	base, period = m.periodicity
	start = m.pieces[0].image[0]
	k = math.floor((y - start.lo) / period)
	preimage = _invert_pieces(m, y - k * period, prec)
	if m.domain_kind is DomainKind.CIRCLE:
		return preimage.shift(-math.floor(preimage.lo))
	return preimage.shift(k * period)


def invert_enclosure(m: PiecewiseMap, y: Enclosure, prec: Fraction = DEFAULT_PREC) -> Enclosure:
	if y.is_exact:
		return invert_point(m, y.lo, prec)
	lo = invert_point(m, y.lo, prec)
	hi = invert_point(m, y.hi, prec)
	if m.domain_kind is DomainKind.CIRCLE and hi.hi < lo.lo:
		hi = hi.shift(1)
	return Enclosure(lo.lo, hi.hi)


def _report(strict: bool, report: ValidationReport, message: str, exc: type[MapValidationError]):
	if strict:
		throw(f"{report.map.name}: {message}", exc)
	report.issues.append(message)


def _joins(m: PiecewiseMap) -> list[tuple[Fraction, Piece, Piece, Fraction]]:
	"""(point, left piece, right piece, shift of the right value) for every join to check."""
	joins = [(left.hi, left, right, Fraction(0)) for left, right in zip(m.pieces, m.pieces[1:], strict=False)]
	if m.periodicity is not None:
		base, period = m.periodicity
		joins.append((base + period, m.pieces[-1], m.pieces[0], period))
	return joins


def validate_map(m: PiecewiseMap, strict: bool = True) -> ValidationReport:
	"""Check tiling, monotonicity and continuity and classify the map.

	With strict=False problems are collected into the report instead of raised.
	"""
	if not m.pieces:
		throw(f"{m.name} has no pieces", UnusableMap)

	report = ValidationReport(map=m)
	lo, hi = m.domain
	first, last = m.pieces[0], m.pieces[-1]
	if first.lo != lo or last.hi != hi:
		_report(strict, report, f"pieces cover [{first.lo}, {last.hi}] instead of [{lo}, {hi}]", GapInDomain)

	for piece in m.pieces:
		if piece.lo is not None and piece.hi is not None and piece.lo >= piece.hi:
			_report(strict, report, f"degenerate piece [{piece.lo}, {piece.hi}]", OverlappingPieces)

	for left, right in zip(m.pieces, m.pieces[1:], strict=False):
		if left.hi is None or right.lo is None or left.hi < right.lo:
			_report(strict, report, f"gap between {left.hi} and {right.lo}", GapInDomain)
		elif left.hi > right.lo:
			_report(strict, report, f"pieces overlap on [{right.lo}, {left.hi}]", OverlappingPieces)

	for index, piece in enumerate(m.pieces):
		monotone = piece.is_monotone()
		report.monotone.append(monotone)
		if not monotone:
			_report(strict, report, f"piece {index} is not increasing", NonMonotonePiece)

	if report.issues:
		return _finish(m, report)

	for at, left, right, shift in _joins(m):
		exact = isinstance(left, AffinePiece) and isinstance(right, AffinePiece)
		start = right.lo if shift else at
		left_value = left.evaluate(at, VALIDATION_PREC)
		right_value = right.evaluate(start, VALIDATION_PREC).shift(shift)
		if exact:
			continuous = left_value == right_value
		else:
			continuous = left_value.distance(right_value) <= VALIDATION_TOL
		report.breakpoints.append(BreakpointCheck(at, left_value, right_value, continuous))
		if not continuous:
			report.issues.append(f"discontinuous at {format_rational(at)}: {left_value} vs {right_value}")

	if m.domain_kind is DomainKind.INTERVAL:
		start = first.evaluate(Fraction(0), VALIDATION_PREC)
		end = last.evaluate(Fraction(1), VALIDATION_PREC)
		if start.hi < -VALIDATION_TOL or end.lo > 1 + VALIDATION_TOL:
			report.issues.append("values leave [0, 1]")
		report.fixes_endpoints = start.distance(0) <= VALIDATION_TOL and end.distance(1) <= VALIDATION_TOL
		report.surjective = report.fixes_endpoints
	elif m.periodicity is not None:
		report.surjective = True
	else:
		report.surjective = first.lo is None and last.hi is None

	return _finish(m, report)


def _finish(m: PiecewiseMap, report: ValidationReport) -> ValidationReport:
	report.map = dataclasses.replace(m, surjective=report.surjective)
	if report.issues:
		create_homeo_log(status="Invalid", method="validate_map", message=m.name, response_data=report.as_dict())
	return report


def validated(m: PiecewiseMap) -> PiecewiseMap:
	"""Strictly validate m and return it with its surjectivity flag set."""
	report = validate_map(m)
	if not report.usable:
		throw(f"{m.name}: {'; '.join(report.issues)}", UnusableMap)
	return report.map


def _affine_terms(m: PiecewiseMap, y: Fraction) -> tuple[Fraction, Fraction]:
	"""Slope and offset of the piece of m acting at y, periodically extended."""
	shift = Fraction(0)
	if m.periodicity is not None:
		base, period = m.periodicity
		k = math.floor((y - base) / period)
		y, shift = y - k * period, k * period
	piece = m.piece_at(y)
	if not piece.covers(y):
		throw(f"{format_rational(y)} outside the domain of {m.name}", OutOfDomain)
	return piece.slope, piece.offset + shift - piece.slope * shift


def _breaks_between(m: PiecewiseMap, lo: Fraction | None, hi: Fraction | None) -> list[Fraction]:
	if m.periodicity is None:
		return [t for t in m.breakpoints if (lo is None or t > lo) and (hi is None or t < hi)]
	base, period = m.periodicity
	cuts = [base, *m.breakpoints]
	found = []
	for k in range(math.floor((lo - base) / period), math.ceil((hi - base) / period) + 1):
		found.extend(t + k * period for t in cuts if lo < t + k * period < hi)
	return sorted(found)


def compose_affine(a: PiecewiseMap, b: PiecewiseMap) -> PiecewiseMap:
	"""Exact a o b (b applied first) for piecewise affine maps."""
	if not (a.all_affine and b.all_affine):
		throw(f"compose_affine needs affine pieces, got {a.name} and {b.name}", NonAffineInput)
	if a.domain_kind is not b.domain_kind or a.periodicity != b.periodicity:
		throw(f"{a.name} and {b.name} act on different spaces", NonAffineInput)

	pieces: list[AffinePiece] = []
	for piece in b.pieces:
		image_lo = None if piece.lo is None else piece.at(piece.lo)
		image_hi = None if piece.hi is None else piece.at(piece.hi)
		cuts = [piece.lo, *((t - piece.offset) / piece.slope for t in _breaks_between(a, image_lo, image_hi)), piece.hi]
		for u, v in zip(cuts, cuts[1:], strict=False):
			inside = _inside(u, v)
			slope, offset = _affine_terms(a, piece.at(inside))
			slope, offset = slope * piece.slope, slope * piece.offset + offset
			previous = pieces[-1] if pieces else None
			if previous is not None and previous.slope == slope and previous.offset == offset:
				pieces[-1] = AffinePiece(previous.lo, v, slope, offset)
			else:
				pieces.append(AffinePiece(u, v, slope, offset))

	return validated(
		PiecewiseMap(
			name=f"{a.name}.{b.name}",
			pieces=tuple(pieces),
			domain_kind=b.domain_kind,
			core=b.core,
			period=b.period,
		)
	)


def _inside(u: Fraction | None, v: Fraction | None) -> Fraction:
	if u is None and v is None:
		return Fraction(0)
	if u is None:
		return v - 1
	if v is None:
		return u + 1
	return (u + v) / 2

