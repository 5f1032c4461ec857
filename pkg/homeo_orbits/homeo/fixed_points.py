import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from homeo_orbits.exceptions import ConfigError, throw
from homeo_orbits.homeo.constants import MAX_BISECTION_CELLS, DomainKind, FixedPointKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.maps import PiecewiseMap
from homeo_orbits.homeo.pieces import AffinePiece, Piece, PowerPiece
from homeo_orbits.utils.rational import format_rational


@dataclass(frozen=True)
class FixedPoint:
	enclosure: Enclosure
	kind: FixedPointKind
	# circle lifts: F(x) = x + shift
	shift: int = 0

	@property
	def is_exact(self) -> bool:
		return self.enclosure.is_exact

	def as_dict(self) -> dict:
		data = {
			"lo": format_rational(self.enclosure.lo),
			"hi": format_rational(self.enclosure.hi),
			"kind": self.kind.value,
		}
		if self.shift:
			data["shift"] = self.shift
		return data


def fixed_point_enclosures(
	m: PiecewiseMap,
	resolution: Fraction,
	window: tuple[Fraction, Fraction] | None = None,
	max_cells: int = MAX_BISECTION_CELLS,
) -> list[FixedPoint]:
	"""Enclosures of width <= resolution covering every fixed point of m in the window.

	Exact fixed points come from affine pieces, breakpoints and evaluator landmarks; the rest
	come from bisection on F(x) - x with an interval range test. Cells still wider than the
	resolution when max_cells is reached are returned flagged unresolved.
	"""
	resolution = Fraction(resolution)
	lo, hi = _window(m, window)
	prec = resolution / 64

	shifts = [0]
	if m.domain_kind is DomainKind.CIRCLE:
		start = m.pieces[0].evaluate(Fraction(0), prec)
		shifts = list(range(math.ceil(start.lo - 1), math.floor(start.hi + 1) + 1))

	found: list[FixedPoint] = []
	for shift in shifts:
		for piece in m.pieces:
			u = lo if piece.lo is None else max(lo, piece.lo)
			v = hi if piece.hi is None else min(hi, piece.hi)
			if u > v:
				continue
			if isinstance(piece, AffinePiece):
				found.extend(_affine_fixed(piece, u, v, shift))
			else:
				found.extend(_search(piece, u, v, shift, resolution, prec, max_cells))
	merged = _merge(found, resolution)
	if m.domain_kind is DomainKind.CIRCLE:
		# 1 and 0 are the same point of the circle
		merged = [p for p in merged if not (p.is_exact and p.enclosure.lo == 1)]
	return merged


def _window(m: PiecewiseMap, window) -> tuple[Fraction, Fraction]:
	if window is not None:
		return Fraction(window[0]), Fraction(window[1])
	if m.domain_kind is DomainKind.LINE:
		if m.core is None:
			throw(f"{m.name} acts on the line; pass a window", ConfigError)
		return m.core
	return Fraction(0), Fraction(1)


def _affine_fixed(piece: AffinePiece, u: Fraction, v: Fraction, shift: int) -> list[FixedPoint]:
	if piece.slope == 1:
		if piece.offset == shift:
			return [FixedPoint(Enclosure(u, v), FixedPointKind.INTERVAL, shift)]
		return []
	x = (shift - piece.offset) / (piece.slope - 1)
	if u <= x <= v:
		return [FixedPoint(Enclosure.exact(x), FixedPointKind.CERTIFIED, shift)]
	return []


def _search(
	piece: Piece, u: Fraction, v: Fraction, shift: int, resolution: Fraction, prec: Fraction, max_cells: int
) -> list[FixedPoint]:
	values: dict[Fraction, Enclosure] = {}

	def phi(x: Fraction) -> Enclosure:
		if x not in values:
			values[x] = piece.evaluate(x, prec).shift(-x - shift)
		return values[x]

	stops = sorted({u, v, *(t for t in piece.landmarks(u, v, resolution) if u <= t <= v)})
	exact = [t for t in stops if phi(t) == Enclosure.exact(0)]
	found = [FixedPoint(Enclosure.exact(t), FixedPointKind.CERTIFIED, shift) for t in exact]
	exact_set = set(exact)
	convexity = piece.convexity() if isinstance(piece, PowerPiece) else 0

	cells = deque(zip(stops, stops[1:], strict=False))
	visited = 0
	while cells:
		a, b = cells.popleft()
		visited += 1
		fa, fb = phi(a), phi(b)
		low, high = fa.lo - (b - a), fb.hi + (b - a)
		if low > 0 or high < 0:
			continue
		if convexity and _ruled_out_by_curvature(convexity, a, b, fa, fb, exact_set):
			continue
		if b - a > resolution / 2 and visited > max_cells:
			found.append(FixedPoint(Enclosure(a, b), FixedPointKind.UNRESOLVED, shift))
			continue
		if b - a <= resolution / 2:
			certified = (fa.hi < 0 < fb.lo) or (fb.hi < 0 < fa.lo)
			kind = FixedPointKind.CERTIFIED if certified else FixedPointKind.POSSIBLE
			found.append(FixedPoint(Enclosure(a, b), kind, shift))
			continue
		c = (a + b) / 2
		if phi(c) == Enclosure.exact(0):
			exact_set.add(c)
			found.append(FixedPoint(Enclosure.exact(c), FixedPointKind.CERTIFIED, shift))
		cells.append((a, c))
		cells.append((c, b))
	return found


def _ruled_out_by_curvature(convexity: int, a, b, fa: Enclosure, fb: Enclosure, exact: set) -> bool:
	# F(x) - x is strictly convex (concave) on a power piece, so with a zero at one end its
	# sign on the rest of the cell is the sign at the other end
	if convexity > 0:
		return (a in exact and fb.hi < 0) or (b in exact and fa.hi < 0)
	return (a in exact and fb.lo > 0) or (b in exact and fa.lo > 0)


def _merge(found: list[FixedPoint], resolution: Fraction) -> list[FixedPoint]:
	"""Sort, drop duplicates and absorb undecided cells touching an exact fixed point.

	Unresolved cells never merge.
	"""
	items = sorted(set(found), key=lambda p: (p.shift, p.enclosure.lo, p.enclosure.hi))
	merged: list[FixedPoint] = []
	for item in items:
		if merged and FixedPointKind.UNRESOLVED not in (merged[-1].kind, item.kind):
			last = merged[-1]
			touching = last.shift == item.shift and last.enclosure.overlaps(item.enclosure)
			if touching and last.kind is not FixedPointKind.INTERVAL and item.kind is not FixedPointKind.INTERVAL:
				hull = Enclosure.hull(last.enclosure, item.enclosure)
				certain = FixedPointKind.CERTIFIED in (last.kind, item.kind)
				if hull.width() <= resolution:
					kind = FixedPointKind.CERTIFIED if certain else FixedPointKind.POSSIBLE
					merged[-1] = FixedPoint(hull, kind, item.shift)
					continue
			if touching and FixedPointKind.INTERVAL in (last.kind, item.kind):
				merged[-1] = FixedPoint(
					Enclosure.hull(last.enclosure, item.enclosure), FixedPointKind.INTERVAL, item.shift
				)
				continue
		merged.append(item)
	return merged
