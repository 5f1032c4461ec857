import math
import threading
from fractions import Fraction
from typing import Any

from homeo_orbits.cantor.address import address_of, left_endpoint
from homeo_orbits.cantor.split import SplitHomeo, SplitHomeoSpec
from homeo_orbits.catalog.constants import BASE_POINT, G0_BREAK, LADDER_INTERVAL
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.maps import PiecewiseMap, eval_map, invert_point, validated
from homeo_orbits.homeo.pieces import AffinePiece

TWO_THIRDS = Fraction(2, 3)


def build_g0(name: str = "g") -> PiecewiseMap:
	"""2x on [0, 1/4], then the affine piece through (1/4, 1/2) and (1, 1)."""
	pieces = (AffinePiece(0, G0_BREAK, 2, 0), AffinePiece(G0_BREAK, 1, TWO_THIRDS, Fraction(1, 3)))
	return validated(PiecewiseMap(name, pieces))


def build_psi_inner(name: str = "psi") -> PiecewiseMap:
	"""Identity on [0, 1/2] and a half-size copy of g0 on [1/2, 1]."""
	pieces = (
		AffinePiece(0, Fraction(1, 2), 1, 0),
		AffinePiece(Fraction(1, 2), Fraction(5, 8), 2, Fraction(-1, 2)),
		AffinePiece(Fraction(5, 8), 1, TWO_THIRDS, Fraction(1, 3)),
	)
	return validated(PiecewiseMap(name, pieces))


def z(i: int) -> Fraction:
	"""i-th point g0^i(1/2) of the level-one ladder."""
	if i >= 0:
		return 1 - Fraction(1, 2) * TWO_THIRDS**i
	return Fraction(1, 2 ** (1 - i))


def g0_power(v: Fraction, i: int) -> Fraction:
	"""g0^i(v) for v in the closure of I_0."""
	if i >= 0:
		return 1 - (1 - v) * TWO_THIRDS**i
	return (3 * v - 1) / 2 ** (-i)


def chart(u: Fraction) -> Fraction:
	"""[0, 1] onto I_0 = [1/2, 2/3]."""
	lo, hi = LADDER_INTERVAL
	return lo + (hi - lo) * u


def unchart(y: Fraction) -> Fraction:
	lo, hi = LADDER_INTERVAL
	return (y - lo) / (hi - lo)


def _log2(t: Fraction) -> float:
	shift = t.numerator.bit_length() - t.denominator.bit_length()
	return shift + math.log2(t / Fraction(2) ** shift)


def ladder_index(x: Fraction) -> tuple[int, Fraction] | None:
	"""(i, g0^-i(x)) with x in [z_i, z_i+1); None for 0 and 1."""
	if x <= 0 or x >= 1:
		return None
	if x >= BASE_POINT:
		i = max(0, math.floor(_log2(2 * (1 - x)) / math.log2(TWO_THIRDS)))
	else:
		i = min(-1, -math.ceil(-_log2(x)) + 1)
	while z(i + 1) <= x:
		i += 1
	while z(i) > x:
		i -= 1
	if i >= 0:
		return i, 1 - (1 - x) * (TWO_THIRDS**-i)
	return i, (x * 2 ** (-i) + 1) / 3


class MapEvaluator:
	"""Exact evaluator view of an all-affine PiecewiseMap."""

	def __init__(self, m: PiecewiseMap):
		self.map = m

	def forward(self, x: Fraction) -> Fraction:
		return eval_map(self.map, x).lo

	def backward(self, y: Fraction) -> Fraction:
		return invert_point(self.map, y).lo

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(self.forward(x))

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(self.backward(y))

	def describe(self) -> dict[str, Any]:
		return {"kind": "map", "map": self.map.describe()}


class NestedLadderMap(MapEvaluator):
	"""The inner map copied into every interval of the ladder, ``depth`` levels down.

	Depth 0 is the inner map on [0, 1]. At depth d the map fixes every z_i and acts on
	[z_i, z_i+1] as g0^i o chart o (depth d - 1 map) o chart^-1 o g0^-i, so it commutes
	with g0 and with every shallower ladder generator.
	"""

	def __init__(self, inner: PiecewiseMap, depth: int):
		super().__init__(inner)
		self.depth = depth

	def _apply(self, x: Fraction, depth: int, step) -> Fraction:
		if depth == 0:
			return step(x)
		located = ladder_index(x)
		if located is None:
			return x
		i, y = located
		if y == BASE_POINT:
			return x
		return g0_power(chart(self._apply(unchart(y), depth - 1, step)), i)

	def forward(self, x: Fraction) -> Fraction:
		return self._apply(Fraction(x), self.depth, super().forward)

	def backward(self, y: Fraction) -> Fraction:
		return self._apply(Fraction(y), self.depth, super().backward)

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		return _ladder_points(lo, hi, resolution)

	def describe(self) -> dict[str, Any]:
		return {"kind": "nested-ladder", "inner": self.map.name, "depth": self.depth}


class ComposedMap:
	"""first, then second."""

	def __init__(self, first: MapEvaluator, second: MapEvaluator):
		self.first = first
		self.second = second

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(self.second.forward(self.first.forward(Fraction(x))))

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(self.first.backward(self.second.backward(Fraction(y))))

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		return _ladder_points(lo, hi, resolution)

	def describe(self) -> dict[str, Any]:
		return {"kind": "composed", "first": self.first.describe(), "second": self.second.describe()}


def _ladder_points(lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
	points = []
	i = 0
	while 1 - z(i) >= resolution:
		points.append(z(i))
		i += 1
	i = -1
	while z(i) >= resolution:
		points.append(z(i))
		i -= 1
	return sorted(p for p in points if lo <= p <= hi)


def dense_point(m: int) -> Fraction:
	"""m-th dyadic point of I_0 in breadth-first order: midpoint, then quarters, then eighths."""
	level = (m + 1).bit_length() - 1
	j = m + 1 - (1 << level)
	return chart(Fraction(2 * j + 1, 2 ** (level + 1)))


def _interpolate(x: Fraction, xs: tuple[Fraction, ...], ys: tuple[Fraction, ...]) -> Fraction:
	x0, x1, y0, y1 = (xs[0], xs[1], ys[0], ys[1]) if x <= xs[1] else (xs[1], xs[2], ys[1], ys[2])
	return y0 + (x - x0) * (y1 - y0) / (x1 - x0)


class DenseLadderMap:
	"""f = g0 left of z_0; on I_n (n >= 0) the two-piece affine map onto I_n+1 through
	(p_n, g0^(n+1)(x_0)), where p_n = f_n-1 o ... o f_0 (x_n+1)."""

	def __init__(self):
		self.g0 = MapEvaluator(build_g0())
		self.base = dense_point(0)
		self._breaks: list[Fraction] = []
		self._lock = threading.Lock()

	def breakpoint(self, n: int) -> Fraction:
		if n < len(self._breaks):
			return self._breaks[n]
		with self._lock:
			while len(self._breaks) <= n:
				k = len(self._breaks)
				point = dense_point(k + 1)
				for j in range(k):
					point = self._piece(j, point, forward=True)
				self._breaks.append(point)
		return self._breaks[n]

	def _knots(self, n: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
		xs = (z(n), self.breakpoint(n), z(n + 1))
		ys = (z(n + 1), g0_power(self.base, n + 1), z(n + 2))
		return xs, ys

	def _piece(self, n: int, x: Fraction, forward: bool) -> Fraction:
		xs, ys = self._knots(n)
		return _interpolate(x, xs, ys) if forward else _interpolate(x, ys, xs)

	def forward(self, x: Fraction) -> Fraction:
		located = ladder_index(x)
		if located is None:
			return x
		n = located[0]
		if n < 0:
			return self.g0.forward(x)
		return self._piece(n, x, forward=True)

	def backward(self, y: Fraction) -> Fraction:
		located = ladder_index(y)
		if located is None:
			return y
		n = located[0] - 1
		if n < 0:
			return self.g0.backward(y)
		return self._piece(n, y, forward=False)

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(self.forward(Fraction(x)))

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(self.backward(Fraction(y)))

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		return _ladder_points(lo, hi, resolution)

	def describe(self) -> dict[str, Any]:
		return {"kind": "dense-ladder", "constraints": [str(p) for p in self._breaks[:8]]}


class CantorLadderMap:
	"""Map of the line: x + 1 left of 0, and on [n, n + 1] (n >= 0) the split homeomorphism
	onto [n + 1, n + 2] pinning p_n to x_0 + n + 1, p_n = f_n-1 o ... o f_0 (x_n+1)."""

	def __init__(self):
		self.base = self.point(0)
		self._splits: list[SplitHomeo] = []
		self._lock = threading.Lock()

	@staticmethod
	def point(k: int) -> Fraction:
		"""x_k: the left end of the (k + 1)-th gap of C_0."""
		return left_endpoint(k + 1).value

	def split(self, n: int) -> SplitHomeo:
		if n < len(self._splits):
			return self._splits[n]
		with self._lock:
			while len(self._splits) <= n:
				k = len(self._splits)
				p = self.point(k + 1)
				for j in range(k):
					p = self._splits[j].evaluate(p, Fraction(0)).lo
				pin = (address_of(p - k), address_of(self.base))
				spec = SplitHomeoSpec(source=(k, k + 1), target=(k + 1, k + 2), pins=(pin,))
				self._splits.append(SplitHomeo(spec))
		return self._splits[n]

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		x = Fraction(x)
		n = math.floor(x)
		if n < 0:
			return Enclosure.exact(x + 1)
		return self.split(n).evaluate(x, prec)

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		y = Fraction(y)
		n = math.floor(y) - 1
		if n < 0:
			return Enclosure.exact(y - 1)
		return self.split(n).invert(y, prec)

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		return [Fraction(n) for n in range(math.ceil(lo), math.floor(hi) + 1)]

	def describe(self) -> dict[str, Any]:
		return {"kind": "cantor-ladder", "pins": [s.spec.as_dict()["pins"] for s in self._splits[:4]]}
