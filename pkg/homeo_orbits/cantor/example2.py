"""The two-generator group of Cantor type: g and f preserving the middle-thirds set C.

The unit interval is cut into blocks K_n = g^n(K_0) with K_0 = [2/9, 1/3] and the gaps J_n
between K_n and K_{n+1}. K_0 itself splits as K0A, J*, K0B. A point of C in K_n is described
by its position, the address of its affine preimage in C.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from homeo_orbits.cantor.address import (
	CantorAddress,
	GapId,
	InC,
	cylinder_interval,
	first_left_endpoint_in,
	membership,
)
from homeo_orbits.cantor.constants import J0, JSTAR, K0, K0A, K0B, Region
from homeo_orbits.cantor.ranking import QuadIndex, quad_rank, quad_unrank
from homeo_orbits.cantor.split import SplitHomeo, SplitHomeoSpec
from homeo_orbits.cantor.utils import create_cantor_log
from homeo_orbits.exceptions import CantorError, ConfigError, OutOfUnitInterval, TerminalEdgeInput, WordSyntaxError, throw
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.maps import PiecewiseMap, validated
from homeo_orbits.homeo.pieces import AffinePiece, LazyPiece
from homeo_orbits.homeo.words import MapWord
from homeo_orbits.utils.rational import format_rational

Interval = tuple[Fraction, Fraction]


def block(n: int) -> Interval:
	"""K_n = g^n(K_0)."""
	if n == 0:
		return K0
	if n > 0:
		lo = 1 - Fraction(1, 3**n)
		return lo, lo + Fraction(1, 3 ** (n + 1))
	scale = Fraction(1, 3**-n)
	return K0[0] * scale, K0[1] * scale


def gap(n: int) -> Interval:
	"""J_n, the open interval between K_n and K_{n+1}."""
	return block(n)[1], block(n + 1)[0]


def _at(interval: Interval, t: Fraction) -> Fraction:
	lo, hi = interval
	return lo + (hi - lo) * t


def _local(interval: Interval, x: Fraction) -> Fraction:
	lo, hi = interval
	return (x - lo) / (hi - lo)


@dataclass(frozen=True)
class KnPoint:
	"""Point of C in block K_n with the given position."""

	n: int
	position: CantorAddress

	def value(self) -> Fraction:
		return _at(block(self.n), self.position.value)

	@property
	def is_left_edge(self) -> bool:
		return self.position.value == 0

	@property
	def is_right_edge(self) -> bool:
		return self.position.value == 1

	def __str__(self) -> str:
		return f"(K_{self.n}, {self.position})"


@dataclass(frozen=True)
class KnCoordinate:
	region: Region
	# block or gap index for K and J regions
	n: int | None
	local: Fraction
	# address of local when the point lies on C
	position: CantorAddress | None = None

	def point(self) -> KnPoint | None:
		if self.position is None:
			return None
		if self.region is Region.K:
			return KnPoint(self.n, self.position)
		if self.region is Region.K0A:
			return KnPoint(0, self.position.prepend("0"))
		if self.region is Region.K0B:
			return KnPoint(0, self.position.prepend("2"))
		return None

	def as_dict(self) -> dict[str, Any]:
		return {
			"region": self.region.value,
			"n": self.n,
			"local": format_rational(self.local),
			"position": None if self.position is None else str(self.position),
		}


def _in_block(region: Region, n: int | None, interval: Interval, x: Fraction) -> KnCoordinate:
	local = _local(interval, x)
	found = membership(local)
	return KnCoordinate(region, n, local, found.address if isinstance(found, InC) else None)


def kn_locate(x: Fraction | int) -> KnCoordinate:
	"""Region of (0, 1) containing x, found by exact endpoint arithmetic."""
	x = Fraction(x)
	if not 0 < x < 1:
		throw(f"{format_rational(x)} is not inside (0, 1)", OutOfUnitInterval)

	if x < K0[0]:
		n = -1
		while x < block(n)[0]:
			n -= 1
		if x <= block(n)[1]:
			return _in_block(Region.K, n, block(n), x)
		return KnCoordinate(Region.J, n, _local(gap(n), x))
	if x <= K0A[1]:
		return _in_block(Region.K0A, None, K0A, x)
	if x < K0B[0]:
		return KnCoordinate(Region.JSTAR, None, _local(JSTAR, x))
	if x <= K0B[1]:
		return _in_block(Region.K0B, None, K0B, x)
	if x < J0[1]:
		return KnCoordinate(Region.J, 0, _local(J0, x))
	n = 1
	while x > block(n)[1]:
		n += 1
	if x >= block(n)[0]:
		return _in_block(Region.K, n, block(n), x)
	return KnCoordinate(Region.J, n - 1, _local(gap(n - 1), x))


class _SplitCache:
	"""sigma_n: K_n -> K_{n+1} in position coordinates, built once per n."""

	def __init__(self):
		self._lock = threading.Lock()
		self._homeos: dict[int, SplitHomeo] = {}

	def get(self, n: int) -> SplitHomeo:
		homeo = self._homeos.get(n)
		if homeo is not None:
			return homeo
		quad = quad_unrank(n)
		homeo = SplitHomeo(SplitHomeoSpec(pins=((quad.p1, quad.p1s), (quad.p2, quad.p2s))))
		with self._lock:
			return self._homeos.setdefault(n, homeo)


_SIGMA = _SplitCache()


def sigma(n: int) -> SplitHomeo:
	if n < 1:
		throw(f"f is a split homeomorphism only on K_n for n >= 1, got {n}", ConfigError)
	return _SIGMA.get(n)


def f_value(x: Fraction) -> Fraction:
	x = Fraction(x)
	if x <= 0 or x >= 1:
		return x
	where = kn_locate(x)
	region, n, t = where.region, where.n, where.local
	if region is Region.K:
		if n == -1:
			return _at(K0A, t)
		if n < -1:
			return _at(block(n + 1), t)
		return _at(block(n + 1), sigma(n).forward(t))
	if region is Region.K0A:
		return _at(K0B, t)
	if region is Region.K0B:
		return _at(block(1), t)
	if region is Region.JSTAR:
		return _at(J0, t)
	if n == -1:
		return _at(JSTAR, t)
	return _at(gap(n + 1), t)


def f_inverse_value(y: Fraction) -> Fraction:
	y = Fraction(y)
	if y <= 0 or y >= 1:
		return y
	where = kn_locate(y)
	region, n, t = where.region, where.n, where.local
	if region is Region.K0A:
		return _at(block(-1), t)
	if region is Region.K0B:
		return _at(K0A, t)
	if region is Region.JSTAR:
		return _at(gap(-1), t)
	if region is Region.K:
		if n < 0:
			return _at(block(n - 1), t)
		if n == 1:
			return _at(K0B, t)
		return _at(block(n - 1), sigma(n - 1).backward(t))
	if n == 0:
		return _at(JSTAR, t)
	return _at(gap(n - 1), t)


class CantorExampleF:
	"""Evaluator behind the lazily materialized generator f."""

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(f_value(x))

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact(f_inverse_value(y))

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		points = {*K0A, *K0B}
		n = 1
		while Fraction(1, 3 ** (n + 1)) >= resolution:
			points.update(block(n))
			points.update(block(-n))
			n += 1
		return sorted(p for p in points if lo <= p <= hi)

	def describe(self) -> dict[str, Any]:
		return {"kind": "cantor-example-f"}


def build_g() -> PiecewiseMap:
	pieces = (
		AffinePiece(0, Fraction(2, 9), 3, 0),
		AffinePiece(Fraction(2, 9), Fraction(1, 3), 1, Fraction(4, 9)),
		AffinePiece(Fraction(1, 3), 1, Fraction(1, 3), Fraction(2, 3)),
	)
	return validated(PiecewiseMap("g", pieces))


def build_f() -> PiecewiseMap:
	return validated(PiecewiseMap("f", (LazyPiece(0, 1, CantorExampleF()),)))


def kn_point(x: "KnPoint | CantorAddress | Fraction | int") -> KnPoint:
	"""Block form of a point of C other than 0 and 1."""
	if isinstance(x, KnPoint):
		return x
	value = x.value if isinstance(x, CantorAddress) else Fraction(x)
	if value in (0, 1):
		throw(f"{format_rational(value)} is fixed by the whole group", TerminalEdgeInput)
	point = kn_locate(value).point()
	if point is None:
		throw(f"{format_rational(value)} is not a point of C", CantorError)
	return point


def _f_forward(p: KnPoint) -> KnPoint:
	n, position = p.n, p.position
	if n < -1:
		return KnPoint(n + 1, position)
	if n == -1:
		return KnPoint(0, position.prepend("0"))
	if n == 0:
		if position.starts_with("0"):
			return KnPoint(0, position.drop(1).prepend("2"))
		return KnPoint(1, position.drop(1))
	return KnPoint(n + 1, sigma(n).rewrite(position))


def _f_backward(p: KnPoint) -> KnPoint:
	n, position = p.n, p.position
	if n < 0:
		return KnPoint(n - 1, position)
	if n == 0:
		if position.starts_with("0"):
			return KnPoint(-1, position.drop(1))
		return KnPoint(0, position.drop(1).prepend("0"))
	if n == 1:
		return KnPoint(0, position.prepend("2"))
	return KnPoint(n - 1, sigma(n - 1).unwrite(position))


def eval_kn_word(word: MapWord, x: "KnPoint | CantorAddress | Fraction | int") -> KnPoint:
	"""Apply a word in g and f to a point of C symbolically.

	g^k only shifts the block index, so syllables of any length cost nothing.
	"""
	point = kn_point(x)
	for name, power in word.syllables:
		if name == "g":
			point = KnPoint(point.n + power, point.position)
		elif name == "f":
			step = _f_forward if power > 0 else _f_backward
			for _ in range(abs(power)):
				point = step(point)
		else:
			throw(f"unknown generator {name!r} in {word}", WordSyntaxError)
	return point


@dataclass(frozen=True)
class DensityWitness:
	word: MapWord
	h1: MapWord
	h2: MapWord
	rank: int | None = None
	brackets: QuadIndex | None = None

	def as_dict(self) -> dict[str, Any]:
		return {
			"word": self.word.to_text(),
			"h1": self.h1.to_text(),
			"h2": self.h2.to_text(),
			"rank": self.rank,
			"brackets": None if self.brackets is None else self.brackets.as_dict(),
		}


def _value(x: "KnPoint | CantorAddress | Fraction | int") -> Fraction:
	if isinstance(x, KnPoint):
		return x.value()
	if isinstance(x, CantorAddress):
		return x.value
	return Fraction(x)


def density_witness(x, y, eps: Fraction) -> DensityWitness:
	"""A word h in g and f with |h(x) - y| < eps, for x, y in C and x not 0 or 1.

	h = h1 then h2: h1 moves x to an interior position q of K_1, and h2 = g^(r-1) f g^(m-r-1)
	uses the block K_r on which f sends left endpoints bracketing q onto left endpoints
	bracketing the position of y in K_m within eps.
	"""
	eps = Fraction(eps)
	if eps <= 0:
		throw(f"eps must be positive, got {eps}", ConfigError)
	start = kn_point(x)
	target = _value(y)
	if target in (0, 1):
		word = _terminal_word(start, target, eps)
		return DensityWitness(word, word, MapWord())
	end = kn_point(y)

	h1 = _h1(start)
	q = eval_kn_word(h1, start).position.value
	brackets = QuadIndex(
		first_left_endpoint_in(0, q), first_left_endpoint_in(q, 1), *_y_brackets(end, eps)
	)
	r = quad_rank(brackets)
	h2 = MapWord((("g", r - 1), ("f", 1), ("g", end.n - r - 1)))
	witness = DensityWitness(h1 + h2, h1, h2, r, brackets)
	create_cantor_log(
		status="Success",
		method="density_witness",
		request_data={"x": str(start), "y": str(end), "eps": eps},
		response_data=witness.as_dict(),
	)
	return witness


def _h1(x: KnPoint) -> MapWord:
	if x.is_right_edge:
		return MapWord((("g", -x.n), ("f", -1), ("g", 1)))
	if x.is_left_edge:
		return MapWord((("g", -x.n), ("f", 1), ("g", 1)))
	return MapWord.letter("g", 1 - x.n)


def _terminal_word(x: KnPoint, target: Fraction, eps: Fraction) -> MapWord:
	# 1 - g^N(x) <= 3^-(n+N) once n + N >= 1; g^-N(x) <= 3^-(N-n+1) once N - n >= 1
	k = 1
	while Fraction(1, 3**k) >= eps:
		k += 1
	if target == 1:
		return MapWord.letter("g", k - x.n)
	return MapWord.letter("g", -(x.n + k))


def _y_brackets(y: KnPoint, eps: Fraction) -> tuple[CantorAddress, CantorAddress]:
	"""Left endpoints L < R, within 3^-d of the position p of y, such that every point of C
	strictly between them lies within 3^-d of p. 3^-d is below eps over the length of K_m."""
	lo, hi = block(y.n)
	depth = 1
	while Fraction(1, 3**depth) >= eps / (hi - lo):
		depth += 1
	p = y.position
	width = Fraction(1, 3**depth)

	if y.is_right_edge:
		left = first_left_endpoint_in(1 - width, 1)
		return left, first_left_endpoint_in(left.value, 1)
	if y.is_left_edge:
		return first_left_endpoint_in(0, width), CantorAddress("0" * depth, "2")

	stem = p.digits(depth)
	start, end = cylinder_interval(stem)
	if p.value > start:
		left = first_left_endpoint_in(start, p.value)
	else:
		# p = w2(0) closes the gap of w; C has no points inside that gap
		left = GapId(p.prefix[:-1]).left_endpoint()
	closing = CantorAddress(stem, "2")
	if p.value == end:
		right = p
	elif closing.is_left_endpoint:
		right = closing
	else:
		right = first_left_endpoint_in(p.value, 1)
	return left, right


def verify_density_witness(word: MapWord, x, y, eps: Fraction) -> bool:
	"""Check |h(x) - y| < eps by symbolic evaluation of h."""
	image = eval_kn_word(word, x)
	return abs(image.value() - _value(y)) < Fraction(eps)
