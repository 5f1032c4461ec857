from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from homeo_orbits.cantor.address import CantorAddress, cylinder_interval, cylinders_between
from homeo_orbits.exceptions import CantorError, ConfigError, NotALeftEndpoint, NotInImage, PinOrderMismatch, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.maps import PiecewiseMap, validated
from homeo_orbits.homeo.pieces import AffinePiece, CantorAlignedPiece
from homeo_orbits.utils.rational import format_rational

UNIT_INTERVAL = (Fraction(0), Fraction(1))
MAX_PINS = 2


@dataclass(frozen=True)
class SplitHomeoSpec:
	"""Homeomorphism between affine copies of C carried by source and target.

	Each pin sends a left endpoint (an address relative to the source copy) to a left
	endpoint of the target copy, together with the gap to its right.
	"""

	source: tuple[Fraction, Fraction] = UNIT_INTERVAL
	target: tuple[Fraction, Fraction] = UNIT_INTERVAL
	pins: tuple[tuple[CantorAddress, CantorAddress], ...] = field(default=())

	def __post_init__(self):
		for name in ("source", "target"):
			lo, hi = (Fraction(v) for v in getattr(self, name))
			if lo >= hi:
				throw(f"{name} interval [{lo}, {hi}] is empty", ConfigError)
			object.__setattr__(self, name, (lo, hi))
		pins = tuple((p, q) for p, q in self.pins)
		object.__setattr__(self, "pins", pins)

		if len(pins) > MAX_PINS:
			throw(f"at most {MAX_PINS} pins are supported, got {len(pins)}", ConfigError)
		for p, q in pins:
			for address in (p, q):
				if not address.is_left_endpoint:
					throw(f"pin {address} is not the left end of a gap", NotALeftEndpoint)
		for (p, q), (p2, q2) in zip(pins, pins[1:], strict=False):
			if not (p < p2 and q < q2):
				throw(f"pins ({p} -> {q}) and ({p2} -> {q2}) are not increasing on both sides", PinOrderMismatch)

	def as_dict(self) -> dict[str, Any]:
		return {
			"source": [format_rational(v) for v in self.source],
			"target": [format_rational(v) for v in self.target],
			"pins": [[str(p), str(q)] for p, q in self.pins],
		}


def _parts(gap_words: list[str]) -> list[list[str]]:
	"""Cylinder covers of the pieces of C cut out by the given gaps, left to right."""
	lowers = ["", *(word + "2" for word in gap_words)]
	uppers = [*(word + "0" for word in gap_words), ""]
	return [cylinders_between(lower, upper) for lower, upper in zip(lowers, uppers, strict=True)]


def _balance(words: list[str], count: int) -> list[str]:
	"""Split the last cylinder u into u0, u20, u220, ... until there are count cylinders."""
	missing = count - len(words)
	if missing <= 0:
		return words
	last = words[-1]
	return [*words[:-1], *(last + "2" * i + "0" for i in range(missing)), last + "2" * missing]


def match_cylinders(pins) -> list[tuple[str, str]]:
	"""Pairs (source cylinder, target cylinder) matched in order inside each cut-out part."""
	source = _parts([p.prefix[:-1] for p, _ in pins])
	target = _parts([q.prefix[:-1] for _, q in pins])
	pairs: list[tuple[str, str]] = []
	for left, right in zip(source, target, strict=True):
		left, right = _balance(left, len(right)), _balance(right, len(left))
		pairs.extend(zip(left, right, strict=True))
	return pairs


def _interpolate(u: Fraction, xs: list[Fraction], ys: list[Fraction]) -> Fraction:
	i = min(max(bisect_right(xs, u) - 1, 0), len(xs) - 2)
	x0, x1, y0, y1 = xs[i], xs[i + 1], ys[i], ys[i + 1]
	if u == x0:
		return y0
	return y0 + (u - x0) * (y1 - y0) / (x1 - x0)


class SplitHomeo:
	"""Exact evaluator of the homeomorphism described by a SplitHomeoSpec.

	Matched cylinders are mapped onto each other by the similarity of C, and the gap between
	two consecutive cylinders onto the gap between their partners, so the map is piecewise
	affine with knots at the cylinder ends.
	"""

	def __init__(self, spec: SplitHomeoSpec):
		self.spec = spec
		self.pairs = tuple(match_cylinders(spec.pins))
		self._xs: list[Fraction] = []
		self._ys: list[Fraction] = []
		for source, target in self.pairs:
			self._xs.extend(cylinder_interval(source))
			self._ys.extend(cylinder_interval(target))
		self._source_starts = self._xs[::2]
		self._target_starts = self._ys[::2]

	def forward(self, u: Fraction) -> Fraction:
		"""Image of u in [0, 1], in normalized coordinates."""
		return _interpolate(Fraction(u), self._xs, self._ys)

	def backward(self, v: Fraction) -> Fraction:
		return _interpolate(Fraction(v), self._ys, self._xs)

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		(s0, s1), (t0, t1) = self.spec.source, self.spec.target
		u = (Fraction(x) - s0) / (s1 - s0)
		return Enclosure.exact(t0 + (t1 - t0) * self.forward(u))

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		(s0, s1), (t0, t1) = self.spec.source, self.spec.target
		v = (Fraction(y) - t0) / (t1 - t0)
		if not 0 <= v <= 1:
			throw(f"{format_rational(y)} is outside the target [{t0}, {t1}]", NotInImage)
		return Enclosure.exact(s0 + (s1 - s0) * self.backward(v))

	def rewrite(self, address: CantorAddress) -> CantorAddress:
		"""Position of the image of a point of C, by replacing its cylinder prefix."""
		return _swap_prefix(address, self._source_starts, self.pairs, 0)

	def unwrite(self, address: CantorAddress) -> CantorAddress:
		return _swap_prefix(address, self._target_starts, self.pairs, 1)

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		s0, s1 = self.spec.source
		points = (s0 + (s1 - s0) * u for u in self._xs)
		return [x for x in points if lo <= x <= hi]

	def affine_pieces(self) -> list[AffinePiece]:
		(s0, s1), (t0, t1) = self.spec.source, self.spec.target
		xs = [s0 + (s1 - s0) * u for u in self._xs]
		ys = [t0 + (t1 - t0) * v for v in self._ys]
		pieces = []
		for x0, x1, y0, y1 in zip(xs, xs[1:], ys, ys[1:], strict=False):
			slope = (y1 - y0) / (x1 - x0)
			pieces.append(AffinePiece(x0, x1, slope, y0 - slope * x0))
		return pieces

	def describe(self) -> dict[str, Any]:
		return {"kind": "cantor-split", **self.spec.as_dict(), "cylinders": len(self.pairs)}


def _swap_prefix(address: CantorAddress, starts: list[Fraction], pairs, side: int) -> CantorAddress:
	index = max(bisect_right(starts, address.value) - 1, 0)
	old, new = pairs[index][side], pairs[index][1 - side]
	if not address.starts_with(old):
		throw(f"{address} is not a point of the Cantor set", CantorError)
	return address.drop(len(old)).prepend(new)


def build_split_homeo(spec: SplitHomeoSpec, name: str = "split") -> PiecewiseMap:
	"""Cantor-aligned map for spec; a validated automorphism when source and target are [0, 1]."""
	piece = CantorAlignedPiece(spec.source[0], spec.source[1], SplitHomeo(spec))
	if spec.source == spec.target == UNIT_INTERVAL:
		return validated(PiecewiseMap(name, (piece,)))
	return PiecewiseMap(name, (piece,), DomainKind.LINE, core=spec.source)
