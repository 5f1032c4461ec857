import re
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering

from homeo_orbits.cantor.constants import DEFAULT_DEPTH, DIGITS, MAX_EXPANSION_DIGITS, Tail
from homeo_orbits.exceptions import CantorError, ConfigError, NotALeftEndpoint, OutOfUnitInterval, throw
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.utils.rational import format_rational

ADDRESS_PATTERN = re.compile(r"^([02]*)(?:\(([02]*)\))?$")


@total_ordering
@dataclass(frozen=True)
class CantorAddress:
	"""Ternary address over {0, 2}: ``prefix`` followed by ``period`` repeated forever.

	Always canonical: the period is primitive and rotated so that the prefix is as short as
	possible: "02(0)" is stored as prefix "02" with an all-zeros tail and "0(20)" as "(02)".
	Order is the order of the denoted reals.
	"""

	prefix: str = ""
	period: str = "0"

	def __post_init__(self):
		prefix, period = str(self.prefix), str(self.period) or "0"
		if not set(prefix + period) <= DIGITS:
			throw(f"address digits must be 0 or 2, got {prefix!r} and period {period!r}", ConfigError)
		period = _primitive(period)
		while prefix and prefix[-1] == period[-1]:
			prefix = prefix[:-1]
			period = period[-1] + period[:-1]
		object.__setattr__(self, "prefix", prefix)
		object.__setattr__(self, "period", period)

	@classmethod
	def parse(cls, text: str) -> "CantorAddress":
		match = ADDRESS_PATTERN.match(text.strip())
		if not match:
			throw(f"cannot parse Cantor address {text!r}", ConfigError)
		prefix, period = match.groups()
		return cls(prefix, period or "0")

	def __str__(self) -> str:
		if self.period == "0":
			return self.prefix
		return f"{self.prefix}({self.period})"

	def __lt__(self, other: "CantorAddress") -> bool:
		return self.value < other.value

	@property
	def tail(self) -> Tail:
		if self.period == "0":
			return Tail.ALL_ZEROS
		if self.period == "2":
			return Tail.ALL_TWOS
		return Tail.PERIODIC

	@cached_property
	def value(self) -> Fraction:
		cycle = Fraction(int(self.period, 3), 3 ** len(self.period) - 1)
		return word_value(self.prefix) + cycle / 3 ** len(self.prefix)

	@property
	def is_left_endpoint(self) -> bool:
		"""Left end of a removed gap (the points of P^L)."""
		return self.period == "2" and self.prefix.endswith("0")

	@property
	def is_right_endpoint(self) -> bool:
		return self.period == "0" and self.prefix.endswith("2")

	def digits(self, n: int) -> str:
		if n <= len(self.prefix):
			return self.prefix[:n]
		missing = n - len(self.prefix)
		repeats = -(-missing // len(self.period))
		return self.prefix + (self.period * repeats)[:missing]

	def iter_digits(self) -> Iterator[str]:
		yield from self.prefix
		while True:
			yield from self.period

	def drop(self, n: int) -> "CantorAddress":
		"""Address of the point after removing the first n digits (the shift map n times)."""
		if n <= len(self.prefix):
			return CantorAddress(self.prefix[n:], self.period)
		k = (n - len(self.prefix)) % len(self.period)
		return CantorAddress("", self.period[k:] + self.period[:k])

	def prepend(self, word: str) -> "CantorAddress":
		return CantorAddress(word + self.prefix, self.period)

	def starts_with(self, word: str) -> bool:
		return self.digits(len(word)) == word


def _primitive(period: str) -> str:
	n = len(period)
	for d in range(1, n + 1):
		if n % d == 0 and period[:d] * (n // d) == period:
			return period[:d]
	return period


def word_value(word: str) -> Fraction:
	return Fraction(int(word or "0", 3), 3 ** len(word))


def cylinder_interval(word: str) -> tuple[Fraction, Fraction]:
	"""Convex hull of the points of C whose address starts with word."""
	base = word_value(word)
	return base, base + Fraction(1, 3 ** len(word))


def parse_address(text: str) -> CantorAddress:
	return CantorAddress.parse(text)


def format_address(address: CantorAddress) -> str:
	return str(address)


def value(address: CantorAddress) -> Fraction:
	return address.value


@dataclass(frozen=True)
class GapId:
	"""Removed open interval (word·0(2), word·2) of generation len(word) + 1."""

	word: str = ""

	def __post_init__(self):
		if not set(self.word) <= DIGITS:
			throw(f"gap words use digits 0 and 2, got {self.word!r}", ConfigError)

	@property
	def generation(self) -> int:
		return len(self.word) + 1

	def interval(self) -> tuple[Fraction, Fraction]:
		base = word_value(self.word)
		step = Fraction(1, 3 ** (len(self.word) + 1))
		return base + step, base + 2 * step

	def left_endpoint(self) -> CantorAddress:
		return CantorAddress(self.word + "0", "2")

	def right_endpoint(self) -> CantorAddress:
		return CantorAddress(self.word + "2", "0")

	def __str__(self) -> str:
		return f"gap[{self.word}]"


@dataclass(frozen=True)
class InC:
	address: CantorAddress


@dataclass(frozen=True)
class InGap:
	gap: GapId
	# affine coordinate in (0, 1) across the gap
	local: Fraction


@dataclass(frozen=True)
class Undetermined:
	# leading digits read so far, all in {0, 2}
	digits: str = ""


Membership = InC | InGap | Undetermined


def membership(x: Fraction | int | Enclosure, depth: int = DEFAULT_DEPTH) -> Membership:
	"""Decide whether x lies in the middle-thirds Cantor set C.

	Rationals are decided exactly from their eventually periodic ternary expansion; an
	enclosure is decided only when it is exact or sits inside a single gap, and is
	Undetermined when wider than 3^-depth.
	"""
	if isinstance(x, Enclosure):
		if x.is_exact:
			return membership(x.lo, depth)
		if x.width() > Fraction(1, 3**depth):
			return Undetermined()
		low, high = membership(x.lo, depth), membership(x.hi, depth)
		if isinstance(low, InGap) and isinstance(high, InGap) and low.gap == high.gap:
			return InGap(low.gap, (low.local + high.local) / 2)
		return Undetermined()
	return _expand(Fraction(x))


def _expand(x: Fraction) -> Membership:
	if x < 0 or x > 1:
		throw(f"{format_rational(x)} is outside [0, 1]", OutOfUnitInterval)
	if x == 1:
		return InC(CantorAddress("", "2"))

	p, q = x.numerator, x.denominator
	digits: list[str] = []
	seen: dict[int, int] = {}
	while len(digits) < MAX_EXPANSION_DIGITS:
		if p in seen:
			start = seen[p]
			return InC(CantorAddress("".join(digits[:start]), "".join(digits[start:])))
		seen[p] = len(digits)
		d, p = divmod(3 * p, q)
		if d == 1:
			word = "".join(digits)
			if p == 0:
				# w1 = w0222...
				return InC(CantorAddress(word + "0", "2"))
			return InGap(GapId(word), Fraction(p, q))
		digits.append(str(d))
	return Undetermined("".join(digits))


def address_of(x: Fraction | int) -> CantorAddress:
	"""Address of a rational point of C; raises CantorError subclasses otherwise."""
	result = membership(Fraction(x))
	if not isinstance(result, InC):
		throw(f"{format_rational(Fraction(x))} is not a point of C", CantorError)
	return result.address


def cantor_distance(x: Fraction | int | Enclosure) -> Fraction:
	"""Distance from a point or an enclosure to C.

	Exact except for rationals whose expansion does not settle, where the bound 3^-k for the
	k digits read is returned.
	"""
	lo, hi = (x.lo, x.hi) if isinstance(x, Enclosure) else (Fraction(x), Fraction(x))
	low = _expand(lo)
	high = low if hi == lo else _expand(hi)
	if isinstance(low, InGap) and isinstance(high, InGap) and low.gap == high.gap:
		a, b = low.gap.interval()
		return min(lo - a, b - hi)
	bounds = [Fraction(1, 3 ** len(m.digits)) for m in (low, high) if isinstance(m, Undetermined)]
	if bounds and not any(isinstance(m, InC) for m in (low, high)):
		return min(bounds)
	return Fraction(0)


def left_endpoint(rank: int) -> CantorAddress:
	"""rank-th point of P^L, counting gaps by generation and then from left to right."""
	if rank < 1:
		throw(f"left endpoint ranks start at 1, got {rank}", NotALeftEndpoint)
	k = rank.bit_length()
	bits = format(rank - (1 << (k - 1)), "b").zfill(k - 1) if k > 1 else ""
	word = bits.replace("1", "2")
	return GapId(word).left_endpoint()


def left_endpoint_rank(address: CantorAddress) -> int:
	if not address.is_left_endpoint:
		throw(f"{address} is not the left end of a gap", NotALeftEndpoint)
	word = address.prefix[:-1]
	return (1 << len(word)) + int(word.replace("2", "1") or "0", 2)


def endpoints(max_generation: int) -> list[CantorAddress]:
	"""0, 1 and both ends of every gap up to the given generation, in increasing order."""
	points = [CantorAddress("", "0"), CantorAddress("", "2")]
	for rank in range(1, 1 << max_generation):
		left = left_endpoint(rank)
		points.append(left)
		points.append(GapId(left.prefix[:-1]).right_endpoint())
	return sorted(points)


def cylinders_between(lower: str, upper: str) -> list[str]:
	"""Minimal left-to-right cylinder cover of the addresses a with lower·0... <= a <= upper·2...."""
	common = 0
	while common < min(len(lower), len(upper)) and lower[common] == upper[common]:
		common += 1
	stem = lower[:common]
	if common == len(lower) == len(upper):
		words = [stem]
	elif common == len(lower):
		words = _at_most(stem, upper[common:])
	elif common == len(upper):
		words = _at_least(stem, lower[common:])
	else:
		if lower[common] > upper[common]:
			throw(f"empty address interval [{lower}..., {upper}...]", ConfigError)
		words = _at_least(stem + "0", lower[common + 1 :]) + _at_most(stem + "2", upper[common + 1 :])
	return _merge_siblings(words)


def _at_most(stem: str, rest: str) -> list[str]:
	words = [stem + rest[:i] + "0" for i, digit in enumerate(rest) if digit == "2"]
	return [*words, stem + rest]


def _at_least(stem: str, rest: str) -> list[str]:
	words = [stem + rest[:i] + "2" for i in reversed(range(len(rest))) if rest[i] == "0"]
	return [stem + rest, *words]


def _merge_siblings(words: list[str]) -> list[str]:
	merged: list[str] = []
	for word in words:
		merged.append(word)
		while len(merged) >= 2 and _siblings(merged[-2], merged[-1]):
			merged[-2:] = [merged[-1][:-1]]
	return merged


def _siblings(left: str, right: str) -> bool:
	return bool(left) and left[:-1] == right[:-1] and left[-1] == "0" and right[-1] == "2"


def first_left_endpoint_in(lo: Fraction, hi: Fraction) -> CantorAddress | None:
	"""Shallowest, then leftmost, point of P^L strictly between lo and hi."""
	lo, hi = Fraction(lo), Fraction(hi)
	if lo >= hi or hi <= 0 or lo >= 1:
		return None
	layer = [""]
	while layer:
		step = Fraction(1, 3 ** (len(layer[0]) + 1))
		for word in layer:
			point = word_value(word) + step
			if lo < point < hi:
				return GapId(word).left_endpoint()
		layer = [
			child
			for word in layer
			for child in (word + "0", word + "2")
			if _meets(cylinder_interval(child), lo, hi)
		]
	return None


def _meets(interval: tuple[Fraction, Fraction], lo: Fraction, hi: Fraction) -> bool:
	a, b = interval
	return a < hi and b > lo
