import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from homeo_orbits.exceptions import EvaluationError, throw

Number = Fraction | int


@dataclass(frozen=True)
class Enclosure:
	"""Closed rational interval [lo, hi] known to contain a real value."""

	lo: Fraction
	hi: Fraction

	def __post_init__(self):
		object.__setattr__(self, "lo", Fraction(self.lo))
		object.__setattr__(self, "hi", Fraction(self.hi))
		if self.lo > self.hi:
			throw(f"empty enclosure [{self.lo}, {self.hi}]", EvaluationError)

	@classmethod
	def exact(cls, x: Number) -> "Enclosure":
		return cls(x, x)

	@classmethod
	def hull(cls, *items: "Enclosure | Number") -> "Enclosure":
		los, his = [], []
		for item in items:
			if isinstance(item, Enclosure):
				los.append(item.lo)
				his.append(item.hi)
			else:
				los.append(Fraction(item))
				his.append(Fraction(item))
		return cls(min(los), max(his))

	@property
	def is_exact(self) -> bool:
		return self.lo == self.hi

	def width(self) -> Fraction:
		return self.hi - self.lo

	def mid(self) -> Fraction:
		return (self.lo + self.hi) / 2

	def contains(self, item: "Enclosure | Number") -> bool:
		if isinstance(item, Enclosure):
			return self.lo <= item.lo and item.hi <= self.hi
		return self.lo <= item <= self.hi

	def overlaps(self, other: "Enclosure") -> bool:
		return self.lo <= other.hi and other.lo <= self.hi

	def distance(self, other: "Enclosure | Number") -> Fraction:
		if not isinstance(other, Enclosure):
			other = Enclosure.exact(other)
		if self.overlaps(other):
			return Fraction(0)
		return other.lo - self.hi if self.hi < other.lo else self.lo - other.hi

	def intersect(self, other: "Enclosure") -> "Enclosure | None":
		lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
		if lo > hi:
			return None
		return Enclosure(lo, hi)

	def shift(self, k: Number) -> "Enclosure":
		return Enclosure(self.lo + k, self.hi + k)

	def affine(self, slope: Fraction, offset: Fraction) -> "Enclosure":
		"""Image under x -> slope*x + offset for slope > 0."""
		return Enclosure(slope * self.lo + offset, slope * self.hi + offset)

	def rounded(self, bits: int) -> "Enclosure":
		"""Round outward onto the dyadic grid of spacing 2^-bits."""
		scale = 1 << bits
		lo = Fraction(math.floor(self.lo * scale), scale)
		hi = Fraction(math.ceil(self.hi * scale), scale)
		return Enclosure(lo, hi)

	def __str__(self) -> str:
		if self.is_exact:
			return f"[{self.lo}]"
		return f"[{float(self.lo):.15g}, {float(self.hi):.15g}]"


def grid_bits(prec: Fraction) -> int:
	"""Smallest bit count with 2^-bits < prec."""
	return max(0, math.ceil(1 / Fraction(prec)).bit_length())


def root_enclosure(v: Fraction, q: int, prec: Fraction) -> Enclosure:
	"""Enclose v^(1/q) for rational v >= 0 with width below prec.

	Exact when numerator and denominator are perfect q-th powers, otherwise the floor of the
	integer root on a 2^-bits grid and its successor bracket the true value.
	"""
	v = Fraction(v)
	if v < 0:
		throw(f"root of negative value {v}", EvaluationError)
	if q == 1 or v == 0:
		return Enclosure.exact(v)

	num_root, num_exact = gmpy2.iroot(mpz(v.numerator), q)
	den_root, den_exact = gmpy2.iroot(mpz(v.denominator), q)
	if num_exact and den_exact:
		return Enclosure.exact(Fraction(int(num_root), int(den_root)))

	bits = grid_bits(prec)
	scaled = mpz((v.numerator << (bits * q)) // v.denominator)
	m = int(gmpy2.iroot(scaled, q)[0])
	return Enclosure(Fraction(m, 1 << bits), Fraction(m + 1, 1 << bits))


def power_enclosure(t: Fraction, e: Fraction, prec: Fraction, scale: Fraction = Fraction(1)) -> Enclosure:
	"""Enclose scale * t^e for t >= 0, e = p/q > 0, with width below prec."""
	e = Fraction(e)
	raised = Fraction(t) ** e.numerator
	inner = root_enclosure(raised, e.denominator, prec / scale)
	return inner.affine(scale, Fraction(0))
