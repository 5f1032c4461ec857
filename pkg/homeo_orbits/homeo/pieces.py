from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Protocol, runtime_checkable

from homeo_orbits.exceptions import NotInImage, OutOfDomain, throw
from homeo_orbits.homeo.constants import VALIDATION_PREC
from homeo_orbits.homeo.enclosure import Enclosure, power_enclosure
from homeo_orbits.utils.rational import format_rational


@runtime_checkable
class Evaluator(Protocol):
	"""Lazily materialized monotone map used behind a LazyPiece."""

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure: ...

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure: ...

	def describe(self) -> dict[str, Any]: ...


class Piece(ABC):
	lo: Fraction | None
	hi: Fraction | None
	kind: str = ""

	@abstractmethod
	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		...

	@abstractmethod
	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		...

	@abstractmethod
	def is_monotone(self) -> bool:
		...

	@abstractmethod
	def describe(self) -> dict[str, Any]:
		...

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		return []

	def covers(self, x: Fraction) -> bool:
		return (self.lo is None or self.lo <= x) and (self.hi is None or x <= self.hi)

	def bounds(self) -> dict[str, str | None]:
		return {
			"lo": None if self.lo is None else format_rational(self.lo),
			"hi": None if self.hi is None else format_rational(self.hi),
		}

	@cached_property
	def image(self) -> tuple[Enclosure | None, Enclosure | None]:
		"""Enclosures of the values at both ends; None for an unbounded end."""
		lo = None if self.lo is None else self.evaluate(self.lo, VALIDATION_PREC)
		hi = None if self.hi is None else self.evaluate(self.hi, VALIDATION_PREC)
		return lo, hi

	def may_reach(self, y: Fraction) -> bool:
		lo, hi = self.image
		return (lo is None or lo.lo <= y) and (hi is None or y <= hi.hi)

	def _normalize(self, *names: str):
		for name in names:
			value = getattr(self, name)
			if value is not None:
				object.__setattr__(self, name, Fraction(value))

	def _check_domain(self, x: Fraction):
		if not self.covers(x):
			throw(f"{format_rational(x)} outside piece [{self.lo}, {self.hi}]", OutOfDomain)


@dataclass(frozen=True, eq=False)
class AffinePiece(Piece):
	lo: Fraction | None
	hi: Fraction | None
	slope: Fraction
	offset: Fraction
	kind = "affine"

	def __post_init__(self):
		self._normalize("lo", "hi", "slope", "offset")

	def at(self, x: Fraction) -> Fraction:
		return self.slope * x + self.offset

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		self._check_domain(x)
		return Enclosure.exact(self.at(x))

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		return Enclosure.exact((y - self.offset) / self.slope)

	def is_monotone(self) -> bool:
		return self.slope > 0

	def describe(self) -> dict[str, Any]:
		return {
			**self.bounds(),
			"kind": self.kind,
			"slope": format_rational(self.slope),
			"offset": format_rational(self.offset),
		}


@dataclass(frozen=True, eq=False)
class PowerPiece(Piece):
	"""x -> c * ((x - a) / s)^e + b."""

	lo: Fraction | None
	hi: Fraction | None
	c: Fraction
	a: Fraction
	b: Fraction
	e: Fraction
	s: Fraction = Fraction(1)
	kind = "power"

	def __post_init__(self):
		self._normalize("lo", "hi", "c", "a", "b", "e", "s")

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		self._check_domain(x)
		t = (x - self.a) / self.s
		if t < 0:
			throw(f"{format_rational(x)} below power base {self.a}", OutOfDomain)
		return power_enclosure(t, self.e, prec, self.c).shift(self.b)

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		t = (y - self.b) / self.c
		if t < 0:
			throw(f"{format_rational(y)} below the image of the power piece", NotInImage)
		return power_enclosure(t, 1 / self.e, prec, self.s).shift(self.a)

	def inverse(self) -> "PowerPiece":
		lo, hi = self.image
		return PowerPiece(lo.lo, hi.hi, c=self.s, a=self.b, b=self.a, e=1 / self.e, s=self.c)

	def is_monotone(self) -> bool:
		if self.c <= 0 or self.e <= 0 or self.s <= 0:
			return False
		return self.lo is not None and self.lo >= self.a

	def convexity(self) -> int:
		"""+1 if convex, -1 if concave, 0 if affine."""
		if self.e > 1:
			return 1
		return -1 if self.e < 1 else 0

	def describe(self) -> dict[str, Any]:
		data = {**self.bounds(), "kind": self.kind}
		for name in ("c", "a", "b", "e", "s"):
			data[name] = format_rational(getattr(self, name))
		return data


@dataclass(frozen=True, eq=False)
class LazyPiece(Piece):
	lo: Fraction | None
	hi: Fraction | None
	evaluator: Evaluator
	kind = "lazy"

	def __post_init__(self):
		self._normalize("lo", "hi")

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		self._check_domain(x)
		return self.evaluator.evaluate(x, prec)

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		return self.evaluator.invert(y, prec)

	def is_monotone(self) -> bool:
		return True

	def landmarks(self, lo: Fraction, hi: Fraction, resolution: Fraction) -> list[Fraction]:
		finder = getattr(self.evaluator, "landmarks", None)
		return list(finder(lo, hi, resolution)) if finder else []

	def describe(self) -> dict[str, Any]:
		return {**self.bounds(), **self.evaluator.describe()}


class CantorAlignedPiece(LazyPiece):
	"""Lazy piece whose evaluator is a Cantor-set preserving split homeomorphism."""

	kind = "cantor-split"
