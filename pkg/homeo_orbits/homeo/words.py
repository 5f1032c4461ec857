import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Protocol

from homeo_orbits.exceptions import EvaluationError, InverseOfEndomorphism, PrecisionLoss, WordSyntaxError, throw
from homeo_orbits.homeo.constants import (
	DEFAULT_PREC,
	EXACT_DENOMINATOR_BITS,
	INNER_PREC_DIVISOR,
	MAX_REFINEMENTS,
	MAX_SYLLABLE,
	REFINEMENT_FACTOR,
	TEXT_EXPAND_LIMIT,
)
from homeo_orbits.homeo.enclosure import Enclosure, grid_bits
from homeo_orbits.homeo.maps import PiecewiseMap, eval_enclosure, invert_enclosure

TOKEN_PATTERN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")

Syllable = tuple[str, int]


@dataclass(frozen=True)
class MapWord:
	"""Freely reduced word in generator names, stored as (name, power) syllables.

	Letters are listed in application order: the first syllable acts first.
	"""

	syllables: tuple[Syllable, ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "syllables", _reduce(self.syllables))

	@classmethod
	def letter(cls, name: str, power: int = 1) -> "MapWord":
		return cls(((name, power),))

	@classmethod
	def parse(cls, text: str) -> "MapWord":
		syllables = []
		for token in text.split():
			match = TOKEN_PATTERN.match(token)
			if not match:
				throw(f"cannot parse word token {token!r} in {text!r}", WordSyntaxError)
			name, power = match.groups()
			syllables.append((name, int(power) if power is not None else 1))
		return cls(tuple(syllables))

	def to_text(self) -> str:
		tokens = []
		for name, power in self.syllables:
			if abs(power) <= TEXT_EXPAND_LIMIT:
				token = name if power > 0 else f"{name}^-1"
				tokens.extend([token] * abs(power))
			else:
				tokens.append(f"{name}^{power}")
		return " ".join(tokens)

	def inverse(self) -> "MapWord":
		return MapWord(tuple((name, -power) for name, power in reversed(self.syllables)))

	def __add__(self, other: "MapWord") -> "MapWord":
		"""self then other."""
		return MapWord(self.syllables + other.syllables)

	def __len__(self) -> int:
		return sum(abs(power) for _, power in self.syllables)

	def __str__(self) -> str:
		return self.to_text()

	def letters(self) -> Iterator[Syllable]:
		for name, power in self.syllables:
			step = 1 if power > 0 else -1
			for _ in range(abs(power)):
				yield name, step

	def last_letter(self) -> Syllable | None:
		if not self.syllables:
			return None
		name, power = self.syllables[-1]
		return name, 1 if power > 0 else -1

	def uses_inverses(self) -> bool:
		return any(power < 0 for _, power in self.syllables)


def _reduce(syllables) -> tuple[Syllable, ...]:
	stack: list[Syllable] = []
	for name, power in syllables:
		power = int(power)
		if stack and stack[-1][0] == name:
			power += stack.pop()[1]
		if power:
			stack.append((name, power))
	return tuple(stack)


class WordContext(Protocol):
	maps: Mapping[str, PiecewiseMap]
	invertible: bool


@dataclass(frozen=True)
class MapSet:
	"""Named maps without the rest of a generator system."""

	maps: Mapping[str, PiecewiseMap] = field(default_factory=dict)
	invertible: bool = True


def settle(value: Enclosure, prec: Fraction) -> Enclosure:
	"""Keep small exact values, round everything else outward onto the working grid."""
	if value.is_exact and value.lo.denominator.bit_length() <= EXACT_DENOMINATOR_BITS:
		return value
	return value.rounded(grid_bits(prec) + 2)


def apply_letter(
	system: WordContext, name: str, sign: int, value: Enclosure, prec: Fraction = DEFAULT_PREC
) -> Enclosure:
	m = system.maps[name]
	if sign > 0:
		return settle(eval_enclosure(m, value, prec), prec)
	if not system.invertible or m.surjective is False:
		throw(f"{name} has no inverse in this system", InverseOfEndomorphism)
	return settle(invert_enclosure(m, value, prec), prec)


def _apply_word(system: WordContext, word: MapWord, value: Enclosure, prec: Fraction) -> Enclosure:
	index = 0
	for name, power in word.syllables:
		if name not in system.maps:
			throw(f"unknown generator {name!r} in word {word}", WordSyntaxError)
		if abs(power) > MAX_SYLLABLE:
			throw(f"syllable {name}^{power} is too long to evaluate letter by letter", EvaluationError)
		sign = 1 if power > 0 else -1
		for _ in range(abs(power)):
			index += 1
			try:
				value = apply_letter(system, name, sign, value, prec)
			except EvaluationError as e:
				throw(f"{e.message} (letter {index} of {word})", type(e))
	return value


def eval_word(
	system: WordContext, word: MapWord, x: Fraction | int | Enclosure, prec: Fraction = DEFAULT_PREC
) -> Enclosure:
	"""Enclose the image of x under word, refining the inner precision until the width fits prec."""
	start = x if isinstance(x, Enclosure) else Enclosure.exact(Fraction(x))
	inner = Fraction(prec) / INNER_PREC_DIVISOR
	for _ in range(MAX_REFINEMENTS + 1):
		value = _apply_word(system, word, start, inner)
		if value.width() <= prec:
			return value
		inner /= REFINEMENT_FACTOR
	throw(f"could not reach width {float(prec):.3g} for {word}; got {float(value.width()):.3g}", PrecisionLoss)
