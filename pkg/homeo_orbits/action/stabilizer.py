from collections.abc import Iterator
from fractions import Fraction

from homeo_orbits.action.constants import DEFAULT_DEDUP_TOL, DEFAULT_EVAL_PREC
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.action.utils import create_action_log
from homeo_orbits.exceptions import ConfigError, EvaluationError, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.words import MapWord, eval_word


def reduced_words(system: GeneratorSystem, max_len: int) -> Iterator[MapWord]:
	"""Freely reduced words of length <= max_len, shortest first, in letter order."""
	yield MapWord()
	layer = [MapWord()]
	for _ in range(max_len):
		next_layer = []
		for word in layer:
			for name, sign in system.letters():
				if word.last_letter() == (name, -sign):
					continue
				longer = word + MapWord.letter(name, sign)
				next_layer.append(longer)
				yield longer
		layer = next_layer


def circle_distance(value: Enclosure, target: Fraction) -> Fraction:
	d = (value.mid() - target) % 1
	return max(min(d, 1 - d) - value.width() / 2, Fraction(0))


def lands_on(system: GeneratorSystem, value: Enclosure, target: Fraction, tol: Fraction) -> bool:
	if system.domain_kind is DomainKind.CIRCLE:
		return circle_distance(value, target) <= tol
	return value.distance(target) <= tol


def lands_inside(system: GeneratorSystem, value: Enclosure, a: Fraction, b: Fraction) -> bool:
	y = value.mid()
	if system.domain_kind is DomainKind.CIRCLE:
		y = a + (y - a) % 1
	return a < y < b


def stabilizes(
	system: GeneratorSystem,
	word: MapWord,
	a: Fraction,
	b: Fraction,
	tol: Fraction = DEFAULT_DEDUP_TOL,
	prec: Fraction = DEFAULT_EVAL_PREC,
) -> bool:
	"""word fixes a and b within tol and keeps the midpoint between them."""
	try:
		at_a = eval_word(system, word, a, prec)
		at_b = eval_word(system, word, b, prec)
		middle = eval_word(system, word, (a + b) / 2, prec)
	except EvaluationError:
		return False
	return (
		lands_on(system, at_a, a, tol)
		and lands_on(system, at_b, b, tol)
		and lands_inside(system, middle, a, b)
	)


def stabilizer_words(
	system: GeneratorSystem,
	interval: tuple[Fraction, Fraction],
	budget: int = 3,
	tol: Fraction = DEFAULT_DEDUP_TOL,
	prec: Fraction = DEFAULT_EVAL_PREC,
) -> list[MapWord]:
	"""Words of length <= budget mapping [a, b] onto itself; candidates for its stabilizer."""
	a, b = Fraction(interval[0]), Fraction(interval[1])
	if a >= b:
		throw(f"empty interval [{a}, {b}]", ConfigError)
	found = [word for word in reduced_words(system, budget) if stabilizes(system, word, a, b, tol, prec)]
	create_action_log(
		status="Success",
		method="stabilizer_words",
		request_data={"system": system.name, "interval": [a, b], "budget": budget},
		response_data={"words": [word.to_text() for word in found]},
	)
	return found
