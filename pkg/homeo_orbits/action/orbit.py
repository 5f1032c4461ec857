from bisect import bisect_left, bisect_right, insort
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from homeo_orbits.action.constants import (
	DEFAULT_DEDUP_TOL,
	DEFAULT_EVAL_PREC,
	DEFAULT_MAX_POINTS,
	DEFAULT_MAX_WORD_LEN,
	FRONTIER_CHUNK,
	INCREMENTAL_PREC_DIVISOR,
)
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.action.utils import create_action_log
from homeo_orbits.exceptions import ConfigError, EvaluationError, OutOfDomain, PrecisionCollapse, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.words import MapWord, apply_letter, eval_word
from homeo_orbits.utils.rational import format_rational


class OrbitBudget(BaseModel):
	model_config = ConfigDict(frozen=True)

	max_word_len: int = Field(default=DEFAULT_MAX_WORD_LEN, ge=0)
	max_points: int = Field(default=DEFAULT_MAX_POINTS, ge=1)

	def doubled(self) -> "OrbitBudget":
		return OrbitBudget(max_word_len=2 * self.max_word_len, max_points=2 * self.max_points)


@dataclass(frozen=True)
class OrbitPoint:
	enclosure: Enclosure
	word: MapWord

	@property
	def value(self) -> Fraction:
		return self.enclosure.mid()

	def as_row(self, index: int) -> dict[str, Any]:
		return {
			"index": index,
			"lo": format_rational(self.enclosure.lo),
			"hi": format_rational(self.enclosure.hi),
			"word": self.word.to_text(),
		}


@dataclass
class OrbitSample:
	"""Deduplicated finite piece of the orbit of ``base``, in breadth-first order."""

	base: Fraction
	points: list[OrbitPoint]
	budget: OrbitBudget
	dedup_tol: Fraction = DEFAULT_DEDUP_TOL
	prec: Fraction = DEFAULT_EVAL_PREC
	domain_kind: DomainKind = DomainKind.INTERVAL
	# deepest word length explored
	depth: int = 0
	exhausted: bool = False
	collisions: int = 0
	skipped: int = 0
	# (dropped word, word of the stored point it came too close to), one pair per collision
	collided_words: list[tuple[MapWord, MapWord]] = field(default_factory=list)

	def __len__(self) -> int:
		return len(self.points)

	@property
	def budget_used(self) -> tuple[int, int]:
		return self.depth, len(self.points)

	def mids(self) -> np.ndarray:
		return np.array([float(p.value) for p in self.points], dtype=float)

	def word_lengths(self) -> np.ndarray:
		return np.array([len(p.word) for p in self.points], dtype=int)

	def sorted_points(self) -> list[OrbitPoint]:
		return sorted(self.points, key=lambda p: p.enclosure.lo)

	def find(self, y: Fraction, tol: Fraction | None = None) -> OrbitPoint | None:
		"""Stored point within tol of y, if any."""
		tol = self.dedup_tol if tol is None else tol
		for point in self.points:
			if point.enclosure.distance(y) <= tol:
				return point
		return None

	def summary(self) -> dict[str, Any]:
		return {
			"base": self.base,
			"points": len(self.points),
			"depth": self.depth,
			"exhausted": self.exhausted,
			"collisions": self.collisions,
			"skipped": self.skipped,
			"collided": [{"word": word.to_text(), "kept": kept.to_text()} for word, kept in self.collided_words],
			"budget": self.budget.model_dump(),
		}

	def as_rows(self) -> list[dict[str, Any]]:
		return [point.as_row(index) for index, point in enumerate(self.points)]


class _Match(Enum):
	NEW = "new"
	SAME = "same"
	COLLISION = "collision"


class _DedupIndex:
	"""Stored enclosures sorted by left end; circle positions are compared mod 1."""

	def __init__(self, domain_kind: DomainKind, tol: Fraction):
		self.circular = domain_kind is DomainKind.CIRCLE
		self.tol = tol
		self._los: list[Fraction] = []
		self._items: dict[Fraction, list[OrbitPoint]] = {}
		self._widest = Fraction(0)

	def add(self, point: OrbitPoint):
		lo = point.enclosure.lo
		if lo not in self._items:
			insort(self._los, lo)
			self._items[lo] = []
		self._items[lo].append(point)
		self._widest = max(self._widest, point.enclosure.width())

	def match(self, candidate: Enclosure) -> tuple[_Match, OrbitPoint | None]:
		shifts = (0, -1, 1) if self.circular else (0,)
		found: tuple[_Match, OrbitPoint | None] = (_Match.NEW, None)
		for shift in shifts:
			moved = candidate.shift(shift)
			start = bisect_left(self._los, moved.lo - self.tol - self._widest)
			stop = bisect_right(self._los, moved.hi + self.tol)
			for lo in self._los[start:stop]:
				for point in self._items[lo]:
					if point.enclosure.overlaps(moved):
						return _Match.SAME, point
					if point.enclosure.distance(moved) <= self.tol:
						found = (_Match.COLLISION, point)
		return found


def orbit(
	system: GeneratorSystem,
	x: Fraction | int,
	budget: OrbitBudget | None = None,
	prec: Fraction = DEFAULT_EVAL_PREC,
	dedup_tol: Fraction = DEFAULT_DEDUP_TOL,
	strict: bool = False,
	workers: int = 1,
) -> OrbitSample:
	"""Breadth-first enumeration of the orbit of x over freely reduced words.

	Letters follow the system's declaration order and only new points are expanded, so the
	sample is deterministic for given budgets whatever the worker count. Children are
	evaluated from their parent's enclosure and re-evaluated from x when that is too wide.
	"""
	budget = budget or OrbitBudget()
	x, prec, dedup_tol = Fraction(x), Fraction(prec), Fraction(dedup_tol)
	if not system.contains(x):
		throw(f"{format_rational(x)} is outside the space of {system.name}", OutOfDomain)
	if prec <= 0 or prec > dedup_tol / 4:
		throw(f"evaluation precision {prec} must be positive and at most dedup_tol / 4", ConfigError)

	first = OrbitPoint(Enclosure.exact(x), MapWord())
	sample = OrbitSample(x, [first], budget, dedup_tol, prec, system.domain_kind)
	index = _DedupIndex(system.domain_kind, dedup_tol)
	index.add(first)
	letters = system.letters()
	inner = prec / INCREMENTAL_PREC_DIVISOR

	def child(task: tuple[OrbitPoint, str, int]) -> OrbitPoint | None:
		parent, name, sign = task
		word = parent.word + MapWord.letter(name, sign)
		try:
			value = apply_letter(system, name, sign, parent.enclosure, inner)
			if value.width() > prec:
				value = eval_word(system, word, x, prec)
		except EvaluationError:
			return None
		return OrbitPoint(value, word)

	executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
	frontier = [first]
	full = len(sample.points) >= budget.max_points
	try:
		for depth in range(1, budget.max_word_len + 1):
			if not frontier or full:
				break
			sample.depth = depth
			next_frontier: list[OrbitPoint] = []
			for start in range(0, len(frontier), FRONTIER_CHUNK):
				tasks = [
					(parent, name, sign)
					for parent in frontier[start : start + FRONTIER_CHUNK]
					for name, sign in letters
					if parent.word.last_letter() != (name, -sign)
				]
				results = executor.map(child, tasks) if executor else map(child, tasks)
				for point in results:
					if point is None:
						sample.skipped += 1
						continue
					kind, near = index.match(point.enclosure)
					if kind is _Match.SAME:
						continue
					if kind is _Match.COLLISION:
						if strict:
							throw(
								f"{point.word} and {near.word} give distinct points closer than {float(dedup_tol):.3g}",
								PrecisionCollapse,
							)
						sample.collisions += 1
						sample.collided_words.append((point.word, near.word))
						continue
					index.add(point)
					sample.points.append(point)
					next_frontier.append(point)
					if len(sample.points) >= budget.max_points:
						full = True
						break
				if full:
					break
			frontier = next_frontier
		sample.exhausted = not frontier and not full
	finally:
		if executor is not None:
			executor.shutdown(cancel_futures=True)

	create_action_log(
		status="Success",
		method="orbit",
		request_data={"system": system.name, "x": x, "budget": budget.model_dump(), "workers": workers},
		response_data=sample.summary(),
	)
	return sample
