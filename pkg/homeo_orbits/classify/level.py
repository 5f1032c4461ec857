from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from homeo_orbits.action.constants import DEFAULT_DEDUP_TOL, DEFAULT_EVAL_PREC
from homeo_orbits.action.orbit import OrbitBudget, OrbitSample, orbit
from homeo_orbits.action.structure import ComponentDecomposition, decompose
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.classify.constants import ACCUMULATION_SCALES
from homeo_orbits.classify.params import ClassifyParams
from homeo_orbits.classify.utils import create_classify_log
from homeo_orbits.classify.verdict import component_windows
from homeo_orbits.exceptions import BaseInP, LadderPointCoincidesWithX, throw
from homeo_orbits.utils.rational import format_rational, parse_rational


@dataclass(frozen=True)
class RungEvidence:
	name: str
	point: Fraction
	level: int
	same_orbit: bool
	accumulates: bool
	# closest window point of x's sample to a window point of the rung's sample
	nearest: float | None
	scales_hit: int

	def as_dict(self) -> dict[str, Any]:
		return {
			"name": self.name,
			"point": format_rational(self.point),
			"level": self.level,
			"same_orbit": self.same_orbit,
			"accumulates": self.accumulates,
			"nearest": self.nearest,
			"scales_hit": self.scales_hit,
		}


@dataclass(frozen=True)
class LevelEstimate:
	x: Fraction
	level: int
	rungs: tuple[RungEvidence, ...]
	budget: OrbitBudget

	def as_dict(self) -> dict[str, Any]:
		return {
			"x": format_rational(self.x),
			"level": self.level,
			"rungs": [rung.as_dict() for rung in self.rungs],
			"budget": self.budget.model_dump(),
		}


def accumulation(
	xs: np.ndarray, qs: np.ndarray, radius: float, tol: float, scales: int = ACCUMULATION_SCALES
) -> tuple[bool, float | None, int]:
	"""Whether the sorted points xs close in on some q of qs.

	xs accumulates on q when it has a point within radius of q and one in every annulus
	radius * 2^j < |y - q| <= radius * 2^(j + 1), j < scales. Points within tol of q are
	q itself and do not count.
	"""
	nearest = None
	best = 0
	reach = radius * 2**scales
	for q in qs:
		lo, hi = np.searchsorted(xs, q - reach, "left"), np.searchsorted(xs, q + reach, "right")
		d = np.abs(xs[lo:hi] - q)
		d = d[d > tol]
		if not d.size:
			continue
		nearest = float(d.min()) if nearest is None else min(nearest, float(d.min()))
		hits = [bool(np.any(d <= radius))]
		hits.extend(bool(np.any((d > radius * 2**j) & (d <= radius * 2 ** (j + 1)))) for j in range(scales))
		best = max(best, sum(hits))
		if all(hits):
			return True, nearest, best
	return False, nearest, best


class _LevelSearch:
	"""Orbit samples and rung levels shared across one estimate_level call."""

	def __init__(
		self,
		system: GeneratorSystem,
		decomposition: ComponentDecomposition,
		params: ClassifyParams,
		budget: OrbitBudget,
		prec: Fraction,
		dedup_tol: Fraction,
		workers: int,
	):
		self.system = system
		self.decomposition = decomposition
		self.params = params
		self.budget = budget
		self.prec = prec
		self.dedup_tol = dedup_tol
		self.workers = workers
		self._samples: dict[Fraction, OrbitSample] = {}
		self._window_values: dict[Fraction, np.ndarray] = {}
		self._levels: dict[Fraction, int] = {}

	def sample(self, x: Fraction) -> OrbitSample:
		if x not in self._samples:
			self._samples[x] = orbit(self.system, x, self.budget, self.prec, self.dedup_tol, workers=self.workers)
		return self._samples[x]

	def window_values(self, x: Fraction) -> np.ndarray:
		if x not in self._window_values:
			windows = component_windows(self.sample(x), self.decomposition, self.params)
			values = np.concatenate([w.values for w in windows]) if windows else np.array([], dtype=float)
			self._window_values[x] = np.sort(values)
		return self._window_values[x]

	def level(self, x: Fraction, rungs: list[tuple[str, Fraction]]) -> tuple[int, list[RungEvidence]]:
		best = 1
		evidence = []
		xs = self.window_values(x)
		for position, (name, q) in enumerate(rungs):
			if q not in self._levels:
				self._levels[q] = self.level(q, rungs[:position])[0]
			rung_level = self._levels[q]

			if self.sample(x).find(q) is not None:
				evidence.append(RungEvidence(name, q, rung_level, True, False, None, 0))
				continue
			accumulates, nearest, hits = accumulation(
				xs, self.window_values(q), float(self.params.isolation_radius), float(self.dedup_tol)
			)
			evidence.append(RungEvidence(name, q, rung_level, False, accumulates, nearest, hits))
			if accumulates:
				best = max(best, rung_level + 1)
		return best, evidence


def _rungs(
	system: GeneratorSystem, x: Fraction, ladder: list[str | Fraction] | None, tol: Fraction
) -> list[tuple[str, Fraction]]:
	if ladder is None:
		# the system's own ladder, cut before the rung x sits on
		rungs = []
		for name in system.ladder:
			q = system.point(name)
			if abs(q - x) <= tol:
				break
			rungs.append((name, q))
		return rungs

	rungs = []
	for entry in ladder:
		if isinstance(entry, str) and entry in system.designated_points:
			name, q = entry, system.point(entry)
		else:
			q = parse_rational(entry)
			name = format_rational(q)
		if abs(q - x) <= tol:
			throw(f"ladder point {name} coincides with x = {format_rational(x)}", LadderPointCoincidesWithX)
		rungs.append((name, q))
	return rungs


def estimate_level(
	system: GeneratorSystem,
	x: Fraction | int,
	ladder: list[str | Fraction] | None = None,
	budget: OrbitBudget | None = None,
	params: ClassifyParams | None = None,
	decomposition: ComponentDecomposition | None = None,
	prec: Fraction = DEFAULT_EVAL_PREC,
	dedup_tol: Fraction = DEFAULT_DEDUP_TOL,
	workers: int = 1,
) -> LevelEstimate:
	"""Level of the orbit of x against a ladder of reference points ordered by level.

	x is one level above the highest rung whose orbit its sample accumulates on while
	staying off it, and level 1 when there is none. Rung levels are estimated the same way
	against the rungs before them. Without an explicit ladder the system's ladder is used
	up to the rung x itself sits on.
	"""
	x = Fraction(x)
	budget = budget or OrbitBudget()
	params = params or ClassifyParams()
	decomposition = decomposition or decompose(system)
	if decomposition.component_of(x) is None:
		throw(f"{format_rational(x)} lies on a finite orbit", BaseInP)

	rungs = _rungs(system, x, ladder, Fraction(dedup_tol))
	search = _LevelSearch(system, decomposition, params, budget, Fraction(prec), Fraction(dedup_tol), workers)
	level, evidence = search.level(x, rungs)
	estimate = LevelEstimate(x, level, tuple(evidence), budget)
	create_classify_log(
		status="Success",
		method="estimate_level",
		request_data={"system": system.name, "x": x, "ladder": [name for name, _ in rungs]},
		response_data=estimate.as_dict(),
	)
	return estimate
