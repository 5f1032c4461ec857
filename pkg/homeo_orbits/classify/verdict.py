from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

import numpy as np

from homeo_orbits.action.constants import DEFAULT_DEDUP_TOL, DEFAULT_EVAL_PREC
from homeo_orbits.action.orbit import OrbitBudget, OrbitSample, orbit
from homeo_orbits.action.structure import ComponentDecomposition, decompose
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.classify.constants import (
	CANTOR_MIN_OSCILLATION,
	CLUSTER_SUMMARY_LIMIT,
	GAP_SCALES,
	LEVEL_ONE_VERDICTS,
	Verdict,
)
from homeo_orbits.classify.params import ClassifyParams
from homeo_orbits.classify.utils import create_classify_log
from homeo_orbits.exceptions import BaseInP, throw
from homeo_orbits.utils.rational import format_rational

# relative slack when comparing neighbouring gaps, so float noise does not make ties into maxima
GAP_TIE_SLACK = 1e-9


@dataclass(frozen=True)
class ComponentWindow:
	"""Sample points of one component, away from its ends by edge_margin times its length."""

	index: int
	lo: float
	hi: float
	length: float
	values: np.ndarray
	word_lengths: np.ndarray

	def gaps(self) -> np.ndarray:
		return np.diff(self.values)

	def gaps_with_ends(self) -> np.ndarray:
		return np.diff(np.concatenate(([self.lo], self.values, [self.hi])))


def _coordinate(decomposition: ComponentDecomposition, index: int, y: Fraction) -> Fraction:
	a, b = decomposition.components[index]
	if a < y < b:
		return y
	# circle arc crossing 0
	return y + 1


def component_windows(
	sample: OrbitSample, decomposition: ComponentDecomposition, params: ClassifyParams
) -> list[ComponentWindow]:
	"""Windows of the components met by the sample, in component order."""
	found: dict[int, list[tuple[Fraction, int]]] = {}
	for point in sample.points:
		index = decomposition.component_of(point.value)
		if index is None:
			continue
		found.setdefault(index, []).append((_coordinate(decomposition, index, point.value), len(point.word)))

	windows = []
	for index in sorted(found):
		a, b = decomposition.components[index]
		length = b - a
		lo, hi = a + params.edge_margin * length, b - params.edge_margin * length
		inside = sorted((y, n) for y, n in found[index] if lo <= y <= hi)
		windows.append(
			ComponentWindow(
				index,
				float(lo),
				float(hi),
				float(length),
				np.array([float(y) for y, _ in inside], dtype=float),
				np.array([n for _, n in inside], dtype=int),
			)
		)
	return windows


@dataclass(frozen=True)
class Evidence:
	# largest window gap, ends included, as a fraction of its component's length
	max_gap_in_range: float | None
	isolated_point_fraction: float | None
	accumulation_set_summary: tuple[float, ...]
	cluster_count: int
	window_points: int
	min_gap: float | None
	gap_oscillation: float
	large_gap_counts: tuple[int, ...]
	stable: bool
	range: tuple[int, ...]
	budget: OrbitBudget
	budget_used: tuple[int, int]
	survived_doubling: bool | None = None

	def as_dict(self) -> dict[str, Any]:
		return {
			"max_gap_in_range": self.max_gap_in_range,
			"isolated_point_fraction": self.isolated_point_fraction,
			"accumulation_set_summary": list(self.accumulation_set_summary),
			"cluster_count": self.cluster_count,
			"window_points": self.window_points,
			"min_gap": self.min_gap,
			"gap_oscillation": self.gap_oscillation,
			"large_gap_counts": list(self.large_gap_counts),
			"stable": self.stable,
			"range": list(self.range),
			"budget": self.budget.model_dump(),
			"budget_used": list(self.budget_used),
			"survived_doubling": self.survived_doubling,
		}


@dataclass(frozen=True)
class Classification:
	verdict: Verdict
	evidence: Evidence
	base: Fraction
	level: int | None = None

	def as_dict(self) -> dict[str, Any]:
		return {
			"base": format_rational(self.base),
			"verdict": self.verdict.value,
			"level": self.level,
			"evidence": self.evidence.as_dict(),
		}


def _local_maxima(gaps: np.ndarray) -> int:
	if gaps.size < 3:
		return 0
	middle = gaps[1:-1]
	above_left = middle > gaps[:-2] * (1 + GAP_TIE_SLACK)
	above_right = middle > gaps[2:] * (1 + GAP_TIE_SLACK)
	return int(np.count_nonzero(above_left & above_right))


def _clusters(window: ComponentWindow, radius: float) -> list[float]:
	"""Midpoints of maximal runs of consecutive gaps below radius."""
	centres = []
	start = None
	close = window.gaps() < radius
	for i, is_close in enumerate(close):
		if is_close and start is None:
			start = i
		elif not is_close and start is not None:
			centres.append((window.values[start] + window.values[i]) / 2)
			start = None
	if start is not None:
		centres.append((window.values[start] + window.values[-1]) / 2)
	return centres


def _isolated(window: ComponentWindow, radius: float) -> int:
	if window.values.size < 2:
		return int(window.values.size)
	far = window.gaps() > radius
	left = np.concatenate(([True], far))
	right = np.concatenate((far, [True]))
	return int(np.count_nonzero(left & right))


def _stable(sample: OrbitSample, windows: list[ComponentWindow]) -> bool:
	if sample.exhausted:
		return True
	if sample.depth < 2:
		return False
	shallow = sample.depth // 2
	return all(bool(np.all(w.word_lengths <= shallow)) for w in windows)


def gather_evidence(
	sample: OrbitSample, decomposition: ComponentDecomposition, params: ClassifyParams
) -> Evidence:
	windows = component_windows(sample, decomposition, params)
	radius = float(params.isolation_radius)
	eps = float(params.eps_dense)

	window_points = sum(int(w.values.size) for w in windows)
	relative = [w.gaps_with_ends() / w.length for w in windows]
	interior = [w.gaps() for w in windows]
	gap_count = sum(g.size for g in interior)
	min_gap = min((float(g.min()) for g in interior if g.size), default=None)

	large_gap_counts = tuple(
		sum(int(np.count_nonzero(g / w.length > eps / 2**k)) for g, w in zip(interior, windows, strict=True))
		for k in range(GAP_SCALES)
	)
	centres = [c for w in windows for c in _clusters(w, radius)]

	return Evidence(
		max_gap_in_range=max((float(r.max()) for r in relative), default=None),
		isolated_point_fraction=(
			sum(_isolated(w, radius) for w in windows) / window_points if window_points else None
		),
		accumulation_set_summary=tuple(centres[:CLUSTER_SUMMARY_LIMIT]),
		cluster_count=len(centres),
		window_points=window_points,
		min_gap=min_gap,
		gap_oscillation=sum(_local_maxima(g) for g in interior) / gap_count if gap_count else 0.0,
		large_gap_counts=large_gap_counts,
		stable=_stable(sample, windows),
		range=tuple(w.index for w in windows),
		budget=sample.budget,
		budget_used=sample.budget_used,
	)


def _verdict(evidence: Evidence, params: ClassifyParams) -> Verdict:
	if not evidence.window_points:
		return Verdict.INCONCLUSIVE
	if evidence.max_gap_in_range < params.eps_dense:
		return Verdict.DENSE
	if evidence.isolated_point_fraction == 1 and evidence.stable:
		return Verdict.INTEGER_TYPE

	counts = evidence.large_gap_counts
	increasing = all(a < b for a, b in zip(counts, counts[1:], strict=False))
	if (
		evidence.window_points >= params.min_points
		and increasing
		and evidence.gap_oscillation >= CANTOR_MIN_OSCILLATION
	):
		return Verdict.CANTOR_TYPE

	if (
		not evidence.stable
		and evidence.min_gap is not None
		and evidence.min_gap < params.isolation_radius
		and evidence.gap_oscillation < CANTOR_MIN_OSCILLATION
		and evidence.cluster_count < evidence.window_points / 4
	):
		return Verdict.ACCUMULATES_ON_PROPER_SUBSET
	return Verdict.INCONCLUSIVE


def decomposition_range(sample: OrbitSample, decomposition: ComponentDecomposition) -> set[int]:
	found = set()
	for point in sample.points:
		index = decomposition.component_of(point.value)
		if index is not None:
			found.add(index)
	return found


def classify(
	sample: OrbitSample, decomposition: ComponentDecomposition, params: ClassifyParams | None = None
) -> Classification:
	"""Sort a budget-limited orbit sample into one of the four orbit types, or Inconclusive.

	Statistics are taken only inside the component windows, so accumulation at P(G) is
	never counted. Orbits found Dense, IntegerType or CantorType are level 1.
	"""
	params = params or ClassifyParams()
	start = decomposition.component_of(sample.base)
	if start is None:
		throw(f"{format_rational(sample.base)} lies on a finite orbit", BaseInP)
	params.check_sample(
		min(decomposition.length(i) for i in {start, *decomposition_range(sample, decomposition)}),
		sample.dedup_tol,
	)

	evidence = gather_evidence(sample, decomposition, params)
	verdict = _verdict(evidence, params)
	classification = Classification(
		verdict, evidence, sample.base, level=1 if verdict in LEVEL_ONE_VERDICTS else None
	)
	create_classify_log(
		status="Success",
		method="classify",
		request_data={"base": sample.base, "params": params.model_dump(mode="json")},
		response_data=classification.as_dict(),
	)
	return classification


def classify_with_doubling(
	system: GeneratorSystem,
	x: Fraction | int,
	budget: OrbitBudget | None = None,
	params: ClassifyParams | None = None,
	decomposition: ComponentDecomposition | None = None,
	prec: Fraction = DEFAULT_EVAL_PREC,
	dedup_tol: Fraction = DEFAULT_DEDUP_TOL,
	workers: int = 1,
) -> Classification:
	"""Classify at budget, classify again at the doubled budget, and record whether the verdict held."""
	budget = budget or OrbitBudget()
	decomposition = decomposition or decompose(system)
	first = classify(orbit(system, x, budget, prec, dedup_tol, workers=workers), decomposition, params)
	second = classify(orbit(system, x, budget.doubled(), prec, dedup_tol, workers=workers), decomposition, params)
	survived = first.verdict is second.verdict
	if not survived:
		create_classify_log(
			status="Invalid",
			method="classify_with_doubling",
			message=f"verdict changed from {first.verdict.value} to {second.verdict.value} on doubling",
			request_data={"system": system.name, "x": Fraction(x), "budget": budget.model_dump()},
		)
	return replace(first, evidence=replace(first.evidence, survived_doubling=survived))
