from bisect import bisect_right
from collections import Counter
from fractions import Fraction

from homeo_orbits.action.constants import DEFAULT_DEDUP_TOL, DEFAULT_EVAL_PREC
from homeo_orbits.action.orbit import OrbitBudget, OrbitSample, orbit
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.classify.constants import ParallelVerdict
from homeo_orbits.classify.utils import create_classify_log
from homeo_orbits.exceptions import ConfigError, XOnReferenceOrbit, throw
from homeo_orbits.utils.rational import format_rational


def interval_counts(sample: OrbitSample, zs: list[Fraction]) -> Counter:
	"""Sample points per explored interval [z_n, z_n+1), keyed by n counted from the left."""
	counts: Counter = Counter()
	for point in sample.points:
		n = bisect_right(zs, point.value) - 1
		if 0 <= n < len(zs) - 1:
			counts[n] += 1
	return counts


def parallel_test(
	system: GeneratorSystem,
	x: Fraction | int,
	z_sample: OrbitSample,
	budget: OrbitBudget | None = None,
	prec: Fraction = DEFAULT_EVAL_PREC,
	dedup_tol: Fraction = DEFAULT_DEDUP_TOL,
	workers: int = 1,
) -> ParallelVerdict:
	"""Compare the orbit of x with an integer-type reference orbit.

	Parallel when every interval between consecutive sampled reference points holds exactly
	one point of x's orbit, at the budget and at the doubled budget; NotParallel as soon as
	one of them holds two.
	"""
	x = Fraction(x)
	budget = budget or z_sample.budget
	if z_sample.find(x, dedup_tol) is not None:
		throw(f"{format_rational(x)} is on the reference orbit of {format_rational(z_sample.base)}", XOnReferenceOrbit)
	zs = sorted(point.value for point in z_sample.points)
	if not zs[0] < x < zs[-1]:
		throw(f"{format_rational(x)} is outside the explored reference intervals", ConfigError)

	explored = range(len(zs) - 1)
	verdict = ParallelVerdict.INCONCLUSIVE
	counts: Counter = Counter()
	if budget.max_points > 1:
		for attempt in (budget, budget.doubled()):
			counts = interval_counts(orbit(system, x, attempt, prec, dedup_tol, workers=workers), zs)
			if any(counts[n] >= 2 for n in explored):
				verdict = ParallelVerdict.NOT_PARALLEL
				break
		else:
			if all(counts[n] == 1 for n in explored):
				verdict = ParallelVerdict.PARALLEL

	create_classify_log(
		status="Success",
		method="parallel_test",
		request_data={"system": system.name, "x": x, "reference": z_sample.base, "budget": budget.model_dump()},
		response_data={
			"verdict": verdict.value,
			"explored": len(explored),
			"counts": {str(n): counts[n] for n in explored if counts[n]},
		},
	)
	return verdict
