from fractions import Fraction

from homeo_orbits.action.constants import DEFAULT_DEDUP_TOL, DEFAULT_EVAL_PREC
from homeo_orbits.action.orbit import OrbitBudget, OrbitPoint, OrbitSample, orbit
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.action.utils import create_action_log
from homeo_orbits.exceptions import BudgetExhausted, EvaluationError, InverseOfEndomorphism, throw
from homeo_orbits.homeo.words import MapWord, eval_word


def label_points(sample: OrbitSample) -> dict[int, OrbitPoint]:
	"""Index sample points by position relative to the base.

	z_0 is the base, z_1 the nearest sampled point to its right, z_-1 the nearest to its left.
	"""
	ordered = sample.sorted_points()
	base = next(i for i, point in enumerate(ordered) if not point.word.syllables)
	return {i - base: point for i, point in enumerate(ordered)}


def transport_word(
	system: GeneratorSystem,
	z_orbit: OrbitSample,
	i: int,
	j: int,
	budget: OrbitBudget | None = None,
	tol: Fraction = DEFAULT_DEDUP_TOL,
	prec: Fraction = DEFAULT_EVAL_PREC,
) -> MapWord:
	"""Word carrying I_i = [z_i, z_i+1] onto I_j = [z_j, z_j+1].

	If z_orbit lacks one of the four labels and a budget is given, the orbit of its base is
	enumerated again with that budget.
	"""
	if not system.invertible:
		throw(f"{system.name} is a semigroup; transport needs inverses", InverseOfEndomorphism)
	labels = label_points(z_orbit)
	needed = {i, i + 1, j, j + 1}
	if not needed <= labels.keys() and budget is not None:
		z_orbit = orbit(system, z_orbit.base, budget, z_orbit.prec, z_orbit.dedup_tol)
		labels = label_points(z_orbit)
	missing = sorted(needed - labels.keys())
	if missing:
		throw(f"z_{missing[0]} is not reached within {z_orbit.budget.model_dump()}", BudgetExhausted)

	word = labels[i].word.inverse() + labels[j].word
	for source, target in ((i, j), (i + 1, j + 1)):
		try:
			image = eval_word(system, word, labels[source].value, prec)
		except EvaluationError as e:
			throw(f"{word} could not be evaluated at z_{source}: {e.message}", BudgetExhausted)
		if image.distance(labels[target].enclosure) > tol:
			throw(f"{word} sends z_{source} to {image}, not to z_{target}; the sample is too sparse", BudgetExhausted)

	create_action_log(
		status="Success",
		method="transport_word",
		request_data={"system": system.name, "base": z_orbit.base, "from": i, "to": j},
		response_data={"word": word.to_text()},
	)
	return word
