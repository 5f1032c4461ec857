from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.cantor.address import left_endpoint
from homeo_orbits.cantor.example2 import build_f, build_g
from homeo_orbits.cantor.split import SplitHomeoSpec, build_split_homeo
from homeo_orbits.catalog.constants import (
	BASE_POINT,
	CANTOR_EX1_DEFAULT_COUNT,
	CANTOR_EX1_MAX_COUNT,
	LADDER_INTERVAL,
	LEVEL_N_DEFAULT,
	LEVEL_N_MAX,
	LINE_VIEW,
	SEMIGROUP_DEFAULTS,
)
from homeo_orbits.catalog.ladder import (
	CantorLadderMap,
	ComposedMap,
	DenseLadderMap,
	MapEvaluator,
	NestedLadderMap,
	build_g0,
	build_psi_inner,
	chart,
)
from homeo_orbits.catalog.utils import create_catalog_log
from homeo_orbits.exceptions import BadParams, ConfigError, InverseOfEndomorphism, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.maps import PiecewiseMap, validate_map, validated
from homeo_orbits.homeo.pieces import AffinePiece, LazyPiece, PowerPiece
from homeo_orbits.homeo.words import MapWord, eval_word
from homeo_orbits.utils.rational import format_rational, parse_rational


class ExampleParams:
	"""Builder parameters with defaults; unknown keys are rejected once the build is done."""

	def __init__(self, name: str, values: Mapping[str, Any] | None = None):
		self.name = name
		self.values = dict(values or {})
		self.used: set[str] = set()

	def _get(self, key: str, default):
		self.used.add(key)
		return self.values.get(key, default)

	def rational(self, key: str, default: Fraction) -> Fraction:
		value = self._get(key, default)
		try:
			return parse_rational(value)
		except ConfigError:
			throw(f"{self.name}: {key} must be a rational, got {value!r}", BadParams)

	def integer(self, key: str, default: int, lo: int, hi: int) -> int:
		value = self._get(key, default)
		if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
			value = int(value)
		if isinstance(value, bool) or not isinstance(value, int) or not lo <= value <= hi:
			throw(f"{self.name}: {key} must be an integer in [{lo}, {hi}], got {value!r}", BadParams)
		return value

	def flag(self, key: str, default: bool = False) -> bool:
		value = self._get(key, default)
		if isinstance(value, str) and value.lower() in ("true", "false"):
			value = value.lower() == "true"
		if not isinstance(value, bool):
			throw(f"{self.name}: {key} must be true or false, got {value!r}", BadParams)
		return value

	def finish(self):
		unknown = sorted(set(self.values) - self.used)
		if unknown:
			throw(f"{self.name} takes no parameter {', '.join(unknown)}", BadParams)


def _lazy(name: str, evaluator, domain_kind: DomainKind = DomainKind.INTERVAL, **kwargs) -> PiecewiseMap:
	if domain_kind is DomainKind.INTERVAL:
		return validated(PiecewiseMap(name, (LazyPiece(0, 1, evaluator),)))
	return validated(PiecewiseMap(name, (LazyPiece(None, None, evaluator),), domain_kind, **kwargs))


def _power(name: str, e: Fraction) -> PiecewiseMap:
	return validated(PiecewiseMap(name, (PowerPiece(0, 1, c=1, a=0, b=0, e=e),)))


def case1_dense(params: ExampleParams) -> GeneratorSystem:
	return GeneratorSystem(
		"case1-dense",
		{"f": _power("f", Fraction(1, 3)), "g": _power("g", Fraction(2))},
		designated_points={"x": BASE_POINT},
		ladder=("x",),
	)


def case2_single(params: ExampleParams) -> GeneratorSystem:
	e = params.rational("exponent", Fraction(2))
	if e <= 0 or e == 1:
		throw(f"case2-single: exponent must be positive and not 1, got {format_rational(e)}", BadParams)
	return GeneratorSystem(
		"case2-single",
		{"g": _power("g", e)},
		designated_points={"x": BASE_POINT},
		ladder=("x",),
		params={"exponent": e},
	)


def cantor_ex1(params: ExampleParams) -> GeneratorSystem:
	count = params.integer("n", CANTOR_EX1_DEFAULT_COUNT, 1, CANTOR_EX1_MAX_COUNT)
	generators = {}
	for k in range(count):
		pin = (left_endpoint(k + 1), left_endpoint(k + 2))
		generators[f"f{k}"] = build_split_homeo(SplitHomeoSpec(pins=(pin,)), name=f"f{k}")
	return GeneratorSystem(
		"cantor-ex1",
		generators,
		designated_points={"x0": left_endpoint(1).value},
		ladder=("x0",),
		notes=(f"truncated to the first {count} maps of the family",),
		params={"n": count},
	)


def cantor_ex2(params: ExampleParams) -> GeneratorSystem:
	return GeneratorSystem(
		"cantor-ex2",
		{"g": build_g(), "f": build_f()},
		designated_points={"x": Fraction(1, 4)},
		ladder=("x",),
	)


def level2_integer(params: ExampleParams) -> GeneratorSystem:
	g0 = build_g0("g")
	f = _lazy("f", NestedLadderMap(build_g0("g0"), depth=1))
	return GeneratorSystem(
		"level2-integer",
		{"g": g0, "f": f},
		designated_points={"z0": BASE_POINT, "x0": chart(BASE_POINT)},
		ladder=("z0", "x0"),
	)


def level2_dense(params: ExampleParams) -> GeneratorSystem:
	dense = DenseLadderMap()
	return GeneratorSystem(
		"level2-dense",
		{"g": build_g0("g"), "f": _lazy("f", dense)},
		designated_points={"z0": BASE_POINT, "x0": dense.base},
		ladder=("z0", "x0"),
		notes=("dense sequence: dyadic points of I_0 in breadth-first order", "f agrees with g left of z0"),
	)


def level2_cantor(params: ExampleParams) -> GeneratorSystem:
	shift = validated(PiecewiseMap("g", (AffinePiece(None, None, 1, 1),), DomainKind.LINE, core=(0, 1)))
	ladder = CantorLadderMap()
	return GeneratorSystem(
		"level2-cantor",
		{"g": shift, "f": _lazy("f", ladder, DomainKind.LINE, core=(0, 1))},
		designated_points={"z0": Fraction(0), "x0": ladder.base},
		ladder=("z0", "x0"),
		view=LINE_VIEW,
		notes=("f agrees with g left of 0",),
	)


def ladder_point_names(n: int) -> list[str]:
	return ["z0", *(f"z0^{'0' * k}" for k in range(1, n))]


def level_n(params: ExampleParams) -> GeneratorSystem:
	n = params.integer("n", LEVEL_N_DEFAULT, 1, LEVEL_N_MAX)
	base = build_g0("g0")
	generators = {"f1": build_g0("f1")}
	for k in range(2, n + 1):
		generators[f"f{k}"] = _lazy(f"f{k}", NestedLadderMap(base, depth=k - 1))

	points = {}
	point = BASE_POINT
	for name in ladder_point_names(n):
		points[name] = point
		point = chart(point)
	return GeneratorSystem(
		"level-n",
		generators,
		designated_points=points,
		ladder=tuple(points),
		params={"n": n},
	)


def parallel_pair(params: ExampleParams) -> GeneratorSystem:
	g0 = build_g0("g")
	psi = NestedLadderMap(build_psi_inner(), depth=1)
	marker = (LADDER_INTERVAL[0] + LADDER_INTERVAL[1]) / 2
	return GeneratorSystem(
		"parallel-pair",
		{"g": g0, "f": _lazy("f", ComposedMap(psi, MapEvaluator(g0)))},
		designated_points={"z0": BASE_POINT, "y": marker, "t0": Fraction(13, 24), "x0": Fraction(5, 8)},
		ladder=("z0",),
		notes=("f agrees with g on [z_n, y_n] of every I_n",),
	)


def _semigroup_points(params: ExampleParams) -> dict[str, Fraction]:
	points = {key: params.rational(key, default) for key, default in SEMIGROUP_DEFAULTS.items()}
	order = [points[key] for key in ("x1", "a0", "a1", "a2", "a3", "x2")]
	if not (0 < order[0] and all(a < b for a, b in zip(order, order[1:], strict=False)) and order[-1] < 1):
		throw("semigroup: need 0 < x1 < a0 < a1 < a2 < a3 < x2 < 1", BadParams)
	r = points["a1"] - points["a0"]
	if points["a2"] - points["a1"] != r or points["a3"] - points["a2"] != r:
		throw("semigroup: a0, a1, a2, a3 must be evenly spaced", BadParams)
	points["r"] = r
	return points


def _semigroup_maps(p: dict[str, Fraction], as_printed: bool) -> dict[str, list]:
	x1, a0, a1, a2, a3, x2, r = (p[key] for key in ("x1", "a0", "a1", "a2", "a3", "x2", "r"))
	s3 = (1 - a2) / (1 - a3)
	h1 = [AffinePiece(0, a2, a1 / a2, 0), AffinePiece(a2, a3, 1, -r), AffinePiece(a3, 1, s3, a2 - s3 * a3)]

	t = (1 - a2) / (1 - a1)
	if as_printed:
		first = AffinePiece(0, a0, (a1 - a0) / a0, a0)
	else:
		first = AffinePiece(0, a0, a1 / a0, 0)
	h2 = [first, AffinePiece(a0, a1, 1, r), AffinePiece(a1, 1, t, a2 - t * a1)]

	u = (a2 - x1) / (a1 - x1)
	v = (1 - a3) / (1 - a2)
	f = [
		PowerPiece(0, x1, c=x1, a=0, b=0, e=2, s=x1),
		AffinePiece(x1, a1, u, x1 - u * x1),
		PowerPiece(a1, a2, c=r, a=a1, b=a1 + r, e=Fraction(1, 3), s=r),
		AffinePiece(a2, 1, v, 1 - v),
	]

	if as_printed:
		w = (1 - x2 - a1) / (1 - a2)
		third = AffinePiece(a2, x2, w, x2 - w * x2)
		fourth = PowerPiece(x2, 1, c=1 - x2, a=0, b=x2, e=Fraction(1, 3), s=1 - x2)
	else:
		w = (x2 - a1) / (x2 - a2)
		third = AffinePiece(a2, x2, w, a1 - w * a2)
		fourth = PowerPiece(x2, 1, c=1 - x2, a=x2, b=x2, e=Fraction(1, 3), s=1 - x2)
	g = [AffinePiece(0, a1, a0 / a1, 0), PowerPiece(a1, a2, c=r, a=a1, b=a0, e=2, s=r), third, fourth]
	return {"f": f, "g": g, "h1": h1, "h2": h2}


SEMIGROUP_REPAIRS = (
	"h2 first piece replaced by (a1/a0)x so that h2(0) = 0",
	"g third piece replaced by the affine map sending a2 to a1 and fixing x2",
	"g fourth piece recentred at x2 so that g fixes x2",
)

SEMIGROUP_TAIL_NOTE = (
	"the claim that forward orbits of points below x1 avoid (x1, x2) is measured, not assumed: "
	"h2 moves small points to the right past x1"
)


def semigroup(params: ExampleParams) -> GeneratorSystem:
	as_printed = params.flag("as_printed")
	points = _semigroup_points(params)
	generators = {}
	notes = [SEMIGROUP_TAIL_NOTE]
	for name, pieces in _semigroup_maps(points, as_printed).items():
		m = PiecewiseMap(name, tuple(pieces))
		if as_printed:
			report = validate_map(m, strict=False)
			generators[name] = report.map
			notes.extend(f"{name}: {issue}" for issue in report.issues)
		else:
			generators[name] = validated(m)
	if not as_printed:
		notes.extend(SEMIGROUP_REPAIRS)
		create_catalog_log(
			status="Success",
			method="build_example",
			message="semigroup repairs applied",
			response_data={"repairs": SEMIGROUP_REPAIRS},
		)

	designated = {key: points[key] for key in ("x1", "a0", "a1", "a2", "a3", "x2")}
	designated["m"] = (points["a1"] + points["a2"]) / 2
	return GeneratorSystem(
		"semigroup",
		generators,
		invertible=False,
		designated_points=designated,
		ladder=("m",),
		notes=tuple(notes),
		params={"as_printed": as_printed, "r": points["r"], "words": {"f_hat": "f h1", "g_hat": "g h2"}},
	)


class WordMap:
	"""Evaluator of a fixed word of a semigroup system, as a single forward map."""

	def __init__(self, system: GeneratorSystem, word: MapWord):
		self.system = system
		self.word = word

	def evaluate(self, x: Fraction, prec: Fraction) -> Enclosure:
		return eval_word(self.system, self.word, x, prec)

	def invert(self, y: Fraction, prec: Fraction) -> Enclosure:
		throw(f"{self.word} is a semigroup word and has no inverse", InverseOfEndomorphism)

	def describe(self) -> dict[str, Any]:
		return {"kind": "word", "word": self.word.to_text()}


def hat_pair(system: GeneratorSystem) -> GeneratorSystem:
	"""The commuting pair f_hat = h1 o f and g_hat = h2 o g of the semigroup, as a system of its own."""
	generators = {}
	for name, text in system.params["words"].items():
		piece = LazyPiece(0, 1, WordMap(system, MapWord.parse(text)))
		generators[name] = PiecewiseMap(name, (piece,), surjective=False)
	return GeneratorSystem(
		f"{system.name}-hat",
		generators,
		invertible=False,
		designated_points=system.designated_points,
		ladder=system.ladder,
	)


def circle_swap(params: ExampleParams) -> GeneratorSystem:
	rot = validated(PiecewiseMap("rot", (AffinePiece(0, 1, 1, Fraction(1, 2)),), DomainKind.CIRCLE))
	half, quarter = Fraction(1, 2), Fraction(1, 4)
	pieces = []
	for start in (Fraction(0), half):
		pieces.append(AffinePiece(start, start + quarter, Fraction(3, 2), -start / 2))
		pieces.append(AffinePiece(start + quarter, start + half, half, start / 2 + quarter))
	f = validated(PiecewiseMap("f", tuple(pieces), DomainKind.CIRCLE))
	return GeneratorSystem(
		"circle-swap",
		{"rot": rot, "f": f},
		designated_points={"x": Fraction(1, 8)},
		finite_orbit_points=(Fraction(0), half),
	)
