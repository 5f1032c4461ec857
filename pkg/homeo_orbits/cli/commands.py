from argparse import Namespace
from fractions import Fraction
from typing import Any

from pydantic import ValidationError

from homeo_orbits.action.orbit import OrbitBudget, orbit
from homeo_orbits.action.structure import decompose
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.action.transport import transport_word
from homeo_orbits.action.witness import verify_witness, witness_interval
from homeo_orbits.cantor.address import CantorAddress
from homeo_orbits.cantor.example2 import density_witness, verify_density_witness
from homeo_orbits.catalog import ExampleSpec, build_example
from homeo_orbits.classify.level import estimate_level
from homeo_orbits.classify.params import ClassifyParams
from homeo_orbits.classify.verdict import classify, classify_with_doubling
from homeo_orbits.cli.config import SystemConfig, config_errors, load_system, save_system
from homeo_orbits.cli.orbit_csv import read_orbit_csv, write_orbit_csv
from homeo_orbits.cli.plot import write_svg
from homeo_orbits.exceptions import ConfigError, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.fixed_points import fixed_point_enclosures
from homeo_orbits.utils.rational import format_rational, parse_rational


def _rational(value: str, flag: str) -> Fraction:
	try:
		return parse_rational(value)
	except ConfigError as e:
		throw(f"{flag}: {e.message}", ConfigError)


def _budget(args: Namespace) -> OrbitBudget:
	try:
		return OrbitBudget(max_word_len=args.max_word_len, max_points=args.max_points)
	except ValidationError as e:
		throw(config_errors(e), ConfigError)


def _classify_params(args: Namespace) -> ClassifyParams:
	given = {
		"eps_dense": args.eps_dense,
		"min_points": args.min_points,
		"edge_margin": args.edge_margin,
		"isolation_radius": args.isolation_radius,
	}
	try:
		return ClassifyParams(**{key: value for key, value in given.items() if value is not None})
	except ValidationError as e:
		throw(config_errors(e), ConfigError)


def _point(system: GeneratorSystem, value: str | None) -> Fraction:
	"""--point as a designated point name or a rational; the first ladder point by default."""
	if value is None:
		if not system.ladder:
			throw(f"{system.name} has no ladder; pass --point", ConfigError)
		return system.point(system.ladder[0])
	if value in system.designated_points:
		return system.point(value)
	return _rational(value, "--point")


def _precision(args: Namespace) -> tuple[Fraction, Fraction]:
	return _rational(args.prec, "--prec"), _rational(args.dedup_tol, "--dedup-tol")


def _example_params(pairs: list[str] | None) -> dict[str, Any]:
	params = {}
	for pair in pairs or []:
		key, sep, value = pair.partition("=")
		if not sep or not key:
			throw(f"--param expects KEY=VALUE, got {pair!r}", ConfigError)
		params[key.strip()] = value.strip()
	return params


def cmd_example(args: Namespace) -> dict[str, Any]:
	params = _example_params(args.param)
	if args.as_printed:
		params["as_printed"] = True
	spec = ExampleSpec(name=args.name, params=params)
	config = SystemConfig.from_system(build_example(spec), spec)
	if not args.out:
		return config.model_dump(mode="json")
	save_system(config, args.out)
	return {"system": config.name, "generators": [g.name for g in config.generators], "out": args.out}


def cmd_orbit(args: Namespace) -> dict[str, Any]:
	_, system = load_system(args.system)
	prec, dedup_tol = _precision(args)
	sample = orbit(system, _point(system, args.point), _budget(args), prec, dedup_tol, workers=args.workers)
	result = {"system": system.name, **sample.summary()}
	if args.out:
		result["rows"] = write_orbit_csv(sample, args.out)
		result["out"] = args.out
	return result


def cmd_classify(args: Namespace) -> dict[str, Any]:
	_, system = load_system(args.system)
	prec, dedup_tol = _precision(args)
	x = _point(system, args.point)
	budget = _budget(args)
	params = _classify_params(args)
	decomposition = decompose(system)
	if args.budget_double:
		classification = classify_with_doubling(
			system, x, budget, params, decomposition, prec, dedup_tol, workers=args.workers
		)
	else:
		sample = orbit(system, x, budget, prec, dedup_tol, workers=args.workers)
		classification = classify(sample, decomposition, params)
	return {"system": system.name, **classification.as_dict()}


def cmd_level(args: Namespace) -> dict[str, Any]:
	_, system = load_system(args.system)
	prec, dedup_tol = _precision(args)
	estimate = estimate_level(
		system,
		_point(system, args.point),
		ladder=args.ladder or None,
		budget=_budget(args),
		params=_classify_params(args),
		prec=prec,
		dedup_tol=dedup_tol,
		workers=args.workers,
	)
	return {"system": system.name, **estimate.as_dict()}


def cmd_fixed_points(args: Namespace) -> dict[str, Any]:
	_, system = load_system(args.system)
	resolution = _rational(args.resolution, "--resolution")
	names = [args.map] if args.map else list(system.generators)
	window = system.view if system.domain_kind is DomainKind.LINE else None

	found = {}
	for name in names:
		if name not in system.generators:
			throw(f"{system.name} has no generator {name!r}", ConfigError)
		points = fixed_point_enclosures(system.generators[name], resolution, window)
		found[name] = [p.as_dict() for p in points]
	return {"system": system.name, "resolution": format_rational(resolution), "fixed_points": found}


def _cantor_point(value: str, flag: str) -> Fraction | CantorAddress:
	try:
		return parse_rational(value)
	except ConfigError:
		pass
	try:
		return CantorAddress.parse(value)
	except ConfigError:
		throw(f"{flag}: {value!r} is neither a rational nor a Cantor address", ConfigError)


def cmd_witness(args: Namespace) -> dict[str, Any]:
	if args.density:
		x, y = (_cantor_point(value, "--density") for value in args.density)
		eps = _rational(args.eps, "--eps")
		witness = density_witness(x, y, eps)
		return {**witness.as_dict(), "verified": verify_density_witness(witness.word, x, y, eps)}

	if not args.system:
		throw("witness needs --system, or --density X Y for the Cantor example", ConfigError)
	_, system = load_system(args.system)
	prec, _ = _precision(args)
	witness = witness_interval(system, _rational(args.resolution, "--resolution"), prec)
	return {"system": system.name, **witness.as_dict(), "verified": verify_witness(system, witness, prec)}


def cmd_transport(args: Namespace) -> dict[str, Any]:
	_, system = load_system(args.system)
	prec, dedup_tol = _precision(args)
	z = _point(system, args.point)
	budget = _budget(args)
	z_orbit = orbit(system, z, budget, prec, dedup_tol, workers=args.workers)
	word = transport_word(system, z_orbit, args.i, args.j, budget.doubled(), dedup_tol, prec)
	return {"system": system.name, "base": format_rational(z), "from": args.i, "to": args.j, "word": word.to_text()}


def cmd_plot(args: Namespace) -> dict[str, Any]:
	_, system = load_system(args.system)
	rows = read_orbit_csv(args.orbit)
	write_svg(system, rows, args.out)
	return {"system": system.name, "points": len(rows), "generators": list(system.generators), "out": args.out}
