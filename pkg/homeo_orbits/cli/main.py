import argparse
import sys
from collections.abc import Callable

from homeo_orbits.action.constants import (
	DEFAULT_DEDUP_TOL,
	DEFAULT_EVAL_PREC,
	DEFAULT_MAX_POINTS,
	DEFAULT_MAX_WORD_LEN,
	DEFAULT_RESOLUTION,
)
from homeo_orbits.cli.constants import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE_ERROR
from homeo_orbits.cli.utils import create_cli_log
from homeo_orbits.exceptions import ConfigError, HomeoOrbitsError
from homeo_orbits.utils import get_attr, get_hooks
from homeo_orbits.utils.log import dumps
from homeo_orbits.utils.rational import format_rational


def _system(parser: argparse.ArgumentParser, required: bool = True):
	parser.add_argument("--system", required=required, help="system config file written by `example`")


def _point(parser: argparse.ArgumentParser):
	parser.add_argument("--point", help="designated point name or rational (default: first ladder point)")


def _orbit(parser: argparse.ArgumentParser):
	parser.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN)
	parser.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
	parser.add_argument("--workers", type=int, default=1, help="threads evaluating each BFS frontier")
	_precision(parser)


def _precision(parser: argparse.ArgumentParser):
	parser.add_argument("--prec", default=format_rational(DEFAULT_EVAL_PREC), help="evaluation width")
	parser.add_argument("--dedup-tol", default=format_rational(DEFAULT_DEDUP_TOL), help="dedup distance")


def _classify(parser: argparse.ArgumentParser):
	parser.add_argument("--eps-dense", help="largest relative gap of a dense orbit")
	parser.add_argument("--min-points", type=int)
	parser.add_argument("--edge-margin", help="window margin, relative to component length")
	parser.add_argument("--isolation-radius")


def _resolution(parser: argparse.ArgumentParser):
	parser.add_argument("--resolution", default=format_rational(DEFAULT_RESOLUTION))


def configure_example(parser: argparse.ArgumentParser):
	parser.add_argument("name", help="catalog example")
	parser.add_argument("--param", action="append", metavar="KEY=VALUE", help="builder parameter; repeatable")
	parser.add_argument("--as-printed", action="store_true", help="semigroup: keep the maps as first published")
	parser.add_argument("--out", help="config file to write; printed when omitted")


def configure_orbit(parser: argparse.ArgumentParser):
	_system(parser)
	_point(parser)
	_orbit(parser)
	parser.add_argument("--out", help="orbit CSV to write")


def configure_classify(parser: argparse.ArgumentParser):
	_system(parser)
	_point(parser)
	_orbit(parser)
	_classify(parser)
	parser.add_argument("--budget-double", action="store_true", help="re-run at twice the budget")


def configure_level(parser: argparse.ArgumentParser):
	_system(parser)
	_point(parser)
	_orbit(parser)
	_classify(parser)
	parser.add_argument("--ladder", nargs="+", help="rungs in level order: designated names or rationals")


def configure_fixed_points(parser: argparse.ArgumentParser):
	_system(parser)
	_resolution(parser)
	parser.add_argument("--map", help="generator name (default: every generator)")


def configure_witness(parser: argparse.ArgumentParser):
	_system(parser, required=False)
	_resolution(parser)
	_precision(parser)
	parser.add_argument("--density", nargs=2, metavar=("X", "Y"), help="density witness in the Cantor example")
	parser.add_argument("--eps", default="1/729")


def configure_transport(parser: argparse.ArgumentParser):
	_system(parser)
	_point(parser)
	_orbit(parser)
	parser.add_argument("i", type=int)
	parser.add_argument("j", type=int)


def configure_plot(parser: argparse.ArgumentParser):
	_system(parser)
	parser.add_argument("--orbit", required=True, help="orbit CSV written by `orbit`")
	parser.add_argument("--out", required=True, help="SVG file to write")


CONFIGURE: dict[str, Callable[[argparse.ArgumentParser], None]] = {
	"example": configure_example,
	"orbit": configure_orbit,
	"classify": configure_classify,
	"level": configure_level,
	"fixed-points": configure_fixed_points,
	"witness": configure_witness,
	"transport": configure_transport,
	"plot": configure_plot,
}


def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(
		prog="homeo-orbits", description="Orbit experiments for groups of interval and circle homeomorphisms."
	)
	subparsers = parser.add_subparsers(dest="command", required=True)
	for name in get_hooks("commands"):
		CONFIGURE[name](subparsers.add_parser(name))
	return parser


def main(argv: list[str] | None = None) -> int:
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as e:
		return EXIT_OK if e.code in (0, None) else EXIT_USAGE_ERROR

	request = {k: v for k, v in vars(args).items() if v is not None}
	command = get_attr(get_hooks("commands")[args.command])
	try:
		result = command(args)
	except ConfigError as e:
		create_cli_log(status="Error", method=args.command, request_data=request, exception=e)
		print(f"error: {e.message}", file=sys.stderr)
		return EXIT_USAGE_ERROR
	except OSError as e:
		create_cli_log(status="Error", method=args.command, request_data=request, exception=e)
		print(f"error: {e}", file=sys.stderr)
		return EXIT_USAGE_ERROR
	except HomeoOrbitsError as e:
		create_cli_log(status="Error", method=args.command, request_data=request, exception=e)
		print(f"error: {e.message}", file=sys.stderr)
		return EXIT_DOMAIN_ERROR

	create_cli_log(status="Success", method=args.command, request_data=request)
	print(dumps(result))
	return EXIT_OK


if __name__ == "__main__":
	sys.exit(main())
