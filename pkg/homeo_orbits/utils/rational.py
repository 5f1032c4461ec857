import re
from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator

from homeo_orbits.exceptions import ConfigError, throw

RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value: Any) -> Fraction:
	"""Accept Fraction, int or "p/q" / decimal strings; floats are rejected to keep data exact."""
	if isinstance(value, Fraction):
		return value
	if isinstance(value, bool):
		throw(f"not a rational: {value!r}", ConfigError)
	if isinstance(value, int):
		return Fraction(value)
	if isinstance(value, str):
		match = RATIONAL_PATTERN.match(value)
		if match:
			numerator, denominator = match.groups()
			if denominator is not None and int(denominator) == 0:
				throw(f"zero denominator in {value!r}", ConfigError)
			return Fraction(int(numerator), int(denominator or 1))
		try:
			return Fraction(value.strip())
		except ValueError:
			pass
	throw(f"not a rational: {value!r}", ConfigError)


def format_rational(value: Fraction | int) -> str:
	value = Fraction(value)
	if value.denominator == 1:
		return str(value.numerator)
	return f"{value.numerator}/{value.denominator}"


def _validate_rational(value: Any) -> Fraction:
	try:
		return parse_rational(value)
	except ConfigError as e:
		# pydantic attaches the field location to ValueErrors only
		raise ValueError(e.message)


# pydantic field type: "p/q" strings, ints and Fractions in, "p/q" strings out
Rational = Annotated[
	Fraction,
	PlainValidator(_validate_rational),
	PlainSerializer(format_rational, return_type=str),
]
