import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from homeo_orbits.action.orbit import OrbitSample
from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.cli.constants import CSV_FIELDS, CSV_HEADER_LINE
from homeo_orbits.exceptions import ConfigError, EvaluationError, throw
from homeo_orbits.homeo.constants import DEFAULT_PREC
from homeo_orbits.homeo.enclosure import Enclosure
from homeo_orbits.homeo.words import MapWord, eval_word
from homeo_orbits.utils.rational import format_rational, parse_rational


@dataclass
class OrbitRow:
	index: int
	lo: Fraction
	hi: Fraction
	word: str = ""

	@property
	def enclosure(self) -> Enclosure:
		return Enclosure(self.lo, self.hi)

	@property
	def value(self) -> Fraction:
		return (self.lo + self.hi) / 2

	def get_ordered_fields(self):
		return [
			self.index,
			format_rational(self.lo),
			format_rational(self.hi),
			self.word,
		]


def orbit_rows(sample: OrbitSample) -> list[OrbitRow]:
	return [
		OrbitRow(index, point.enclosure.lo, point.enclosure.hi, point.word.to_text())
		for index, point in enumerate(sample.points)
	]


def get_csv_content(rows: list[OrbitRow]) -> bytes:
	buffer = io.StringIO()
	writer = csv.writer(buffer, lineterminator="\r\n")

	for row in rows:
		writer.writerow(row.get_ordered_fields())

	csv_content = CSV_HEADER_LINE + buffer.getvalue()
	return csv_content.encode("utf-8")


def write_orbit_csv(sample: OrbitSample, path: str) -> int:
	rows = orbit_rows(sample)
	with open(path, "wb") as f:
		f.write(get_csv_content(rows))
	return len(rows)


def read_orbit_csv(path: str) -> list[OrbitRow]:
	"""Rows of an orbit CSV; an empty file reads as no rows."""
	with open(path, encoding="utf-8", newline="") as f:
		text = f.read()
	if not text.strip():
		return []

	reader = csv.reader(io.StringIO(text, newline=""))
	header = next(reader)
	if tuple(header) != CSV_FIELDS:
		throw(f"{path}: expected columns {','.join(CSV_FIELDS)}, got {','.join(header)}", ConfigError)

	rows = []
	for line, fields in enumerate(reader, start=2):
		if not fields:
			continue
		if len(fields) != len(CSV_FIELDS):
			throw(f"{path}, line {line}: expected {len(CSV_FIELDS)} fields, got {len(fields)}", ConfigError)
		index, lo, hi, word = fields
		try:
			row = OrbitRow(int(index), parse_rational(lo), parse_rational(hi), word)
		except ValueError:
			throw(f"{path}, line {line}: index {index!r} is not an integer", ConfigError)
		except ConfigError as e:
			throw(f"{path}, line {line}: {e.message}", ConfigError)
		if row.lo > row.hi:
			throw(f"{path}, line {line}: lo {lo} is above hi {hi}", ConfigError)
		rows.append(row)
	return rows


def verify_rows(
	system: GeneratorSystem, base: Fraction, rows: list[OrbitRow], prec: Fraction = DEFAULT_PREC
) -> list[int]:
	"""Indices of rows whose word, evaluated at base, misses the row's enclosure."""
	failed = []
	for row in rows:
		try:
			image = eval_word(system, MapWord.parse(row.word), base, prec)
		except EvaluationError:
			failed.append(row.index)
			continue
		if not image.overlaps(row.enclosure):
			failed.append(row.index)
	return failed
