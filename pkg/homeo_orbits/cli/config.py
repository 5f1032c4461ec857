import json
from fractions import Fraction
from functools import lru_cache
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer, field_validator, model_validator

from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.cantor.address import CantorAddress
from homeo_orbits.cantor.split import SplitHomeo, SplitHomeoSpec
from homeo_orbits.catalog import ExampleSpec, build_example
from homeo_orbits.exceptions import ConfigError, HomeoOrbitsError, throw
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.maps import PiecewiseMap, validate_map, validated
from homeo_orbits.homeo.pieces import AffinePiece, CantorAlignedPiece, Piece, PowerPiece
from homeo_orbits.utils.log import dumps
from homeo_orbits.utils.rational import RATIONAL_PATTERN, Rational, format_rational


def _jsonable(value: Any) -> Any:
	if isinstance(value, Fraction):
		return format_rational(value)
	if isinstance(value, dict):
		return {str(k): _jsonable(v) for k, v in value.items()}
	if isinstance(value, list | tuple):
		return [_jsonable(v) for v in value]
	return value


def _restore(value: Any) -> Any:
	"""Inverse of _jsonable: rational strings become Fractions again."""
	if isinstance(value, str) and RATIONAL_PATTERN.match(value):
		numerator, _, denominator = value.partition("/")
		if not denominator or int(denominator):
			return Fraction(int(numerator), int(denominator or 1))
	if isinstance(value, dict):
		return {k: _restore(v) for k, v in value.items()}
	if isinstance(value, list):
		return [_restore(v) for v in value]
	return value


class AffinePieceConfig(BaseModel):
	model_config = ConfigDict(extra="forbid")

	kind: Literal["affine"] = "affine"
	lo: Rational | None = None
	hi: Rational | None = None
	slope: Rational
	offset: Rational

	def to_piece(self) -> Piece:
		return AffinePiece(self.lo, self.hi, self.slope, self.offset)


class PowerPieceConfig(BaseModel):
	"""x -> c * ((x - a) / s)^e + b."""

	model_config = ConfigDict(extra="forbid")

	kind: Literal["power"] = "power"
	lo: Rational | None = None
	hi: Rational | None = None
	c: Rational
	a: Rational
	b: Rational
	e: Rational
	s: Rational = Fraction(1)

	def to_piece(self) -> Piece:
		return PowerPiece(self.lo, self.hi, c=self.c, a=self.a, b=self.b, e=self.e, s=self.s)


class CantorSplitPieceConfig(BaseModel):
	"""Split homeomorphism from the copy of C on [lo, hi] onto the copy on target."""

	model_config = ConfigDict(extra="forbid")

	kind: Literal["cantor-split"] = "cantor-split"
	lo: Rational = Fraction(0)
	hi: Rational = Fraction(1)
	# defaults to [lo, hi]
	target: tuple[Rational, Rational] | None = None
	pins: list[tuple[str, str]] = Field(default_factory=list)

	@field_validator("pins")
	@classmethod
	def _check_addresses(cls, pins):
		for pin in pins:
			for text in pin:
				try:
					CantorAddress.parse(text)
				except ConfigError as e:
					raise ValueError(e.message)
		return pins

	def spec(self) -> SplitHomeoSpec:
		return SplitHomeoSpec(
			source=(self.lo, self.hi),
			target=self.target or (self.lo, self.hi),
			pins=tuple((CantorAddress.parse(p), CantorAddress.parse(q)) for p, q in self.pins),
		)

	def to_piece(self) -> Piece:
		return CantorAlignedPiece(self.lo, self.hi, SplitHomeo(self.spec()))


class CatalogPieceConfig(BaseModel):
	"""A generator of a catalog system, built when the system is first needed."""

	model_config = ConfigDict(extra="forbid")

	kind: Literal["catalog"] = "catalog"
	example: str
	generator: str
	params: dict[str, Any] = Field(default_factory=dict)

	def to_map(self, name: str) -> PiecewiseMap:
		system = _catalog_system(self.example, json.dumps(_jsonable(self.params), sort_keys=True))
		if self.generator not in system.generators:
			throw(f"{self.example} has no generator {self.generator!r}", ConfigError)
		m = system.generators[self.generator]
		if m.name != name:
			throw(f"catalog generator {m.name} cannot be renamed to {name}", ConfigError)
		return m


@lru_cache(maxsize=32)
def _catalog_system(example: str, params: str) -> GeneratorSystem:
	return build_example(ExampleSpec(name=example, params=json.loads(params)))


PieceConfig = Annotated[
	AffinePieceConfig | PowerPieceConfig | CantorSplitPieceConfig | CatalogPieceConfig,
	Field(discriminator="kind"),
]


class GeneratorConfig(BaseModel):
	model_config = ConfigDict(extra="forbid")

	name: str
	core: tuple[Rational, Rational] | None = None
	period: Rational | None = None
	pieces: list[PieceConfig] = Field(min_length=1)

	@model_validator(mode="after")
	def _catalog_stands_alone(self):
		if len(self.pieces) > 1 and any(isinstance(p, CatalogPieceConfig) for p in self.pieces):
			raise ValueError("a catalog piece must be the only piece of its generator")
		return self

	def to_map(self, domain_kind: DomainKind, invertible: bool) -> PiecewiseMap:
		first = self.pieces[0]
		if isinstance(first, CatalogPieceConfig):
			m = first.to_map(self.name)
			if m.domain_kind is not domain_kind:
				throw(f"catalog generator {self.name} acts on the {m.domain_kind.value}", ConfigError)
			return m

		m = PiecewiseMap(
			self.name,
			tuple(piece.to_piece() for piece in self.pieces),
			domain_kind,
			core=self.core,
			period=self.period,
		)
		if invertible:
			return validated(m)
		return validate_map(m, strict=False).map


class SystemConfig(BaseModel):
	"""File form of a GeneratorSystem."""

	model_config = ConfigDict(extra="forbid")

	name: str
	domain_kind: DomainKind = DomainKind.INTERVAL
	invertible: bool = True
	generators: list[GeneratorConfig] = Field(min_length=1)
	designated_points: dict[str, Rational] = Field(default_factory=dict)
	ladder: list[str] = Field(default_factory=list)
	finite_orbit_points: list[Rational] = Field(default_factory=list)
	view: tuple[Rational, Rational] | None = None
	notes: list[str] = Field(default_factory=list)
	# builder parameters; rationals are written as "p/q" strings
	params: dict[str, Any] = Field(default_factory=dict)
	source: ExampleSpec | None = None

	@field_validator("generators")
	@classmethod
	def _unique_names(cls, generators):
		seen = set()
		for generator in generators:
			if generator.name in seen:
				raise ValueError(f"generator {generator.name!r} is declared twice")
			seen.add(generator.name)
		return generators

	@field_validator("params")
	@classmethod
	def _restore_params(cls, params):
		return _restore(params)

	@field_serializer("params")
	def _dump_params(self, params):
		return _jsonable(params)

	@field_serializer("source")
	def _dump_source(self, source):
		if source is None:
			return None
		return {"name": source.name, "params": _jsonable(source.params)}

	@classmethod
	def from_system(cls, system: GeneratorSystem, source: ExampleSpec | None = None) -> "SystemConfig":
		"""Describe system; generators without an explicit form refer back to the catalog source."""
		generators = []
		for name, m in system.generators.items():
			pieces = _piece_configs(m)
			if pieces is None:
				if source is None:
					throw(f"{system.name}: generator {name} has no file form and no catalog source", ConfigError)
				pieces = [CatalogPieceConfig(example=source.name, generator=name, params=_jsonable(source.params))]
			generators.append(GeneratorConfig(name=name, core=m.core, period=m.period, pieces=pieces))

		return cls(
			name=system.name,
			domain_kind=system.domain_kind,
			invertible=system.invertible,
			generators=generators,
			designated_points=dict(system.designated_points),
			ladder=list(system.ladder),
			finite_orbit_points=list(system.finite_orbit_points),
			view=system.view,
			notes=list(system.notes),
			params=dict(system.params),
			source=source,
		)

	def to_system(self) -> GeneratorSystem:
		generators = {}
		for index, generator in enumerate(self.generators):
			try:
				generators[generator.name] = generator.to_map(self.domain_kind, self.invertible)
			except ConfigError as e:
				throw(f"generators.{index}: {e.message}", ConfigError)
			except HomeoOrbitsError as e:
				throw(f"generators.{index} ({generator.name}): {e.message}", ConfigError)

		return GeneratorSystem(
			self.name,
			generators,
			invertible=self.invertible,
			designated_points=self.designated_points,
			ladder=tuple(self.ladder),
			finite_orbit_points=tuple(self.finite_orbit_points),
			view=self.view,
			notes=tuple(self.notes),
			params=self.params,
		)

	def to_json(self) -> str:
		return dumps(self.model_dump(mode="json"))


def _piece_configs(m: PiecewiseMap) -> list | None:
	if all(type(piece) in (AffinePiece, PowerPiece) for piece in m.pieces):
		configs = []
		for piece in m.pieces:
			if isinstance(piece, AffinePiece):
				configs.append(AffinePieceConfig(lo=piece.lo, hi=piece.hi, slope=piece.slope, offset=piece.offset))
			else:
				configs.append(
					PowerPieceConfig(lo=piece.lo, hi=piece.hi, c=piece.c, a=piece.a, b=piece.b, e=piece.e, s=piece.s)
				)
		return configs

	if len(m.pieces) == 1 and isinstance(m.pieces[0], CantorAlignedPiece):
		evaluator = m.pieces[0].evaluator
		if isinstance(evaluator, SplitHomeo) and m.domain_kind is DomainKind.INTERVAL:
			spec = evaluator.spec
			return [
				CantorSplitPieceConfig(
					lo=spec.source[0],
					hi=spec.source[1],
					target=None if spec.target == spec.source else spec.target,
					pins=[(str(p), str(q)) for p, q in spec.pins],
				)
			]
	return None


def config_errors(e: ValidationError) -> str:
	"""One line per pydantic error, each starting with its location path."""
	lines = []
	for error in e.errors():
		location = ".".join(str(part) for part in error["loc"]) or "document"
		lines.append(f"{location}: {error['msg']}")
	return "; ".join(lines)


def parse_system_config(text: str) -> SystemConfig:
	try:
		return SystemConfig.model_validate_json(text)
	except ValidationError as e:
		throw(config_errors(e), ConfigError)


def load_system(path: str) -> tuple[SystemConfig, GeneratorSystem]:
	with open(path, encoding="utf-8") as f:
		config = parse_system_config(f.read())
	return config, config.to_system()


def save_system(config: SystemConfig, path: str) -> None:
	with open(path, "w", encoding="utf-8") as f:
		f.write(config.to_json() + "\n")
