from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, field_validator

from homeo_orbits.classify.constants import (
	DEFAULT_EDGE_MARGIN,
	DEFAULT_EPS_DENSE,
	DEFAULT_ISOLATION_RADIUS,
	DEFAULT_MIN_POINTS,
)
from homeo_orbits.exceptions import ConfigError, throw
from homeo_orbits.utils.rational import Rational, format_rational


class ClassifyParams(BaseModel):
	"""Thresholds of the classifier; eps_dense and edge_margin are fractions of a component's length."""

	model_config = ConfigDict(frozen=True)

	eps_dense: Rational = DEFAULT_EPS_DENSE
	min_points: int = Field(default=DEFAULT_MIN_POINTS, ge=1)
	edge_margin: Rational = DEFAULT_EDGE_MARGIN
	isolation_radius: Rational = DEFAULT_ISOLATION_RADIUS

	@field_validator("eps_dense", "edge_margin", "isolation_radius")
	@classmethod
	def positive(cls, value: Fraction) -> Fraction:
		if value <= 0:
			raise ValueError(f"must be positive, got {format_rational(value)}")
		return value

	@field_validator("edge_margin")
	@classmethod
	def below_half(cls, value: Fraction) -> Fraction:
		if value >= Fraction(1, 2):
			raise ValueError("an edge margin of half the component or more leaves no window")
		return value

	def check_sample(self, length: Fraction, dedup_tol: Fraction):
		if self.eps_dense * length <= 4 * dedup_tol:
			throw(
				f"eps_dense {format_rational(self.eps_dense)} is too fine for dedup tolerance {float(dedup_tol):.3g}",
				ConfigError,
			)
