class HomeoOrbitsError(Exception):
	"""Base class of every domain error raised by homeo_orbits."""

	def __init__(self, message: str = ""):
		super().__init__(message)
		self.message = message


def throw(message: str, exc: type[HomeoOrbitsError] = HomeoOrbitsError):
	raise exc(message)


class ConfigError(HomeoOrbitsError):
	"""Config document could not be parsed or validated (usage error)."""


# maps
class MapValidationError(HomeoOrbitsError):
	pass


class OverlappingPieces(MapValidationError):
	pass


class GapInDomain(MapValidationError):
	pass


class NonMonotonePiece(MapValidationError):
	pass


class UnusableMap(MapValidationError):
	pass


class EvaluationError(HomeoOrbitsError):
	pass


class OutOfDomain(EvaluationError):
	pass


class InverseOfEndomorphism(EvaluationError):
	pass


class NotInImage(EvaluationError):
	pass


class NonAffineInput(EvaluationError):
	pass


class PrecisionLoss(EvaluationError):
	pass


class WordSyntaxError(ConfigError):
	pass


# cantor
class CantorError(HomeoOrbitsError):
	pass


class OutOfUnitInterval(CantorError):
	pass


class NotALeftEndpoint(CantorError):
	pass


class InvalidQuadruple(CantorError):
	pass


class PinOrderMismatch(CantorError):
	pass


class TerminalEdgeInput(CantorError):
	pass


# action
class ActionError(HomeoOrbitsError):
	pass


class PrecisionCollapse(ActionError):
	pass


class PNotInvariant(ActionError):
	pass


class NeitherConditionVerified(ActionError):
	pass


class BudgetExhausted(ActionError):
	pass


# classify
class ClassificationError(HomeoOrbitsError):
	pass


class BaseInP(ClassificationError):
	pass


class LadderPointCoincidesWithX(ClassificationError):
	pass


class XOnReferenceOrbit(ClassificationError):
	pass


# catalog
class CatalogError(HomeoOrbitsError):
	pass


class UnknownName(CatalogError):
	pass


class BadParams(CatalogError):
	pass
