from enum import Enum
from fractions import Fraction

MODULE_NAME = "homeo"

DEFAULT_PREC = Fraction(1, 2**42)
VALIDATION_TOL = Fraction(1, 10**30)
VALIDATION_PREC = Fraction(1, 10**32)

# exact values above this denominator size are rounded onto the working grid
EXACT_DENOMINATOR_BITS = 1024

INNER_PREC_DIVISOR = 16
REFINEMENT_FACTOR = 2**16
MAX_REFINEMENTS = 4

MAX_SYLLABLE = 10**6
TEXT_EXPAND_LIMIT = 64

MAX_BISECTION_CELLS = 200_000


class DomainKind(str, Enum):
	INTERVAL = "interval"
	CIRCLE = "circle"
	LINE = "line"


class FixedPointKind(str, Enum):
	CERTIFIED = "certified"
	POSSIBLE = "possible"
	INTERVAL = "interval"
	# bisection stopped at its cell cap before the cell shrank to the resolution
	UNRESOLVED = "unresolved"
