from enum import Enum
from fractions import Fraction

MODULE_NAME = "action"

DEFAULT_DEDUP_TOL = Fraction(1, 2**40)
DEFAULT_EVAL_PREC = Fraction(1, 2**42)
DEFAULT_RESOLUTION = Fraction(1, 2**20)

DEFAULT_MAX_WORD_LEN = 8
DEFAULT_MAX_POINTS = 2000

# incremental evaluation works at this fraction of the target precision
INCREMENTAL_PREC_DIVISOR = 2**12

# parents evaluated per batch before insertion
FRONTIER_CHUNK = 256

# witness intervals [1/2 - t, 1/2 + t] are grown through t = 1/4, 3/8, 7/16, ...
WITNESS_START_HALF_WIDTH = Fraction(1, 4)


class Condition(str, Enum):
	C1 = "C1"
	C2 = "C2"
