from enum import Enum
from fractions import Fraction

MODULE_NAME = "cantor"

DIGITS = frozenset("02")

# ternary digits scanned before a rational with an enormous period is reported undetermined
MAX_EXPANSION_DIGITS = 100_000
DEFAULT_DEPTH = 40

# regions of the two-generator example
K0 = (Fraction(2, 9), Fraction(1, 3))
K0A = (Fraction(2, 9), Fraction(7, 27))
JSTAR = (Fraction(7, 27), Fraction(8, 27))
K0B = (Fraction(8, 27), Fraction(1, 3))
J0 = (Fraction(1, 3), Fraction(2, 3))

# f agrees with g below this point
F_EQUALS_G_BELOW = Fraction(2, 27)


class Tail(str, Enum):
	ALL_ZEROS = "all-zeros"
	ALL_TWOS = "all-twos"
	PERIODIC = "periodic"


class Region(str, Enum):
	K = "K"
	J = "J"
	K0A = "K0A"
	JSTAR = "JStar"
	K0B = "K0B"
