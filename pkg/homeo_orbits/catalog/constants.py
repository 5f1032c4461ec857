from fractions import Fraction

MODULE_NAME = "catalog"

# level-one ladder: z_0 = 1/2 and I_0 = [z_0, g0(z_0)]
BASE_POINT = Fraction(1, 2)
G0_BREAK = Fraction(1, 4)
LADDER_INTERVAL = (Fraction(1, 2), Fraction(2, 3))

CANTOR_EX1_DEFAULT_COUNT = 6
CANTOR_EX1_MAX_COUNT = 64

LEVEL_N_DEFAULT = 3
LEVEL_N_MAX = 5

LINE_VIEW = (Fraction(-3), Fraction(4))

SEMIGROUP_DEFAULTS = {
	"x1": Fraction(1, 8),
	"a0": Fraction(1, 4),
	"a1": Fraction(3, 8),
	"a2": Fraction(1, 2),
	"a3": Fraction(5, 8),
	"x2": Fraction(3, 4),
}
