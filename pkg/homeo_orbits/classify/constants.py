from enum import Enum
from fractions import Fraction

MODULE_NAME = "classify"

# relative to the component length
DEFAULT_EPS_DENSE = Fraction(1, 64)
DEFAULT_EDGE_MARGIN = Fraction(1, 32)

DEFAULT_ISOLATION_RADIUS = Fraction(1, 2**20)
DEFAULT_MIN_POINTS = 500

# large gaps are counted at eps_dense / 2^k for k below this
GAP_SCALES = 3
CANTOR_MIN_OSCILLATION = Fraction(1, 6)

# an orbit accumulates on q when it has points within isolation_radius of q and in each
# annulus (r 2^j, r 2^(j+1)] for j below this
ACCUMULATION_SCALES = 4

CLUSTER_SUMMARY_LIMIT = 16


class Verdict(str, Enum):
	DENSE = "Dense"
	INTEGER_TYPE = "IntegerType"
	CANTOR_TYPE = "CantorType"
	ACCUMULATES_ON_PROPER_SUBSET = "AccumulatesOnProperSubset"
	INCONCLUSIVE = "Inconclusive"


LEVEL_ONE_VERDICTS = (Verdict.DENSE, Verdict.INTEGER_TYPE, Verdict.CANTOR_TYPE)


class ParallelVerdict(str, Enum):
	PARALLEL = "Parallel"
	NOT_PARALLEL = "NotParallel"
	INCONCLUSIVE = "Inconclusive"
