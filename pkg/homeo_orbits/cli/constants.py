from fractions import Fraction

MODULE_NAME = "cli"

CSV_HEADER_LINE = "index,lo,hi,word\r\n"
CSV_FIELDS = ("index", "lo", "hi", "word")

SVG_SIZE = 512
GRAPH_SAMPLES = 512
MARKER_RADIUS = 2
DESIGNATED_MARKER_SIZE = 6
# graphs only need to be right to the pixel
PLOT_PREC = Fraction(1, 2**20)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2
