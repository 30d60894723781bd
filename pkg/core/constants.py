from enum import Enum


class Mode(str, Enum):
    RATIONAL = 'rational'
    F64 = 'f64'


class Verdict(str, Enum):
    CERTIFIED = 'certified-polynomially-convex'
    CERTIFIED_FLOAT = 'certified-polynomially-convex (float)'
    INCONCLUSIVE = 'inconclusive'


class Side(str, Enum):
    PLUS = 'plus'
    MINUS = 'minus'


class Domain(str, Enum):
    INTERVAL = 'interval'
    CIRCLE = 'circle'


class HullKind(str, Enum):
    CURVE_ONLY = 'curve-only'
    POLYGON_WITH_INTERIOR = 'polygon-with-interior'
    PARAMETRIC_DISC = 'parametric-disc'
    EXPLICIT_UNION = 'explicit-union'


class DemoName(str, Enum):
    SLIT = 'slit'
    GRAPH = 'graph'
    KALLIN = 'kallin'
    TANGENT = 'tangent'


# Relative zero-test tolerance for float64 mode
DEFAULT_TOLERANCE = 1e-9

# Cap on seeded retries (direction sampling, offset sampling, projections)
RETRY_LIMIT = 64

# Cap on halvings in shrink schedules
SHRINK_LIMIT = 48

# Denominator bound used when float data (trig values, samples) is rationalized
DENOMINATOR_LIMIT = 2 ** 16

# Bits of precision for certified rational square-root bounds
SQRT_BITS = 64

# Hull-lab defaults
DEMO_VERTICES = 512
DEMO_SAMPLES = 512
SAMPLING_TOLERANCE_FACTOR = 10

# Exit statuses of the command layer
EXIT_MALFORMED = 1
EXIT_DOMAIN = 2
EXIT_RETRY = 3
