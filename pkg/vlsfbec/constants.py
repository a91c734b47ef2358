import os

_CWD = os.getcwd()

PACKAGE_NAME = "vlsf-bec"
DEFAULT_CONFIG = f"{_CWD}/vlsf.yaml"
CONFIG_ROOT_KEY = "vlsf"

DEFAULT_SEED = 20240611
DEFAULT_TRIALS = 100_000
ACCEPTANCE_TRIALS = 1_000_000
DEFAULT_DELTA = 1e-3
DEFAULT_P = 0.1
DEFAULT_M_LIST = [1, 2, 4, 8, 16]

# trials per work unit, fixed so results do not depend on worker count
TRIAL_BLOCK_SIZE = 4096

RNG_ALGORITHM = "PCG64"
STREAM_ERASURE = 0
STREAM_COMMON = 1
STREAM_MESSAGE = 2

# sum_{j>=1} 1/(2^j - 1), OEIS A065442
ERDOS_BORWEIN = 1.606695152415291763

# series cross-checks stop once the per-term mass drops below this
TAIL_TOLERANCE = 1e-12
TAIL_MAX_STEPS = 1_000_000

Z_THRESHOLD = 4.0
CONFIDENCE_LEVEL = 0.95
# two sided coverage of |z| <= 4, used when a proportion decides pass or fail
CHECK_CONFIDENCE = 0.999936657516
MIN_COMPARE_TRIALS = 1000

CSV_FLOAT_FORMAT = "%.12g"
SVG_HASH_SALT = "vlsf-bec"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_MISMATCH = 3
