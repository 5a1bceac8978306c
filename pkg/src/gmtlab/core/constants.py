from pathlib import Path

APP_NAME = "gmtlab"
CONFIG_DIR_NAME = f".{APP_NAME}"
CONFIG_LOG_DIR = Path(f"{CONFIG_DIR_NAME}/logs")

VOXEL_FILE_MAGIC = "GMTVOX1"

# Unit normals and divergence identity on exact patches
UNIT_NORMAL_TOLERANCE = 1e-9
CLOSED_PATCH_TOLERANCE = 1e-9

# Below this many facets inside a ball, extracted excess is discretization noise
MIN_TRUSTED_FACETS = 8

# Multiscale cylindrical excess slack when testing the sigma threshold
SIGMA_SLACK = 1e-12

# Default bound on the excess for the small-excess statements (Caccioppoli, tilt)
SMALL_EXCESS_THRESHOLD = 0.05

# Cells kept between a certification window and the edge of the grid; covers
# the reach check and the order-16 neighbourhood
WINDOW_HALO_CELLS = 4

# Cut weights are scaled so that the largest one maps to this integer
CUT_WEIGHT_RESOLUTION = 1_000_000_000

EXIT_OK = 0
EXIT_THRESHOLD_VIOLATED = 1
EXIT_INPUT_ERROR = 2

# Calibrated bounds used as CLI pass thresholds
CACCIOPPOLI_BOUND = 20.0
TILT_DIRICHLET_FACTOR = 4.0

# epsilon(delta) = factor * delta^2, from the circle family: at radius r a circle
# of radius R has excess (r/R)^2 / 3 and Reifenberg delta r / (4R) (sub-balls up to r/2)
CIRCLE_EXCESS_PER_DELTA_SQUARED = 16 / 3
