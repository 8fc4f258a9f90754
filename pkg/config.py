# config.py
import logging
import os

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# .env in the working directory, if present
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("%s=%r is not an integer, using %d", name, raw, default)
        return default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning("%s=%r is not a number, using %g", name, raw, default)
        return default


# Highest level accepted by CDElement (dim 2^8 = 256)
MAX_LEVEL = _env_int("CD_MAX_LEVEL", 8)

CLUSTER_TOL = _env_float("CD_CLUSTER_TOL", 1e-7)
ZD_TOL = _env_float("CD_ZD_TOL", 1e-8)
ZERO_CLAMP = _env_float("CD_ZERO_CLAMP", 1e-9)

# "eigh" (LAPACK) or "jacobi"
EIGEN_SOLVER = (os.getenv("CD_EIGEN_SOLVER") or "eigh").strip().lower()
JACOBI_MAX_SWEEPS = _env_int("CD_JACOBI_MAX_SWEEPS", 60)

# Eigensolves above this dimension log a cost warning
COST_WARNING_DIM = 128

PRODUCT_CHUNK = max(1, _env_int("CD_PRODUCT_CHUNK", 32))
WORKERS = max(1, _env_int("CD_WORKERS", 1))

LOG_LEVEL = (os.getenv("CD_LOG_LEVEL") or "INFO").strip().upper()
