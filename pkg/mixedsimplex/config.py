"""Runtime settings and numeric tolerances.

Settings are read from the environment once, at import time. Functions read
them through the module (``config.MAX_K``) so tests can monkeypatch them.
"""

from __future__ import annotations

import logging
import os

logger = logging.getLogger("config")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r (default=%s)", name, raw, default)
        return default


# Full-lattice enumeration cap (2^K - 1 faces)
MAX_K = _env_int("MIXEDSIMPLEX_MAX_K", 24)
# Automata determinize over up to 2^K - 1 face atoms
MAX_K_AUTOMATA = _env_int(
    "MIXEDSIMPLEX_MAX_K_AUTOMATA", MAX_K if os.getenv("MIXEDSIMPLEX_MAX_K") else 20
)

LOG_FILE = os.getenv("MIXEDSIMPLEX_LOG_FILE") or None
LOG_LEVEL = os.getenv("MIXEDSIMPLEX_LOG_LEVEL", "WARNING").upper()

CHUNK_SIZE = max(1, _env_int("MIXEDSIMPLEX_CHUNK_SIZE", 65536))
WORKERS = max(1, _env_int("MIXEDSIMPLEX_WORKERS", 1))

DEFAULT_SEED = 0

SUM_TOL = 1e-12
RENORMALIZE_TOL = 1e-9
DEFAULT_FACE_TOL = 1e-9
ALPHA_ONE_TOL = 1e-6
TIE_TOL = 1e-12
BISECTION_TOL = 1e-14
BISECTION_MAX_ITER = 200
GUMBEL_EPS = 1e-300
MASS_TOL = 1e-10
MIN_EMPIRICAL_SAMPLES = 1000
MAX_PROJECTIONS = 10**6
