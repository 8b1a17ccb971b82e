"""Shared numeric defaults and environment-driven settings."""

import os

# A singular/eigen value counts as zero when <= RANK_RTOL * largest value.
RANK_RTOL = 1e-10

# Least-squares residual threshold (relative) for accepting a sign-pattern
# reconstruction as an exact realizer.
REALIZE_RTOL = 1e-8

# Class-distance threshold (relative) separating y in {x, -x} from a genuine
# collision; well above least-squares noise at the residual threshold.
COLLISION_CLASS_RTOL = 1e-6

# Enumeration caps: complement-property subset pairs and sign patterns.
DEFAULT_SUBSET_CAP = 24
DEFAULT_SIGN_CAP = 20

# Phase-circle minimization defaults.
DEFAULT_GRID_SIZE = 4096
DEFAULT_THETA_WIDTH = 1e-10

# Convergence diagnostics defaults.
DEFAULT_TOL = 1e-6
DEFAULT_PREFIX = 200
DEFAULT_TRUNCATION = 50

SCHEMA_VERSION = "1"


def worker_count() -> int:
    """Worker cap for parallelizable loops, from PHASELENS_THREADS (default 1).

    Results are deterministic regardless of this value: parallel reductions
    merge in index order.
    """
    raw = os.environ.get("PHASELENS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
