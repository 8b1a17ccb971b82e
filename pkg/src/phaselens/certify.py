"""Phase-retrieval certification: spark, complement property, falsifiers.

Two independent routes decide the real case:

* ``complement_property`` enumerates index subsets and rank-checks each side;
* ``falsify_by_sign_enumeration`` constructs explicit colliding pairs and
  verifies them directly through the magnitude map.

A certificate always carries a machine-checkable witness for a negative
verdict: either a failing subset (both spans deficient) or a colliding pair
(equal magnitude patterns, distinct classes).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from . import config, io
from .errors import (
    EnumerationCapExceeded,
    FieldError,
    IncompatibleVector,
    SingularTransformError,
)
from .frames import COMPLEX, REAL, ExplicitFrame, analysis_magnitudes
from .metrics import bures_distance_arrays
from .vectors import DenseVector, VectorRep


class Verdict(str, Enum):
    PHASE_RETRIEVAL = "phase_retrieval"
    NOT_PHASE_RETRIEVAL = "not_phase_retrieval"
    INCONCLUSIVE = "inconclusive"


class Method(str, Enum):
    COMPLEMENT_PROPERTY = "complement_property"
    FULL_SPARK_COUNT = "full_spark_count"
    SIGN_ENUMERATION = "sign_enumeration"
    NECESSARY_CONDITION_ONLY = "necessary_condition_only"


@dataclass(frozen=True)
class FailingSubset:
    """Index set sigma (1-based) with rank(sigma) < n and rank(sigma^c) < n."""

    indices: Tuple[int, ...]


@dataclass(frozen=True)
class CollidingPair:
    """Vectors with entrywise-equal magnitude patterns but distinct classes."""

    x: VectorRep
    y: VectorRep


Witness = Union[FailingSubset, CollidingPair]


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    method: Method
    frame_fingerprint: str
    witness: Optional[Witness] = None
    parameters: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        if isinstance(self.witness, FailingSubset):
            wit = {"type": "failing_subset", "indices": list(self.witness.indices)}
        elif isinstance(self.witness, CollidingPair):
            wit = {
                "type": "colliding_pair",
                "x": io.vector_to_json(self.witness.x),
                "y": io.vector_to_json(self.witness.y),
            }
        else:
            wit = None
        return {
            "schema_version": config.SCHEMA_VERSION,
            "verdict": self.verdict.value,
            "method": self.method.value,
            "witness": wit,
            "frame_fingerprint": self.frame_fingerprint,
            "parameters": dict(self.parameters),
        }


@dataclass(frozen=True)
class SparkResult:
    """Smallest dependent-subset size, or None when all columns are independent
    (only possible for m <= n).  The witness, when present, is the
    lexicographically smallest minimal dependent subset (1-based)."""

    spark: Optional[int]
    witness: Optional[Tuple[int, ...]]

    @property
    def all_independent(self) -> bool:
        return self.spark is None


def _subset_rank(frame: ExplicitFrame, indices, rank_rtol=config.RANK_RTOL) -> int:
    if len(indices) == 0:
        return 0
    sub = frame.matrix[[i - 1 for i in indices], :]
    sv = np.linalg.svd(sub, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rank_rtol * sv[0]))


def spark(frame: ExplicitFrame, rank_rtol=config.RANK_RTOL) -> SparkResult:
    """Size of the smallest linearly dependent column subset.

    Subsets are scanned by increasing size, lexicographically within a size,
    so the witness is deterministic.  Full spark surfaces as spark = n + 1
    (possible only when m >= n + 1); for m <= n with full rank the result is
    the all-independent marker.
    """
    m, n = frame.m, frame.dim
    for k in range(1, min(m, n) + 1):
        for combo in itertools.combinations(range(1, m + 1), k):
            if _subset_rank(frame, combo, rank_rtol) < k:
                return SparkResult(spark=k, witness=combo)
    if m <= n:
        return SparkResult(spark=None, witness=None)
    # every subset of size <= n is independent, so any n+1 columns form a
    # minimal dependent set; {1, ..., n+1} is the lexicographically smallest
    return SparkResult(spark=n + 1, witness=tuple(range(1, n + 2)))


def is_full_spark(frame: ExplicitFrame, rank_rtol=config.RANK_RTOL) -> bool:
    """True iff every n columns are linearly independent (requires m >= n)."""
    m, n = frame.m, frame.dim
    if m < n:
        raise IncompatibleVector(f"full spark needs m >= n, got m={m}, n={n}")
    for combo in itertools.combinations(range(1, m + 1), n):
        if _subset_rank(frame, combo, rank_rtol) < n:
            return False
    return True


def _complement_pairs(m: int):
    """Each unordered pair {sigma, sigma^c} exactly once: sigma contains index
    1, visited by increasing size then lexicographic order."""
    rest = range(2, m + 1)
    for size in range(1, m + 1):
        for tail in itertools.combinations(rest, size - 1):
            yield (1,) + tail


def complement_property(
    frame: ExplicitFrame,
    subset_cap: int = config.DEFAULT_SUBSET_CAP,
    rank_rtol: float = config.RANK_RTOL,
) -> Certificate:
    """Check that every index subset or its complement spans.

    Real field: the check is exact, verdict PhaseRetrieval / NotPhaseRetrieval.
    Complex field: the property is only necessary, so a holding check yields
    Inconclusive; a failing subset still refutes phase retrieval.
    """
    m, n = frame.m, frame.dim
    if m > subset_cap:
        raise EnumerationCapExceeded(f"m={m} exceeds subset cap {subset_cap}")
    params = {"tolerance": rank_rtol, "subset_cap": subset_cap}
    fp = io.frame_fingerprint(frame)
    for sigma in _complement_pairs(m):
        if _subset_rank(frame, sigma, rank_rtol) >= n:
            continue
        comp = tuple(i for i in range(1, m + 1) if i not in sigma)
        if _subset_rank(frame, comp, rank_rtol) >= n:
            continue
        return Certificate(
            verdict=Verdict.NOT_PHASE_RETRIEVAL,
            method=Method.COMPLEMENT_PROPERTY,
            frame_fingerprint=fp,
            witness=FailingSubset(sigma),
            parameters=params,
        )
    if frame.field == COMPLEX:
        return Certificate(
            verdict=Verdict.INCONCLUSIVE,
            method=Method.NECESSARY_CONDITION_ONLY,
            frame_fingerprint=fp,
            parameters=params,
        )
    return Certificate(
        verdict=Verdict.PHASE_RETRIEVAL,
        method=Method.COMPLEMENT_PROPERTY,
        frame_fingerprint=fp,
        parameters=params,
    )


def _sign_matrix(m: int) -> np.ndarray:
    """All sign patterns with the first sign fixed to +1, binary counting
    order (pattern epsilon and -epsilon give class-equal solutions)."""
    if m == 1:
        return np.ones((1, 1))
    tails = np.array(list(itertools.product((1.0, -1.0), repeat=m - 1)))
    return np.hstack([np.ones((tails.shape[0], 1)), tails])


def _is_collision(frame, x, y, realize_rtol, class_rtol) -> bool:
    ax = analysis_magnitudes(frame, x)
    ay = analysis_magnitudes(frame, y)
    scale = float(np.linalg.norm(ax))
    if scale == 0.0:
        return False
    if float(np.max(np.abs(ax - ay))) > realize_rtol * scale:
        return False
    xd, yd = frame.coerce(x), frame.coerce(y)
    return bures_distance_arrays(xd, yd) > class_rtol * np.linalg.norm(xd)


def _sign_collision_search(
    frame: ExplicitFrame,
    trials: int,
    seed: int,
    sign_cap: int,
    realize_rtol: float = config.REALIZE_RTOL,
    class_rtol: float = config.COLLISION_CLASS_RTOL,
) -> Optional[CollidingPair]:
    """Shared engine: random-sample phase, then structured null-space phase.

    The structured phase splits the index set by each sign pattern and builds
    x = u + v, y = u - v from the two orthocomplements; it catches frames
    whose colliding pairs form a measure-zero set, which random sampling
    cannot hit.
    """
    m, n = frame.m, frame.dim
    if m > sign_cap:
        raise EnumerationCapExceeded(f"m={m} exceeds sign cap {sign_cap}")
    v = frame.matrix
    signs = _sign_matrix(m)
    pinv = np.linalg.pinv(v.conj())
    rng = np.random.default_rng(seed)

    for _ in range(trials):
        if frame.field == REAL:
            x = rng.standard_normal(n)
        else:
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        c = np.abs(v.conj() @ x)
        targets = signs * c  # one row per sign pattern
        ys = targets @ pinv.T
        residuals = np.linalg.norm(targets - ys @ v.conj().T, axis=1)
        ok = residuals <= realize_rtol * np.linalg.norm(c)
        for row in np.flatnonzero(ok):
            y = ys[row]
            if bures_distance_arrays(x, y) > class_rtol * np.linalg.norm(x):
                return CollidingPair(DenseVector(x), DenseVector(y))

    for row in signs:
        neg = [j for j in range(m) if row[j] < 0]
        if not neg:
            continue
        pos = [j for j in range(m) if row[j] > 0]  # nonempty: first sign is +1
        u = _null_vector(v[neg, :])
        if u is None:
            continue
        w = _null_vector(v[pos, :])
        if w is None:
            continue
        x, y = u + w, u - w
        xv, yv = DenseVector(x), DenseVector(y)
        if _is_collision(frame, xv, yv, realize_rtol, class_rtol):
            return CollidingPair(xv, yv)
    return None


def _null_vector(rows: np.ndarray, rank_rtol=config.RANK_RTOL):
    """A unit vector orthogonal to all given rows, or None if they span."""
    n = rows.shape[1]
    _, sv, vh = np.linalg.svd(rows, full_matrices=True)
    rank = int(np.sum(sv > rank_rtol * sv[0])) if sv.size and sv[0] > 0 else 0
    if rank >= n:
        return None
    return vh[rank].conj()


def falsify_by_sign_enumeration(
    frame: ExplicitFrame,
    trials: int = 50,
    seed: int = 0,
    sign_cap: int = config.DEFAULT_SIGN_CAP,
) -> Optional[CollidingPair]:
    """Search for a colliding pair of a real frame.

    Per random x the 2^(m-1) sign patterns are applied to the magnitude
    pattern and solved in least squares; a solution with small residual and
    class distance above threshold is a collision.  A structured null-space
    phase follows, so every real frame failing the complement property yields
    a collision.  Returns None when no collision is found.
    """
    if frame.field != REAL:
        raise FieldError("sign-enumeration falsifier requires a real frame")
    return _sign_collision_search(frame, trials, seed, sign_cap)


def certify_phase_retrieval(
    frame: ExplicitFrame,
    subset_cap: int = config.DEFAULT_SUBSET_CAP,
    sign_cap: int = config.DEFAULT_SIGN_CAP,
    trials: int = 50,
    seed: int = 0,
    rank_rtol: float = config.RANK_RTOL,
) -> Certificate:
    """Full certification pipeline.

    Real field: the count bound m >= 2n-1 is checked first (violations are
    refuted immediately, preferably with a constructed colliding pair); the
    complement property is the exact decision otherwise.  Complex field: the
    complement property is necessary only, and the verdict stays Inconclusive
    unless a sign-pattern collision is found (complex phase relaxation is not
    attempted).
    """
    m, n = frame.m, frame.dim
    fp = io.frame_fingerprint(frame)
    params = {
        "tolerance": rank_rtol,
        "subset_cap": subset_cap,
        "sign_cap": sign_cap,
        "trials": trials,
        "seed": seed,
    }
    if frame.field == REAL and m < 2 * n - 1:
        pair = _sign_collision_search(frame, trials, seed, sign_cap)
        if pair is not None:
            return Certificate(
                verdict=Verdict.NOT_PHASE_RETRIEVAL,
                method=Method.NECESSARY_CONDITION_ONLY,
                frame_fingerprint=fp,
                witness=pair,
                parameters=params,
            )
        # fall through: complement property must also fail and provides a
        # failing-subset witness
    cert = complement_property(frame, subset_cap, rank_rtol)
    if frame.field == REAL or cert.verdict == Verdict.NOT_PHASE_RETRIEVAL:
        return Certificate(
            verdict=cert.verdict,
            method=cert.method,
            frame_fingerprint=fp,
            witness=cert.witness,
            parameters=params,
        )
    # complex, complement property holds: try a sign-only falsification
    pair = _sign_collision_search(frame, trials, seed, sign_cap)
    if pair is not None:
        return Certificate(
            verdict=Verdict.NOT_PHASE_RETRIEVAL,
            method=Method.SIGN_ENUMERATION,
            frame_fingerprint=fp,
            witness=pair,
            parameters=params,
        )
    return Certificate(
        verdict=Verdict.INCONCLUSIVE,
        method=Method.NECESSARY_CONDITION_ONLY,
        frame_fingerprint=fp,
        parameters=params,
    )


def transform_frame(frame: ExplicitFrame, u, rank_rtol=config.RANK_RTOL) -> ExplicitFrame:
    """{U phi_j} for an invertible operator U; preserves the PR verdict."""
    u = np.asarray(u)
    if u.shape != (frame.dim, frame.dim):
        raise IncompatibleVector(f"operator shape {u.shape} vs dim {frame.dim}")
    sv = np.linalg.svd(u, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= rank_rtol * sv[0]:
        raise SingularTransformError("operator is singular under the rank tolerance")
    new = frame.matrix @ u.T
    field_tag = frame.field
    if np.iscomplexobj(u):
        field_tag = COMPLEX
    return ExplicitFrame([DenseVector(row) for row in new], field=field_tag)
