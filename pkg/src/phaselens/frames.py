"""Frames, the frame operator, frame bounds, duals, and the magnitude map.

An ``ExplicitFrame`` stores m vectors of an n-dimensional space as the rows of
its synthesis matrix (transposed convention: ``matrix[i]`` is phi_i).  A
``PairwiseSumFrame`` is the structured family {e_i + e_j}_{i<j} on the sequence
space, truncated at a stated index N; truncation is exact for vectors
supported within the first N coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np

from . import config
from .errors import DimensionMismatch, FieldError, IncompatibleVector, NotAFrameError
from .vectors import (
    DenseVector,
    FiniteSupportVector,
    ReciprocalVector,
    VectorRep,
    as_rep,
)

REAL = "real"
COMPLEX = "complex"


class ExplicitFrame:
    """A finite family of dense vectors sharing a field and dimension."""

    def __init__(self, vectors, field: str = None):
        rows = []
        for v in vectors:
            v = as_rep(v)
            if isinstance(v, FiniteSupportVector):
                raise IncompatibleVector("explicit frame vectors must be dense")
            rows.append(np.asarray(v.coords))
        if not rows:
            raise IncompatibleVector("a frame needs at least one vector")
        dims = {r.shape[0] for r in rows}
        if len(dims) != 1:
            raise DimensionMismatch(f"frame vectors with mixed dimensions: {sorted(dims)}")
        mat = np.vstack(rows)
        any_complex = np.iscomplexobj(mat)
        if field is None:
            field = COMPLEX if any_complex else REAL
        if field not in (REAL, COMPLEX):
            raise FieldError(f"unknown field {field!r}")
        if field == REAL:
            if any_complex and np.max(np.abs(mat.imag)) != 0.0:
                raise FieldError("real frame with nonzero imaginary parts")
            self.matrix = np.real(mat).astype(np.float64)
        else:
            self.matrix = mat.astype(np.complex128)
        self.field = field

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def vector(self, j: int) -> DenseVector:
        """1-based access to phi_j."""
        return DenseVector(self.matrix[j - 1])

    def coerce(self, x) -> np.ndarray:
        """Dense coordinates of x in this frame's ambient space."""
        x = as_rep(x)
        if isinstance(x, ReciprocalVector):
            raise IncompatibleVector("reciprocal vector does not live in a finite-dimensional space")
        if isinstance(x, FiniteSupportVector):
            x = x.to_dense(self.dim)
        if x.dim != self.dim:
            raise DimensionMismatch(f"vector dim {x.dim} vs frame dim {self.dim}")
        if self.field == REAL and np.iscomplexobj(x.coords) and np.max(np.abs(x.coords.imag)) != 0.0:
            raise FieldError("complex vector against a real frame")
        return x.coords

    def __repr__(self):
        return f"ExplicitFrame(m={self.m}, dim={self.dim}, field={self.field!r})"


class PairwiseSumFrame:
    """{e_i + e_j}_{i<j<=N} on the sequence space, lexicographic (i, j) order."""

    def __init__(self, truncation: int):
        if truncation < 2:
            raise IncompatibleVector("pairwise-sum truncation must be >= 2")
        self.truncation = int(truncation)
        self.field = REAL

    @property
    def m(self) -> int:
        n = self.truncation
        return n * (n - 1) // 2

    def pairs(self) -> Iterator[Tuple[int, int]]:
        n = self.truncation
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                yield (i, j)

    def pair(self, idx: int) -> Tuple[int, int]:
        """1-based functional index -> its (i, j) pair."""
        for k, p in enumerate(self.pairs(), start=1):
            if k == idx:
                return p
        raise IndexError(idx)

    def check_exact(self, x: VectorRep) -> bool:
        """True when the truncated index set sees all of x (zero tail)."""
        x = as_rep(x)
        if isinstance(x, FiniteSupportVector):
            return x.max_support <= self.truncation
        if isinstance(x, DenseVector):
            return x.dim <= self.truncation or not np.any(x.coords[self.truncation:])
        return False  # reciprocal has an infinite tail

    def entries(self, x) -> np.ndarray:
        """First-N sequence entries of x."""
        x = as_rep(x)
        if isinstance(x, (DenseVector, FiniteSupportVector, ReciprocalVector)):
            return np.array([x.entry(k) for k in range(1, self.truncation + 1)])
        raise IncompatibleVector(type(x).__name__)

    def __repr__(self):
        return f"PairwiseSumFrame(truncation={self.truncation})"


Frame = Union[ExplicitFrame, PairwiseSumFrame]


@dataclass(frozen=True)
class FrameBounds:
    """Extreme frame-operator eigenvalues: 0 < lower <= upper."""

    lower: float
    upper: float


def analysis_magnitudes(frame: Frame, x) -> np.ndarray:
    """The magnitude pattern {|<x, phi_i>|}, indexed like the frame."""
    x = as_rep(x)
    if isinstance(frame, ExplicitFrame):
        coords = frame.coerce(x)
        return np.abs(frame.matrix.conj() @ coords)
    ent = frame.entries(x)
    out = np.empty(frame.m)
    for k, (i, j) in enumerate(frame.pairs()):
        out[k] = abs(ent[i - 1] + ent[j - 1])
    return out


def frame_operator(frame: ExplicitFrame) -> np.ndarray:
    """S = sum_j phi_j phi_j*; Hermitian positive semidefinite."""
    _require_explicit(frame)
    v = frame.matrix
    s = v.T @ v.conj()
    return (s + s.conj().T) / 2.0  # symmetrize away rounding


def frame_bounds(frame: ExplicitFrame, rank_rtol: float = config.RANK_RTOL) -> FrameBounds:
    """Optimal bounds A = lambda_min(S), B = lambda_max(S).

    Raises NotAFrameError when the family fails to span under the tolerance.
    """
    s = frame_operator(frame)
    eigs = np.linalg.eigvalsh(s)
    lo, hi = float(eigs[0]), float(eigs[-1])
    if hi <= 0.0 or lo <= rank_rtol * hi:
        raise NotAFrameError(
            f"smallest frame-operator eigenvalue {lo:.3e} is numerically zero"
        )
    return FrameBounds(lower=lo, upper=hi)


def canonical_dual(frame: ExplicitFrame, rank_rtol: float = config.RANK_RTOL) -> ExplicitFrame:
    """The dual family {S^{-1} phi_j}; reconstruction x = sum <x,phi_j> S^{-1}phi_j."""
    frame_bounds(frame, rank_rtol)  # spanning check
    s = frame_operator(frame)
    dual = np.linalg.solve(s, frame.matrix.T).T
    return ExplicitFrame([DenseVector(row) for row in dual], field=frame.field)


def _require_explicit(frame):
    if not isinstance(frame, ExplicitFrame):
        raise IncompatibleVector("operation requires an explicit finite frame")
