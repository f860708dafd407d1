"""Quantum states: kets, rank-1 projections, density operators, Bell states.

Basis convention: ``|0> = (1, 0)``, and two-qubit kets are ordered
``|00>, |01>, |10>, |11>`` to agree with :func:`qpm.cxmat.tensor`.

Separable states (convex combinations of product states) are not given a
decision procedure here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from . import cxmat
from .cxmat import DEFAULT_TOL, _freeze, cmatrix, cvector
from .errors import DimensionError, ValidationError

KET0 = cvector([1, 0])
KET1 = cvector([0, 1])
KET_PLUS = cvector([1 / math.sqrt(2), 1 / math.sqrt(2)])
KET_MINUS = cvector([1 / math.sqrt(2), -1 / math.sqrt(2)])


@dataclass(frozen=True)
class DensityOperator:
    """A positive, trace-one operator. Validated on construction."""

    mat: np.ndarray

    def __post_init__(self):
        mat = cmatrix(self.mat)
        if mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"density operator must be square, got {mat.shape}")
        if not cxmat.is_hermitian(mat, DEFAULT_TOL):
            raise ValidationError("density operator is not hermitian", clause="hermitian")
        if not cxmat.is_positive(mat, DEFAULT_TOL):
            raise ValidationError("density operator is not positive", clause="positive")
        tr = cxmat.trace(mat)
        if abs(tr - 1) > DEFAULT_TOL:
            raise ValidationError(f"density operator has trace {tr:.12g}, expected 1", clause="trace")
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DensityOperator):
            return NotImplemented
        return np.array_equal(self.mat, other.mat)

    __hash__ = None


class BellKind(enum.Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """<u, v> = sum conj(u_i) v_i."""
    if u.shape != v.shape:
        raise DimensionError(f"cannot take inner product of dims {u.shape} and {v.shape}")
    return complex(np.vdot(u, v))


def norm(v: np.ndarray) -> float:
    return math.sqrt(inner(v, v).real)


def rank1proj(v: np.ndarray) -> np.ndarray:
    """|v><v| for a unit vector ``v``."""
    v = cvector(v)
    nv = norm(v)
    if abs(nv - 1) > DEFAULT_TOL:
        raise ValidationError(f"vector is not normalized: |v| = {nv:.12g}", clause="normalized")
    p = np.outer(v, v.conj())
    # exact hermitian symmetry; the raw outer product can carry roundoff on the diagonal
    return _freeze((p + p.conj().T) / 2)


def pure_state(v: np.ndarray) -> DensityOperator:
    return DensityOperator(rank1proj(v))


def ensemble_density(ps: Sequence[float], vs: Sequence[np.ndarray]) -> DensityOperator:
    """sum_i p_i |v_i><v_i| for a probability vector ``ps`` and unit kets ``vs``."""
    if len(ps) != len(vs) or not ps:
        raise ValidationError("ensemble needs one weight per vector and at least one member", clause="weights")
    if any(p < 0 for p in ps):
        raise ValidationError("ensemble weights must be non-negative", clause="weights")
    if abs(math.fsum(ps) - 1) > DEFAULT_TOL:
        raise ValidationError(f"ensemble weights sum to {math.fsum(ps):.12g}, expected 1", clause="weights")
    dims = {len(v) for v in vs}
    if len(dims) != 1:
        raise DimensionError(f"ensemble vectors have mixed dimensions {sorted(dims)}")
    return DensityOperator(sum(p * rank1proj(v) for p, v in zip(ps, vs)))


def max_mixed(n: int) -> DensityOperator:
    """The maximally mixed state I/n."""
    if n < 1:
        raise ValueError("n must be positive")
    return DensityOperator(np.eye(n) / n)


_SQ = 1 / math.sqrt(2)
_BELL = {
    BellKind.PHI_PLUS: (_SQ, 0, 0, _SQ),
    BellKind.PHI_MINUS: (_SQ, 0, 0, -_SQ),
    BellKind.PSI_PLUS: (0, _SQ, _SQ, 0),
    BellKind.PSI_MINUS: (0, _SQ, -_SQ, 0),
}


def bell_state(kind: BellKind) -> np.ndarray:
    return cvector(_BELL[BellKind(kind)])


def evolve(rho: DensityOperator, u: np.ndarray) -> DensityOperator:
    """rho -> U rho U^dagger."""
    u = cmatrix(u)
    if u.shape != rho.mat.shape:
        raise DimensionError(f"unitary of shape {u.shape} does not act on a {rho.dim}-dim state")
    if not cxmat.is_unitary(u):
        raise ValidationError("evolution operator is not unitary", clause="unitary")
    return DensityOperator(u @ rho.mat @ u.conj().T)


def compose(rhos: Sequence[DensityOperator]) -> DensityOperator:
    """Joint state of independent subsystems: rho_1 (x) rho_2 (x) ..."""
    if not rhos:
        raise ValueError("compose needs at least one state")
    return DensityOperator(reduce(cxmat.tensor, (r.mat for r in rhos)))
