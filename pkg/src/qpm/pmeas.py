"""Projective measurements over density operators.

A measurement is a list of ``(value, projector)`` outcomes with distinct values
and pairwise orthogonal projectors that sum to the identity. ``make_pm`` builds
one from an observable by grouping its eigenvectors; ``reconstruct`` inverts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import cxmat
from .cxmat import DEFAULT_TOL, cmatrix, frob
from .errors import DimensionError, NumericalIntegrityError, ValidationError
from .qstate import DensityOperator, max_mixed
from .spectral import eig_hermitian, group_spectrum

IMAG_TOL = 1e-10
CLAMP_TOL = 1e-12
ZERO_PROB = 1e-12


@dataclass(frozen=True)
class MeasureOutcome:
    value: float
    proj: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "proj", cmatrix(self.proj))


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Use :func:`validate_pm` or :func:`make_pm` to build one."""

    dim: int
    outcomes: tuple[MeasureOutcome, ...]

    def __len__(self):
        return len(self.outcomes)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(o.value for o in self.outcomes)

    def index_of(self, value: float) -> int:
        return self.values.index(value)


def validate_pm(dim: int, outcomes: Sequence[MeasureOutcome]) -> ProjectiveMeasurement:
    """Check every clause of the projective measurement predicate.

    Raises ``ValidationError`` whose ``clause`` is the first violated one:
    ``empty``, ``distinct``, ``dimension``, ``projector``, ``orthogonal`` or
    ``complete``.
    """
    outcomes = tuple(o if isinstance(o, MeasureOutcome) else MeasureOutcome(*o) for o in outcomes)
    if dim < 1 or not outcomes:
        raise ValidationError("a measurement needs a positive dimension and at least one outcome", "empty")
    values = [o.value for o in outcomes]
    if len(set(values)) != len(values):
        raise ValidationError(f"outcome values are not pairwise distinct: {values}", "distinct")
    for i, o in enumerate(outcomes):
        if o.proj.shape != (dim, dim):
            raise ValidationError(f"outcome {i} projector has shape {o.proj.shape}, expected ({dim}, {dim})", "dimension")
    for i, o in enumerate(outcomes):
        if not cxmat.is_projector(o.proj, DEFAULT_TOL):
            raise ValidationError(f"outcome {i} is not an orthogonal projector", "projector")
    for i in range(len(outcomes)):
        for j in range(i + 1, len(outcomes)):
            r = frob(outcomes[i].proj @ outcomes[j].proj)
            if r > DEFAULT_TOL:
                raise ValidationError(f"projectors {i} and {j} are not orthogonal (|PiPj| = {r:.3e})", "orthogonal")
    r = frob(sum(o.proj for o in outcomes) - np.eye(dim))
    if r > DEFAULT_TOL:
        raise ValidationError(f"projectors do not sum to the identity (residual {r:.3e})", "complete")
    return ProjectiveMeasurement(dim, outcomes)


def _real_trace(m: np.ndarray, what: str) -> float:
    t = complex(np.trace(m))
    if abs(t.imag) > IMAG_TOL:
        raise NumericalIntegrityError(f"{what} has imaginary part {t.imag:.3e}")
    return t.real


def _check_dims(rho: DensityOperator, n: int):
    if rho.dim != n:
        raise DimensionError(f"state of dim {rho.dim} does not match operator of dim {n}")


def outcome_prob(rho: DensityOperator, m: ProjectiveMeasurement, i: int) -> float:
    """trace(rho P_i), checked to be a real number in [0, 1]."""
    _check_dims(rho, m.dim)
    p = _real_trace(rho.mat @ m.outcomes[i].proj, "outcome probability")
    if -CLAMP_TOL <= p < 0:
        p = 0.0
    elif 1 < p <= 1 + CLAMP_TOL:
        p = 1.0
    elif not 0 <= p <= 1:
        raise NumericalIntegrityError(f"outcome probability {p!r} lies outside [0, 1]")
    return p


def probabilities(rho: DensityOperator, m: ProjectiveMeasurement) -> list[float]:
    return [outcome_prob(rho, m, i) for i in range(len(m))]


def collapse(rho: DensityOperator, p: np.ndarray) -> DensityOperator:
    """Post-measurement state P rho P / trace(rho P).

    A zero-probability outcome collapses to the maximally mixed state.
    """
    p = cmatrix(p)
    _check_dims(rho, p.shape[0])
    if not cxmat.is_projector(p):
        raise ValidationError("collapse needs an orthogonal projector", clause="projector")
    if abs(np.trace(rho.mat @ p)) <= ZERO_PROB:
        return max_mixed(rho.dim)
    post = p @ rho.mat @ p
    post = (post + post.conj().T) / 2
    # trace(P rho P) equals trace(rho P); normalizing by it keeps the trace at 1 to roundoff
    return DensityOperator(post / np.trace(post).real)


def make_pm(a: np.ndarray) -> ProjectiveMeasurement:
    """Projective measurement of an observable, outcomes in descending eigenvalue order.

    Each outcome projector is the sum of |u_j><u_j| over the eigenvectors whose
    eigenvalues were grouped together.
    """
    a = cmatrix(a)
    dec = eig_hermitian(a)
    part = group_spectrum(dec.evals)
    outcomes = []
    for value, members in zip(part.distinct, part.classes):
        cols = dec.u[:, list(members)]
        outcomes.append(MeasureOutcome(value, cols @ cols.conj().T))
    try:
        return validate_pm(a.shape[0], outcomes)
    except ValidationError as exc:
        raise NumericalIntegrityError(f"eigenprojectors failed validation: {exc}") from exc


def reconstruct(m: ProjectiveMeasurement) -> np.ndarray:
    """sum_i value_i P_i."""
    return cxmat.msum(o.value * o.proj for o in m.outcomes)


def expectation_value(a: np.ndarray, rho: DensityOperator) -> float:
    """<A>_rho = trace(A rho)."""
    a = cmatrix(a)
    _check_dims(rho, a.shape[0])
    if not cxmat.is_hermitian(a):
        raise ValidationError("observable is not hermitian", clause="hermitian")
    return _real_trace(a @ rho.mat, "expectation value")
