"""Hermitian eigendecomposition by cyclic complex Jacobi, and eigenvalue grouping.

A Hermitian ``A`` is diagonalized as ``A = U diag(evals) U^dagger`` with ``U``
accumulated from 2x2 unitary rotations. ``group_spectrum`` then partitions the
eigenvalue indices into classes of (numerically) equal values, which is what
the eigenprojector construction in :mod:`qpm.pmeas` consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cxmat import _freeze, _require_square, frob, is_hermitian
from .errors import NumericalIntegrityError, ValidationError

MAX_SWEEPS = 100
OFF_TOL = 1e-13


@dataclass(frozen=True)
class EigenDecomposition:
    evals: np.ndarray  # real, descending
    u: np.ndarray  # column j is the eigenvector of evals[j]
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.evals) @ self.u.conj().T


@dataclass(frozen=True)
class SpectrumPartition:
    distinct: tuple[float, ...]  # descending
    classes: tuple[tuple[int, ...], ...]  # classes[k] holds the indices grouped into distinct[k]

    @property
    def size(self) -> int:
        return len(self.distinct)

    def class_of(self, index: int) -> int:
        for k, members in enumerate(self.classes):
            if index in members:
                return k
        raise IndexError(index)


def _off(a: np.ndarray) -> float:
    return frob(a - np.diag(np.diag(a)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] (and a[q, p]) in place with a unitary 2x2 rotation."""
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    phase = apq / r
    app, aqq = a[p, p].real, a[q, q].real
    # phase-shift column q so the pivot becomes the real number r, then rotate
    theta = (aqq - app) / (2.0 * r)
    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.hypot(t, 1.0)
    s = t * c
    j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = j.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ j


def _fix_phases(u: np.ndarray) -> None:
    for j in range(u.shape[1]):
        col = u[:, j]
        big = np.flatnonzero(np.abs(col) > 1e-12 * np.max(np.abs(col)))
        z = col[big[0]]
        u[:, j] = col * (abs(z) / z)


def eig_hermitian(a: np.ndarray) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix.

    Eigenvalues come back real and sorted descending; the first non-negligible
    component of each eigenvector is real and positive.
    """
    n = _require_square(a)
    if not is_hermitian(a):
        raise ValidationError("matrix is not hermitian", clause="hermitian")
    work = np.array((a + a.conj().T) / 2, dtype=np.complex128)
    v = np.eye(n, dtype=np.complex128)
    scale = frob(work)
    sweeps = 0
    while _off(work) > OFF_TOL * scale:
        if sweeps == MAX_SWEEPS:
            raise NumericalIntegrityError(
                f"Jacobi did not converge in {MAX_SWEEPS} sweeps; off-diagonal norm {_off(work):.3e}"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(work, v, p, q)
        sweeps += 1

    evals = work.diagonal().real.copy()
    order = np.argsort(-evals, kind="stable")
    evals = evals[order]
    v = v[:, order]
    _fix_phases(v)
    return EigenDecomposition(_freeze(evals), _freeze(v), sweeps)


def default_group_tol(evals) -> float:
    return max(1e-10, 1e-8 * float(np.max(np.abs(evals))))


def group_spectrum(evals, tol: float | None = None) -> SpectrumPartition:
    """Merge adjacent eigenvalues closer than ``tol`` into one class.

    ``evals`` must be sorted descending. Merging is greedy left to right and
    each class is represented by the mean of its members.
    """
    evals = [float(x) for x in evals]
    if not evals:
        raise ValueError("evals must be non-empty")
    if any(nxt > cur for cur, nxt in zip(evals, evals[1:])):
        raise ValueError("evals must be sorted descending")
    if tol is None:
        tol = default_group_tol(evals)
    if tol < 0:
        raise ValueError("tol must be non-negative")

    classes = [[0]]
    for i in range(1, len(evals)):
        if evals[i - 1] - evals[i] <= tol:
            classes[-1].append(i)
        else:
            classes.append([i])
    distinct = tuple(sum(evals[i] for i in c) / len(c) for c in classes)
    return SpectrumPartition(distinct, tuple(tuple(c) for c in classes))


def spectrum(a: np.ndarray) -> tuple[float, ...]:
    """Distinct eigenvalues of a Hermitian matrix, descending."""
    return group_spectrum(eig_hermitian(a).evals).distinct
