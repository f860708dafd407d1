"""Dense complex matrices and operator predicates.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything built
here is frozen (``writeable=False``) so values can be shared between threads
without copying. Vectors are 1-D arrays.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import DimensionError, SchemaError

DEFAULT_TOL = 1e-9

HERMITIAN = "hermitian"
UNITARY = "unitary"
PROJECTOR = "projector"
POSITIVE = "positive"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def cmatrix(data) -> np.ndarray:
    """Build a frozen complex matrix, rejecting empty shapes and NaN/Inf."""
    a = np.array(data, dtype=np.complex128)
    if a.ndim != 2:
        raise SchemaError(f"expected a 2-D matrix, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise SchemaError(f"matrix must have at least one row and column, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise SchemaError("matrix entries must be finite")
    return _freeze(a)


def cvector(data) -> np.ndarray:
    """Build a frozen complex ket vector."""
    v = np.array(data, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise SchemaError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise SchemaError("vector entries must be finite")
    return _freeze(v)


def identity(n: int) -> np.ndarray:
    return _freeze(np.eye(n, dtype=np.complex128))


def zeros(n: int) -> np.ndarray:
    return _freeze(np.zeros((n, n), dtype=np.complex128))


def frob(a: np.ndarray) -> float:
    """Frobenius norm, the distance used by every predicate in the package."""
    return float(np.linalg.norm(a))


def _require_square(a: np.ndarray, what: str = "matrix") -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {a.shape}")
    return a.shape[0]


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return _freeze(a @ b)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return _freeze(np.conj(a).T.copy())


def trace(a: np.ndarray) -> complex:
    _require_square(a)
    return complex(np.trace(a))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return _freeze(np.kron(a, b))


def msum(mats: Iterable[np.ndarray]) -> np.ndarray:
    """Sum of equally shaped matrices."""
    mats = list(mats)
    if not mats:
        raise SchemaError("cannot sum an empty collection of matrices")
    shape = mats[0].shape
    out = np.zeros(shape, dtype=np.complex128)
    for m in mats:
        if m.shape != shape:
            raise DimensionError(f"cannot add {m.shape} to {shape}")
        out += m
    return _freeze(out)


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    _require_square(a)
    return frob(a - a.conj().T) <= tol * max(1.0, frob(a))


def is_unitary(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    n = _require_square(a)
    eye = np.eye(n)
    ah = a.conj().T
    return frob(a @ ah - eye) <= tol and frob(ah @ a - eye) <= tol


def is_projector(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Orthogonal projector: idempotent and Hermitian."""
    _require_square(a)
    return frob(a @ a - a) <= tol and is_hermitian(a, tol)


def is_positive(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    if not is_hermitian(a, tol):
        return False
    herm = (a + a.conj().T) / 2
    return float(np.linalg.eigvalsh(herm)[0]) >= -tol


def classify(a: np.ndarray, tol: float = DEFAULT_TOL) -> frozenset[str]:
    """Return the subset of {hermitian, unitary, projector, positive} that ``a`` satisfies."""
    _require_square(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    props = set()
    if is_hermitian(a, tol):
        props.add(HERMITIAN)
        if frob(a @ a - a) <= tol:
            props.add(PROJECTOR)
        if is_positive(a, tol):
            props.add(POSITIVE)
    if is_unitary(a, tol):
        props.add(UNITARY)
    return frozenset(props)
