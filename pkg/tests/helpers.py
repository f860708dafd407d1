"""Random generators and small oracles shared by the test modules."""

import numpy as np


def random_hermitian(rng, n):
    g = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    return (g + g.conj().T) / 2


def random_unitary(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def degenerate_hermitian(rng, n):
    """Q diag(d) Q^dagger with at least one repeated entry in d; returns (A, d)."""
    k = int(rng.integers(1, n))  # number of distinct values, < n forces a repeat
    values = rng.normal(size=k) * 2
    d = np.concatenate([values, rng.choice(values, size=n - k)])
    q = random_unitary(rng, n)
    return (q * d) @ q.conj().T, d


def random_unit_vector(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_density_matrix(rng, n, rank=None):
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def partial_trace_first(rho4):
    """Trace out the first qubit of a 4x4 two-qubit operator."""
    r = np.asarray(rho4).reshape(2, 2, 2, 2)
    return np.einsum("ijik->jk", r)


def naive_matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            for k in range(a.shape[1]):
                out[i, j] += a[i, k] * b[k, j]
    return out


def naive_kron(a, b):
    p, q = b.shape
    out = np.zeros((a.shape[0] * p, a.shape[1] * q), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            for k in range(p):
                for m in range(q):
                    out[i * p + k, j * q + m] = a[i, j] * b[k, m]
    return out
