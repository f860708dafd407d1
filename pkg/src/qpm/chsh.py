"""The CHSH experiment, quantum and classical.

Quantum side: correlations trace(A B rho) for Alice's observables ``Z (x) I``,
``X (x) I`` and Bob's ``I (x) XpZ``, ``I (x) ZmX`` on the singlet state.

Classical side: finite local hidden-variable models. A model is a probability
vector over ``s`` hidden states plus, per observable, a response table
``resp[a][w]`` giving the probability of outcome ``spectrum[a]`` in hidden
state ``w``. Constraints only bind on samples of positive weight, the finite
reading of "almost everywhere".

The statistic is ``S = E[A1 B0] + E[A0 B1] + E[A1 B1] - E[A0 B0]`` with
``A0 = Z (x) I``, ``A1 = X (x) I``, ``B0 = I (x) ZmX``, ``B1 = I (x) XpZ``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Callable, Sequence

import numpy as np

from . import cxmat
from .cxmat import cmatrix, identity
from .errors import DimensionError, NumericalIntegrityError, ValidationError
from .pmeas import IMAG_TOL
from .qstate import BellKind, DensityOperator, bell_state, pure_state

CLASSICAL_BOUND = 2
TSIRELSON = 2 * math.sqrt(2)
SUM_TOL = 1e-12
PM1 = (1.0, -1.0)


@dataclass(frozen=True)
class ChshObservables:
    z: np.ndarray
    x: np.ndarray
    xpz: np.ndarray
    zmx: np.ndarray
    zi: np.ndarray
    xi: np.ndarray
    ixpz: np.ndarray
    izmx: np.ndarray

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


def canonical_observables() -> ChshObservables:
    z = cmatrix([[1, 0], [0, -1]])
    x = cmatrix([[0, 1], [1, 0]])
    xpz = cmatrix(-(x + z) / math.sqrt(2))
    zmx = cmatrix((z - x) / math.sqrt(2))
    i2 = identity(2)
    return ChshObservables(
        z=z, x=x, xpz=xpz, zmx=zmx,
        zi=cxmat.tensor(z, i2), xi=cxmat.tensor(x, i2),
        ixpz=cxmat.tensor(i2, xpz), izmx=cxmat.tensor(i2, zmx),
    )


def singlet() -> DensityOperator:
    """|Psi-><Psi-|, the state that violates the classical bound."""
    return pure_state(bell_state(BellKind.PSI_MINUS))


def quantum_correlation(a: np.ndarray, b: np.ndarray, rho: DensityOperator) -> float:
    """trace(A B rho) for Hermitian A, B."""
    for name, m in (("a", a), ("b", b)):
        if m.shape != rho.mat.shape:
            raise DimensionError(f"observable {name} has shape {m.shape}, state has dim {rho.dim}")
        if not cxmat.is_hermitian(m):
            raise ValidationError(f"observable {name} is not hermitian", clause="hermitian")
    t = complex(np.trace(a @ b @ rho.mat))
    if abs(t.imag) > IMAG_TOL:
        raise NumericalIntegrityError(f"correlation has imaginary part {t.imag:.3e}")
    return t.real


@dataclass(frozen=True)
class CorrelationReport:
    e_zi_ixpz: float
    e_xi_ixpz: float
    e_xi_izmx: float
    e_zi_izmx: float
    s_value: float

    @property
    def violated(self) -> bool:
        return abs(self.s_value) > CLASSICAL_BOUND + 1e-9

    def to_dict(self) -> dict:
        return {
            "correlations": {
                "zi_ixpz": self.e_zi_ixpz,
                "xi_ixpz": self.e_xi_ixpz,
                "xi_izmx": self.e_xi_izmx,
                "zi_izmx": self.e_zi_izmx,
            },
            "s": self.s_value,
            "classical_bound": float(CLASSICAL_BOUND),
            "violated": self.violated,
        }


def chsh_quantum(rho: DensityOperator) -> CorrelationReport:
    if rho.dim != 4:
        raise DimensionError(f"CHSH needs a two-qubit (4-dim) state, got dim {rho.dim}")
    obs = canonical_observables()
    e_zp = quantum_correlation(obs.zi, obs.ixpz, rho)
    e_xp = quantum_correlation(obs.xi, obs.ixpz, rho)
    e_xm = quantum_correlation(obs.xi, obs.izmx, rho)
    e_zm = quantum_correlation(obs.zi, obs.izmx, rho)
    # A1B0 + A0B1 + A1B1 - A0B0
    s = e_xm + e_zp + e_xp - e_zm
    return CorrelationReport(e_zp, e_xp, e_xm, e_zm, s)


# -- local hidden-variable models ---------------------------------------------


@dataclass(frozen=True)
class LhvModel:
    weights: np.ndarray
    x_resp: np.ndarray  # x_resp[a, w] = X_a(w)
    y_resp: np.ndarray  # y_resp[b, w] = Y_b(w)
    a_spectrum: tuple[float, ...] = PM1
    b_spectrum: tuple[float, ...] = PM1

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "x_resp", np.asarray(self.x_resp, dtype=float))
        object.__setattr__(self, "y_resp", np.asarray(self.y_resp, dtype=float))
        object.__setattr__(self, "a_spectrum", tuple(float(a) for a in self.a_spectrum))
        object.__setattr__(self, "b_spectrum", tuple(float(b) for b in self.b_spectrum))

    @property
    def size(self) -> int:
        return len(self.weights)


def _check_weights(weights: np.ndarray) -> None:
    if weights.ndim != 1 or weights.size < 1 or not np.all(np.isfinite(weights)):
        raise ValidationError("weights must be a non-empty finite vector", clause="shape")
    if np.any(weights < 0):
        raise ValidationError("weights must be non-negative", clause="weights")
    total = math.fsum(weights)
    if abs(total - 1) > SUM_TOL:
        raise ValidationError(f"weights sum to {total!r}, expected 1", clause="normalization")


def _check_response(resp: np.ndarray, spectrum: Sequence[float], weights: np.ndarray, name: str) -> None:
    """Validate one response table of shape (k, s), or a stack of them of shape (m, k, s)."""
    if resp.shape[-2:] != (len(spectrum), weights.size) or not np.isfinite(resp).all():
        raise ValidationError(
            f"{name} response table has shape {resp.shape}, expected ({len(spectrum)}, {weights.size})",
            clause="shape",
        )
    live = resp[..., weights > 0]
    if live.size and live.min() < 0:
        raise ValidationError(f"{name} response is negative on a sample of positive weight", clause=f"{name}-positive")
    dev = np.abs(live.sum(axis=-2) - 1).max(initial=0.0)
    if dev > SUM_TOL:
        raise ValidationError(f"{name} responses do not sum to 1 (deviation {dev:.3e})", clause=f"{name}-sum")


def lhv_validate(m: LhvModel) -> LhvModel:
    """Return ``m`` unchanged if it is a valid finite LHV model, else raise.

    The ``clause`` of the raised ``ValidationError`` is one of ``shape``,
    ``weights``, ``normalization``, ``x-positive``, ``x-sum``, ``y-positive``,
    ``y-sum``.
    """
    _check_weights(m.weights)
    _check_response(m.x_resp, m.a_spectrum, m.weights, "x")
    _check_response(m.y_resp, m.b_spectrum, m.weights, "y")
    return m


def lhv_expectation(m: LhvModel, f: Callable[[int], float] | Sequence[float]) -> float:
    """E[f] = sum_w weights[w] f(w); ``f`` is a callable on sample indices or a sequence."""
    values = [f(w) for w in range(m.size)] if callable(f) else f
    return math.fsum(float(p) * float(v) for p, v in zip(m.weights, values))


def qt_expect_rv(spectrum: Sequence[float], resp, sample: int) -> float:
    """sum_a a * resp[a][sample]: the outcome average in one hidden state."""
    return math.fsum(a * resp[k][sample] for k, a in enumerate(spectrum))


def sum_qt_expect_identity(m: LhvModel) -> tuple[float, float]:
    """Both sides of E[A B] = sum_{a,b} a b E[X_a Y_b], computed independently."""
    lhs = lhv_expectation(
        m,
        lambda w: qt_expect_rv(m.a_spectrum, m.x_resp, w) * qt_expect_rv(m.b_spectrum, m.y_resp, w),
    )
    rhs = math.fsum(
        a * b * lhv_expectation(m, m.x_resp[i] * m.y_resp[j])
        for i, a in enumerate(m.a_spectrum)
        for j, b in enumerate(m.b_spectrum)
    )
    return lhs, rhs


def _stack(t0, t1, name: str) -> np.ndarray:
    t0, t1 = np.asarray(t0, dtype=float), np.asarray(t1, dtype=float)
    if t0.shape != t1.shape:
        raise ValidationError(f"{name}0 and {name}1 tables differ in shape: {t0.shape} vs {t1.shape}", clause="shape")
    return np.stack([t0, t1])


def chsh_classical(a0, a1, b0, b1, weights, a_spectrum=PM1, b_spectrum=PM1) -> float:
    """CHSH statistic of a finite LHV model with response tables for A0, A1, B0, B1."""
    weights = np.asarray(weights, dtype=float)
    _check_weights(weights)
    alice = _stack(a0, a1, "a")
    bob = _stack(b0, b1, "b")
    _check_response(alice, a_spectrum, weights, "a")
    _check_response(bob, b_spectrum, weights, "b")
    qa0, qa1 = np.asarray(a_spectrum) @ alice
    qb0, qb1 = np.asarray(b_spectrum) @ bob

    def e(u, v):
        return float(np.dot(weights, u * v))

    return e(qa1, qb0) + e(qa0, qb1) + e(qa1, qb1) - e(qa0, qb0)


def deterministic_chsh(a0: int, a1: int, b0: int, b1: int) -> int:
    """S for a deterministic strategy of +-1 answers, in integer arithmetic."""
    return a1 * b0 + a0 * b1 + a1 * b1 - a0 * b0


def deterministic_chsh_values() -> dict[tuple[int, int, int, int], int]:
    return {signs: deterministic_chsh(*signs) for signs in itertools.product((1, -1), repeat=4)}


def max_deterministic_chsh() -> int:
    """max |S| over all 16 deterministic strategies (exactly 2)."""
    return max(abs(s) for s in deterministic_chsh_values().values())


def optimal_deterministic_strategies() -> list[tuple[int, int, int, int]]:
    best = max_deterministic_chsh()
    return [k for k, s in deterministic_chsh_values().items() if abs(s) == best]


# -- sampling -----------------------------------------------------------------

ModelTables = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def random_model(rng: np.random.Generator, max_size: int = 16) -> ModelTables:
    """Draw (weights, a0, a1, b0, b1) for a random valid two-outcome model."""
    s = int(rng.integers(1, max_size + 1))
    w = rng.random(s)
    w /= w.sum()
    tables = []
    for _ in range(4):
        t = rng.random((2, s))
        t /= t.sum(axis=0)
        tables.append(t)
    return (w, *tables)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, a pure function of (seed, trial)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def _max_abs_s(seed: int, start: int, stop: int, sampler) -> float:
    best = 0.0
    for t in range(start, stop):
        w, a0, a1, b0, b1 = sampler(trial_rng(seed, t))
        best = max(best, abs(chsh_classical(a0, a1, b0, b1, w)))
    return best


def monte_carlo_lhv(
    trials: int,
    seed: int,
    workers: int = 1,
    sampler: Callable[[np.random.Generator], ModelTables] = random_model,
) -> float:
    """Largest |S| over ``trials`` random LHV models.

    Each trial draws from its own stream keyed on (seed, trial index), so the
    result does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    if workers <= 1:
        return _max_abs_s(seed, 0, trials, sampler)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_max_abs_s, seed, int(lo), int(hi), sampler)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        return max(f.result() for f in futures)


@dataclass(frozen=True)
class WitnessReport:
    quantum: CorrelationReport
    classical_bound: int = CLASSICAL_BOUND
    margin: float = field(init=False)
    violated: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "margin", abs(self.quantum.s_value) - self.classical_bound)
        object.__setattr__(self, "violated", self.quantum.violated)

    @property
    def message(self) -> str:
        s = self.quantum.s_value
        if self.violated:
            return (
                f"|S| = {abs(s):.10f} exceeds the local hidden-variable bound {self.classical_bound}: "
                "no LHV model reproduces these correlations"
            )
        return f"no witness: |S| = {abs(s):.10f} is within the local hidden-variable bound {self.classical_bound}"

    def to_dict(self) -> dict:
        d = self.quantum.to_dict()
        d["margin"] = self.margin
        d["message"] = self.message
        return d


def no_lhv_witness(rho: DensityOperator | None = None) -> WitnessReport:
    """Compare the quantum CHSH value of ``rho`` (the singlet by default) to the classical maximum."""
    canonical = rho is None
    report = chsh_quantum(singlet() if canonical else rho)
    bound = max_deterministic_chsh()
    if bound != CLASSICAL_BOUND:
        raise NumericalIntegrityError(f"deterministic CHSH maximum is {bound}, expected {CLASSICAL_BOUND}")
    if canonical and abs(report.s_value - TSIRELSON) > 1e-9:
        raise NumericalIntegrityError(f"singlet CHSH value {report.s_value!r} differs from 2*sqrt(2)")
    return WitnessReport(report, bound)
