import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import partial_trace_first, random_unit_vector, random_unitary
from qpm.cxmat import HERMITIAN, POSITIVE, PROJECTOR, adjoint, classify, cmatrix
from qpm.errors import DimensionError, ValidationError
from qpm.qstate import (
    KET0,
    KET1,
    KET_MINUS,
    KET_PLUS,
    BellKind,
    DensityOperator,
    bell_state,
    compose,
    ensemble_density,
    evolve,
    inner,
    max_mixed,
    pure_state,
    rank1proj,
)

SQ = 1 / math.sqrt(2)
X = cmatrix([[0, 1], [1, 0]])


def test_inner_examples():
    assert inner(KET0, KET0) == 1
    assert inner(KET0, KET1) == 0
    u = np.array([1, 1j]) * SQ
    v = np.array([1, -1j]) * SQ
    # conj(u) . v = (1*1 + (-i)(-i)) / 2 = (1 - 1) / 2
    assert abs(inner(u, v)) < 1e-16
    with pytest.raises(DimensionError):
        inner(KET0, np.ones(3))


def test_inner_conjugates_first_argument():
    u = np.array([1j, 0])
    assert inner(u, KET0) == -1j


def test_rank1proj_examples():
    np.testing.assert_array_equal(rank1proj(KET0), [[1, 0], [0, 0]])
    np.testing.assert_allclose(rank1proj(KET_PLUS), [[0.5, 0.5], [0.5, 0.5]], atol=1e-16)


def test_rank1proj_rejects_unnormalized():
    with pytest.raises(ValidationError, match="1.41"):
        rank1proj(np.array([1.0, 1.0]))


@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_rank1proj_properties(seed, n):
    v = random_unit_vector(np.random.default_rng(seed), n)
    p = rank1proj(v)
    assert {HERMITIAN, PROJECTOR, POSITIVE} <= classify(p)
    assert np.array_equal(adjoint(p), p)
    assert abs(np.trace(p) - 1) < 1e-12
    evals = np.linalg.eigvalsh(p)
    if n > 1:
        assert evals[-2] <= 1e-9


def test_density_operator_validation():
    with pytest.raises(ValidationError) as exc:
        DensityOperator(np.diag([1.0, 1.0]))
    assert exc.value.clause == "trace"
    with pytest.raises(ValidationError) as exc:
        DensityOperator(np.diag([1.5, -0.5]))
    assert exc.value.clause == "positive"
    with pytest.raises(ValidationError) as exc:
        DensityOperator([[0.5, 0.5], [0, 0.5]])
    assert exc.value.clause == "hermitian"


def test_ensemble_examples():
    np.testing.assert_array_equal(ensemble_density([1], [KET0]).mat, [[1, 0], [0, 0]])
    np.testing.assert_allclose(ensemble_density([0.5, 0.5], [KET0, KET1]).mat, max_mixed(2).mat)
    np.testing.assert_allclose(ensemble_density([0.5, 0.5], [KET_PLUS, KET_MINUS]).mat, max_mixed(2).mat, atol=1e-16)


@pytest.mark.parametrize(
    "ps, vs",
    [
        ([0.5, 0.6], [KET0, KET1]),
        ([1.5, -0.5], [KET0, KET1]),
        ([1.0], [np.array([1.0, 1.0])]),
        ([0.5, 0.5], [KET0]),
    ],
)
def test_ensemble_rejects_bad_input(ps, vs):
    with pytest.raises(ValidationError):
        ensemble_density(ps, vs)


@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 5))
def test_ensemble_always_valid(seed, n, k):
    rng = np.random.default_rng(seed)
    ps = rng.random(k)
    ps /= ps.sum()
    rho = ensemble_density(list(ps), [random_unit_vector(rng, n) for _ in range(k)])
    assert rho.dim == n


def test_max_mixed():
    np.testing.assert_array_equal(max_mixed(1).mat, [[1]])
    np.testing.assert_array_equal(max_mixed(2).mat, np.diag([0.5, 0.5]))
    for n in range(1, 9):
        assert abs(np.trace(max_mixed(n).mat) - 1) < 1e-15


def test_bell_states():
    np.testing.assert_allclose(bell_state(BellKind.PSI_MINUS), [0, SQ, -SQ, 0])
    np.testing.assert_allclose(bell_state(BellKind.PHI_PLUS), [SQ, 0, 0, SQ])
    np.testing.assert_allclose(bell_state(BellKind.PHI_MINUS), [SQ, 0, 0, -SQ])
    np.testing.assert_allclose(bell_state(BellKind.PSI_PLUS), [0, SQ, SQ, 0])
    for k in BellKind:
        assert abs(np.linalg.norm(bell_state(k)) - 1) < 1e-15


def test_bell_state_matches_ket_expansion():
    # |01> - |10> built from kron of basis kets
    expected = (np.kron(KET0, KET1) - np.kron(KET1, KET0)) * SQ
    np.testing.assert_allclose(bell_state(BellKind.PSI_MINUS), expected)


@pytest.mark.parametrize("kind", list(BellKind))
def test_bell_states_are_entangled_pure(kind):
    rho = pure_state(bell_state(kind)).mat
    assert abs(np.trace(rho @ rho) - 1) < 1e-12
    reduced = partial_trace_first(rho)
    np.testing.assert_allclose(reduced, max_mixed(2).mat, atol=1e-15)
    assert abs(np.trace(reduced @ reduced) - 0.5) < 1e-12


def test_evolve_examples():
    rho = pure_state(KET0)
    np.testing.assert_array_equal(evolve(rho, np.eye(2)).mat, rho.mat)
    np.testing.assert_array_equal(evolve(rho, X).mat, rank1proj(KET1))
    u = random_unitary(np.random.default_rng(5), 2)
    np.testing.assert_allclose(evolve(max_mixed(2), u).mat, max_mixed(2).mat, atol=1e-15)


def test_evolve_rejects_non_unitary():
    with pytest.raises(ValidationError):
        evolve(max_mixed(2), 2 * np.eye(2))
    with pytest.raises(DimensionError):
        evolve(max_mixed(2), np.eye(3))


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_evolve_preserves_trace_and_positivity(seed, n):
    rng = np.random.default_rng(seed)
    ps = rng.random(3)
    ps /= ps.sum()
    rho = ensemble_density(list(ps), [random_unit_vector(rng, n) for _ in range(3)])
    out = evolve(rho, random_unitary(rng, n))
    assert POSITIVE in classify(out.mat)
    assert abs(np.trace(out.mat) - 1) < 1e-12


def test_compose_examples():
    rho = pure_state(KET_PLUS)
    assert compose([rho]) == rho
    np.testing.assert_allclose(compose([max_mixed(2), max_mixed(2)]).mat, max_mixed(4).mat)
    np.testing.assert_array_equal(
        compose([pure_state(KET0), pure_state(KET1)]).mat, rank1proj(np.kron(KET0, KET1))
    )
    with pytest.raises(ValueError):
        compose([])
