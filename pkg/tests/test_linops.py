import json
import logging
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import config
from algebra_core import (
    CDElement,
    ComplexScalar,
    basis_element,
    complex_action,
    conjugate,
    join,
    multiply,
    norm,
    parse_element,
    unit_imaginary,
)
from errors import EigenSolverError, NotSymmetricError, PreconditionError, ZeroElementError
from linops import (
    OperatorMatrix,
    batch_symmetric_eigen,
    m_operator,
    mixed_m_operator,
    mult_matrix,
    symmetric_eigen,
    trace_pairing,
)
from rng import SplitMix64, random_complex, random_element, random_perp
from strategies import elements, nonzero_elements


@pytest.fixture
def rng():
    return SplitMix64(2024)


@pytest.fixture
def sedenion_zero_divisor():
    return join(parse_element("i", 3), parse_element("j", 3)) / math.sqrt(2.0)


# ============================================================================
# Multiplication matrices
# ============================================================================


@given(st.data())
def test_mult_matrix_columns_are_products(data):
    n = data.draw(st.integers(0, 4))
    a, x = data.draw(elements(n)), data.draw(elements(n))
    left, right = mult_matrix(a, "left"), mult_matrix(a, "right")
    assert np.allclose(left.entries @ x.coeffs, multiply(a, x).coeffs, atol=1e-9)
    assert np.allclose(right.entries @ x.coeffs, multiply(x, a).coeffs, atol=1e-9)


def test_mult_matrix_rejects_unknown_side():
    with pytest.raises(PreconditionError):
        mult_matrix(basis_element(2, 1), "middle")


def test_m_operator_of_zero_is_undefined():
    with pytest.raises(ZeroElementError):
        m_operator(CDElement.zero(3))


def test_m_operator_properties(rng):
    for n in range(1, 6):
        a = random_element(rng, n)
        m = m_operator(a).entries
        assert np.array_equal(m, m.T)
        assert np.allclose(m, m_operator(conjugate(a)).entries, atol=1e-12)
        # C_n-linear: commutes with left multiplication by i_n
        l_i = mult_matrix(unit_imaginary(n)).entries
        assert np.allclose(m @ l_i, l_i @ m, atol=1e-10)


def test_m_operator_ignores_complex_factors(rng):
    for n in range(2, 6):
        a = random_perp(rng, n)
        beta = random_complex(rng)
        assert np.allclose(m_operator(complex_action(beta, a)).entries, m_operator(a).entries, atol=1e-10)


def test_m_operator_is_identity_below_sedenions(rng):
    for n in range(4):
        assert np.allclose(m_operator(random_element(rng, n)).entries, np.eye(1 << n), atol=1e-12)


def test_mixed_operator_matches_direct_computation(rng):
    for n in range(2, 6):
        a = random_perp(rng, n, unit=True)
        beta = random_complex(rng, unit=True)
        theta = rng.angle()
        x = math.cos(theta) * a + math.sin(theta) * beta.to_element(n)
        assert np.allclose(mixed_m_operator(a, beta, theta).entries, m_operator(x).entries, atol=1e-10)


def test_mixed_operator_preconditions():
    with pytest.raises(PreconditionError):
        mixed_m_operator(basis_element(3, 1) * 2.0, ComplexScalar(1.0, 0.0), 0.3)
    with pytest.raises(PreconditionError):
        mixed_m_operator(basis_element(3, 0), ComplexScalar(1.0, 0.0), 0.3)
    with pytest.raises(PreconditionError):
        mixed_m_operator(basis_element(3, 1), ComplexScalar(1.0, 1.0), 0.3)


# ============================================================================
# Trace pairing
# ============================================================================


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_trace_pairing_is_scaled_inner_product(n, rng):
    for _ in range(10):
        x, y = random_element(rng, n), random_element(rng, n)
        expected = (1 << n) * float(x.coeffs @ y.coeffs)
        scale = (1 << n) * np.linalg.norm(x.coeffs) * np.linalg.norm(y.coeffs)
        assert abs(trace_pairing(x, y) - expected) <= 1e-9 * scale


def test_trace_pairing_examples():
    one = CDElement.one(4)
    assert trace_pairing(one, one) == pytest.approx(16.0)
    assert trace_pairing(basis_element(4, 3), basis_element(4, 9)) == pytest.approx(0.0, abs=1e-12)


# ============================================================================
# Eigensolvers
# ============================================================================


def test_operator_matrix_symmetry_check():
    with pytest.raises(NotSymmetricError):
        OperatorMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]), symmetric=True)
    with pytest.raises(PreconditionError):
        OperatorMatrix(np.zeros((2, 3)))
    with pytest.raises(NotSymmetricError):
        symmetric_eigen(OperatorMatrix(np.eye(2)))


@pytest.mark.parametrize("solver", ["eigh", "jacobi"])
def test_small_known_spectrum(solver):
    m = OperatorMatrix(np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 3.0]]), symmetric=True)
    pairs = symmetric_eigen(m, solver)
    assert np.allclose(pairs.values, [1.0, 3.0, 3.0], atol=1e-12)
    assert pairs.residual(m) < 1e-10
    assert pairs.orthonormality_error() < 1e-12
    assert np.allclose(pairs.reconstruct(), m.entries, atol=1e-12)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_jacobi_agrees_with_eigh(n, rng):
    m = m_operator(random_element(rng, n))
    jac, lap = symmetric_eigen(m, "jacobi"), symmetric_eigen(m, "eigh")
    assert np.allclose(jac.values, lap.values, atol=1e-9)
    assert jac.residual(m) < 1e-9
    assert jac.orthonormality_error() < 1e-10


def test_zero_eigenvalues_are_clamped(sedenion_zero_divisor):
    values = symmetric_eigen(m_operator(sedenion_zero_divisor)).values
    assert list(values[:4]) == [0.0, 0.0, 0.0, 0.0]
    assert values[4] == pytest.approx(1.0)


def test_jacobi_gives_up_after_sweep_cap(monkeypatch):
    monkeypatch.setattr(config, "JACOBI_MAX_SWEEPS", 0)
    m = OperatorMatrix(np.array([[1.0, 0.5], [0.5, 1.0]]), symmetric=True)
    with pytest.raises(EigenSolverError):
        symmetric_eigen(m, "jacobi")


def test_unknown_solver():
    with pytest.raises(PreconditionError):
        symmetric_eigen(OperatorMatrix(np.eye(2), symmetric=True), "power")


def test_cost_warning(monkeypatch, caplog):
    monkeypatch.setattr(config, "COST_WARNING_DIM", 8)
    with caplog.at_level(logging.WARNING, logger="linops"):
        symmetric_eigen(m_operator(basis_element(4, 1)))
    assert "may be slow" in caplog.text


@pytest.mark.parametrize("workers", [1, 3])
def test_batch_keeps_input_order(workers, rng):
    matrices = [m_operator(random_element(rng, 4 + k % 2)) for k in range(6)]
    batched = batch_symmetric_eigen(matrices, workers=workers)
    for m, pairs in zip(matrices, batched):
        assert pairs.values.shape == (m.dim,)
        assert np.allclose(pairs.values, symmetric_eigen(m).values)


def test_matrix_json(sedenion_zero_divisor):
    payload = json.loads(m_operator(sedenion_zero_divisor).to_json())
    assert payload["dim"] == 16
    assert len(payload["rows"]) == 16 and len(payload["rows"][0]) == 16


@given(st.data())
def test_m_operator_is_positive_semidefinite(data):
    n = data.draw(st.integers(3, 5))
    a = data.draw(nonzero_elements(n))
    values = symmetric_eigen(m_operator(a)).values
    assert values.min() >= -1e-9
    assert values.sum() == pytest.approx(1 << n, rel=1e-6)


@given(st.data())
def test_left_matrix_transpose_is_left_matrix_of_conjugate(data):
    n = data.draw(st.integers(0, 5))
    a = data.draw(elements(n))
    assert np.allclose(mult_matrix(a).entries.T, mult_matrix(conjugate(a)).entries, atol=1e-12)
    assert np.allclose(mult_matrix(a, "right").entries.T, mult_matrix(conjugate(a), "right").entries, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_left_products_pair_through_m_operator(n, rng):
    for _ in range(5):
        a, x, y = random_element(rng, n), random_element(rng, n), random_element(rng, n)
        m = m_operator(a)
        a2 = norm(a) ** 2
        lhs = float(multiply(a, x).coeffs @ multiply(a, y).coeffs)
        tol = 1e-10 * a2 * norm(x) * norm(y)
        assert lhs == pytest.approx(a2 * float(m.apply(x).coeffs @ y.coeffs), abs=tol)
        assert lhs == pytest.approx(a2 * float(x.coeffs @ m.apply(y).coeffs), abs=tol)
