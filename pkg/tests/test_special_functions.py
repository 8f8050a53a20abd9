import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.polynomial import hermite as npherm
from scipy.special import eval_hermite

from covox.errors import DomainError, OrderOutOfRange
from covox.special_functions import (
    CHI_MAX_ORDER,
    HERMITE_MAX_ORDER,
    Quadrature,
    chi,
    chi_table,
    hermite,
    hermite_quadrature,
    integrate_1d,
    log_norm,
    trapezoid_quadrature,
)


def test_hermite_low_orders():
    assert hermite(0, 3.7) == 1.0
    assert hermite(1, 1.5) == 3.0
    assert hermite(2, 1.0) == 2.0


@pytest.mark.parametrize("n", [0, 1, 2, 5, 11, 20, 32])
def test_hermite_matches_numpy_series(n):
    x = np.linspace(-6, 6, 41)
    coef = np.zeros(n + 1)
    coef[n] = 1.0
    expected = npherm.hermval(x, coef)
    np.testing.assert_allclose(hermite(n, x), expected, rtol=1e-12, atol=1e-12 * np.max(np.abs(expected)))


def test_hermite_rejects_untested_orders():
    with pytest.raises(OrderOutOfRange):
        hermite(HERMITE_MAX_ORDER + 1, 0.0)
    with pytest.raises(OrderOutOfRange):
        hermite(-1, 0.0)
    with pytest.raises(OrderOutOfRange):
        chi(CHI_MAX_ORDER + 1, 0.0)
    with pytest.raises(OrderOutOfRange):
        hermite(1.5, 0.0)


def test_chi_values():
    assert chi(0, 0.0) == pytest.approx(math.pi ** -0.25, abs=1e-15)
    assert chi(0, 0.0) == pytest.approx(0.751126, abs=1e-6)
    assert chi(1, 0.0) == 0.0


@pytest.mark.parametrize("n", [0, 3, 10, 25, 32])
def test_chi_equals_hermite_times_log_space_norm(n):
    x = np.linspace(-7, 7, 57)
    expected = np.exp(log_norm(n) - x * x / 2) * hermite(n, x)
    np.testing.assert_allclose(chi(n, x), expected, rtol=1e-11, atol=1e-14)
    # independent polynomial implementation
    alt = eval_hermite(n, x) * np.exp(-x * x / 2) / math.sqrt(math.sqrt(math.pi) * 2.0**n * math.factorial(n))
    np.testing.assert_allclose(chi(n, x), alt, rtol=1e-10, atol=1e-14)


def test_log_norm_survives_large_orders():
    assert math.isfinite(log_norm(CHI_MAX_ORDER))
    # math.log accepts the exact big integer; the float product would overflow
    direct = -0.5 * (0.5 * math.log(math.pi) + math.log(2**200 * math.factorial(200)))
    assert log_norm(200) == pytest.approx(direct, rel=1e-14)


def test_chi_table_rows_match_chi():
    x = np.linspace(-3, 3, 7)
    table = chi_table(6, x)
    for n in range(7):
        np.testing.assert_array_equal(table[n], chi(n, x))


def test_orthonormality_gauss_hermite():
    q = hermite_quadrature(128)
    x = q.nodes
    table = chi_table(10, x) * np.exp(x * x / 2)
    for n in range(11):
        for m in range(11):
            val = integrate_1d(lambda _: table[n] * table[m], q)
            assert abs(val - (n == m)) < 1e-10, (n, m, val)


def test_orthonormality_trapezoid():
    q = trapezoid_quadrature(8.0, 1e-3)
    table = chi_table(10, q.nodes)
    gram = (table * q.weights) @ table.T
    np.testing.assert_allclose(gram, np.eye(11), atol=1e-10)


def test_orthonormality_high_orders():
    # the boosted-state series reaches orders ~170; verify well past that
    q = trapezoid_quadrature(34.0, 0.02)
    table = chi_table(CHI_MAX_ORDER, q.nodes)
    gram = (table * q.weights) @ table.T
    np.testing.assert_allclose(gram, np.eye(CHI_MAX_ORDER + 1), atol=1e-10)


def test_recurrence_consistency():
    x = np.linspace(-6, 6, 241)
    table = chi_table(11, x)
    for n in range(11):
        lower = math.sqrt(n / 2) * table[n - 1] if n > 0 else 0.0
        rhs = lower + math.sqrt((n + 1) / 2) * table[n + 1]
        np.testing.assert_allclose(x * table[n], rhs, atol=1e-10)


@given(st.integers(0, 40), st.floats(-12, 12, allow_nan=False))
def test_parity_is_bit_exact(n, x):
    assert chi(n, -x) == (-1) ** n * chi(n, x)


def test_quadrature_weight_normalization():
    q = hermite_quadrature(64)
    assert abs(integrate_1d(lambda x: np.ones_like(x), q) - math.sqrt(math.pi)) < 1e-12
    q = hermite_quadrature()
    assert len(q) == 128
    assert abs(integrate_1d(lambda x: 1.0, q) - math.sqrt(math.pi)) < 1e-12


def test_orthogonality_example_three_five():
    q = hermite_quadrature(128)
    val = integrate_1d(lambda x: chi(3, x) * chi(5, x) * np.exp(x * x), q)
    assert abs(val) < 1e-10


def test_trapezoid_polynomial():
    q = trapezoid_quadrature(1.0, count=10_000)
    assert abs(integrate_1d(lambda x: x**2, q) - 2.0 / 3.0) < 1e-6


def test_trapezoid_grid_hits_endpoints():
    q = trapezoid_quadrature(8.0, 1e-3)
    assert q.nodes[0] == -8.0 and q.nodes[-1] == 8.0
    assert len(q) == 16001


def test_integrate_reports_bad_node():
    q = trapezoid_quadrature(1.0, count=5)
    with pytest.raises(DomainError, match="node 2"):
        integrate_1d(lambda x: np.where(x == 0.0, np.nan, x), q)


def test_quadrature_invariants_enforced():
    with pytest.raises(DomainError):
        Quadrature(np.array([0.0, 0.0]), np.array([1.0, 1.0]), "trapezoid")
    with pytest.raises(DomainError):
        Quadrature(np.array([0.0, 1.0]), np.array([1.0, -1.0]), "trapezoid")
    with pytest.raises(DomainError):
        Quadrature(np.array([0.0, 1.0]), np.array([1.0, 1.0]), "simpson")
