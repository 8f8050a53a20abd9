import itertools
import math

import numpy as np
import pytest

from covox.covariant_oscillator import WaveGrid, psi_boosted
from covox.errors import DomainError
from covox.observables import (
    boosted_widths,
    coherent_form_factor,
    effective_terms,
    entropy,
    excitation_probabilities,
    ground_state_entropy,
    lightcone_spreads,
    mass_spectrum,
    measured_widths,
    momentum_transfer_squared,
    static_form_factor,
)
from covox.special_functions import hermite_quadrature, integrate_1d

LN2 = math.log(2.0)


def test_probabilities_at_rest():
    dist = excitation_probabilities(0, 0.0, 1e-12)
    np.testing.assert_array_equal(dist.p, [1.0])
    assert dist.tail == 0.0


def test_probabilities_ln2():
    p = excitation_probabilities(0, LN2, 1e-12).p
    np.testing.assert_allclose(p[:3], [0.64, 0.2304, 0.082944], rtol=1e-13)
    k = np.arange(len(p))
    np.testing.assert_allclose(p, 0.64 * 0.36**k, rtol=1e-12)


@pytest.mark.parametrize("n, eta", [(3, 1.2), (0, 2.0), (5, 0.3), (1, -1.0)])
def test_distribution_normalized(n, eta):
    dist = excitation_probabilities(n, eta, 1e-12)
    assert abs(dist.total() - 1.0) < 1e-10
    assert abs(math.fsum(dist.p) - 1.0) < 1e-10


def test_negative_binomial_form():
    # oracle: scipy's negative binomial pmf with r = n + 1 successes, p = 1 - tanh^2
    from scipy.stats import nbinom

    n, eta = 3, 0.8
    T = math.tanh(eta) ** 2
    p = excitation_probabilities(n, eta, 1e-12).p
    np.testing.assert_allclose(p, nbinom.pmf(np.arange(len(p)), n + 1, 1 - T), rtol=1e-10)


def test_entropy_examples():
    for n in (0, 2, 7):
        assert entropy(n, 0.0) == 0.0
    direct = -math.log(0.64) - (0.36 / 0.64) * math.log(0.36)
    assert direct == pytest.approx(1.0210, abs=1e-4)
    assert entropy(0, LN2) == pytest.approx(direct, abs=1e-12)
    assert entropy(0, 1.0) > entropy(0, 0.5) > 0.0


@pytest.mark.parametrize("eta", [0.1, 0.5, 1.0, 2.0])
def test_entropy_closed_form(eta):
    assert abs(entropy(0, eta) - ground_state_entropy(eta)) < 1e-8


def test_effective_terms_grow_without_bound():
    values = [effective_terms(0, eta) for eta in (0.5, 1.0, 2.0, 3.0, 4.0)]
    assert all(b > a for a, b in zip(values, values[1:]))
    # exp(S) ~ e sinh^2(eta) for large eta
    assert values[-1] == pytest.approx(math.e * math.sinh(4.0) ** 2, rel=1e-3)


def test_widths_examples():
    assert boosted_widths(0.0) == (0.5, 0.5)
    vz, vt = boosted_widths(1.0)
    assert vz == pytest.approx(1.88110, abs=1e-5) and vt == vz


@pytest.mark.parametrize("eta", [0.0, 0.7, 1.5])
def test_widths_quadrature(eta):
    vz, vt = measured_widths(eta)
    expected = math.cosh(2 * eta) / 2
    assert abs(vz - expected) < 1e-8 and abs(vt - expected) < 1e-8


def test_lightcone_uncertainty_product():
    eta = 1.1
    du, dv = lightcone_spreads(eta)
    assert du * dv == pytest.approx(0.5, abs=1e-15)
    # measure the spreads on a grid
    grid = WaveGrid.from_function(lambda z, t: psi_boosted(0, eta, z, t), 6 * math.exp(eta), 1201)
    var_u = grid.moment(lambda z, t: (z + t) ** 2 / 2)
    var_v = grid.moment(lambda z, t: (z - t) ** 2 / 2)
    assert math.sqrt(var_u * var_v) == pytest.approx(0.5, abs=1e-8)
    assert math.sqrt(var_u) == pytest.approx(du, rel=1e-8)


def test_coherent_form_factor_examples():
    assert coherent_form_factor(0.0) == (0.0, pytest.approx(1.0, abs=1e-12))
    q2, f = coherent_form_factor(LN2)
    assert q2 == pytest.approx(2.25, abs=1e-14)
    assert f == pytest.approx(1 / 2.125, abs=1e-8)
    assert f == pytest.approx(0.470588, abs=1e-6)


@pytest.mark.parametrize("eta", [0.0, 0.3, 1.0, 1.7, 2.0])
def test_coherent_form_factor_oracle(eta):
    q2, f = coherent_form_factor(eta)
    assert abs(f - 1 / math.cosh(2 * eta)) < 1e-8
    assert f == pytest.approx(1 / (1 + q2 / 2), rel=1e-8)


def test_coherent_slope_minus_one():
    q2s = np.geomspace(1e2, 1e4, 9)
    etas = np.arcsinh(np.sqrt(q2s) / 2)
    fs = np.array([coherent_form_factor(e)[1] for e in etas])
    q2_back = np.array([momentum_transfer_squared(e) for e in etas])
    np.testing.assert_allclose(q2_back, q2s, rtol=1e-12)
    slope = np.polyfit(np.log(q2s), np.log(fs), 1)[0]
    assert abs(slope + 1) < 0.02
    # asymptotically 2 / q^2
    assert fs[-1] * q2s[-1] == pytest.approx(2.0, rel=1e-3)


def test_static_form_factor_examples():
    assert static_form_factor(0.0) == pytest.approx(1.0, abs=1e-14)
    assert static_form_factor(2.0) == pytest.approx(math.exp(-1), abs=1e-14)
    assert static_form_factor(2.0) == pytest.approx(0.367879, abs=1e-6)
    for q in (10.0, 31.6, 100.0):
        assert static_form_factor(q) == pytest.approx(math.exp(-q * q / 4), abs=1e-14)


@pytest.mark.parametrize("q", [0.5, 1.0, 3.0, 6.0])
def test_static_form_factor_gauss_hermite_oracle(q):
    quad = hermite_quadrature(128)
    val = integrate_1d(lambda z: np.cos(q * z) / math.sqrt(math.pi), quad)
    assert static_form_factor(q) == pytest.approx(val, abs=1e-13)
    assert static_form_factor(q) == pytest.approx(math.exp(-q * q / 4), abs=1e-14)


def test_static_vs_coherent_at_q2_100():
    q2 = 100.0
    eta = math.asinh(math.sqrt(q2) / 2)
    _, coherent = coherent_form_factor(eta)
    static = static_form_factor(math.sqrt(q2))
    # exponential against power law: e^-25 against 1/51
    assert static / coherent == pytest.approx(51 * math.exp(-25), rel=1e-4)
    assert static / coherent < 1e-9


@pytest.mark.parametrize("q2", [50.0, 80.0, 200.0, 1000.0])
def test_coherent_beats_static(q2):
    eta = math.asinh(math.sqrt(q2) / 2)
    assert coherent_form_factor(eta)[1] > static_form_factor(math.sqrt(q2))


def test_mass_spectrum_examples():
    (entry,) = mass_spectrum(0, 0.0)
    assert (entry.lam, entry.mass_squared, entry.degeneracy) == (0, 1.0, 1)
    spec = mass_spectrum(2, 0.0)
    assert [e.degeneracy for e in spec] == [1, 3, 6]
    assert spec[2].mass_squared - spec[1].mass_squared == 1.0
    with pytest.raises(DomainError):
        mass_spectrum(-1)


def test_degeneracy_by_explicit_enumeration():
    spec = mass_spectrum(30, 0.25)
    for e in spec:
        triples = [t for t in itertools.product(range(e.lam + 1), repeat=3) if sum(t) == e.lam]
        assert e.degeneracy == len(triples)
        assert e.mass_squared == 0.25 + e.lam + 1


def test_degeneracy_closed_form_and_spacing():
    spec = mass_spectrum(100, 1.5)
    for e in spec:
        assert e.degeneracy == (e.lam + 1) * (e.lam + 2) // 2
    gaps = {b.mass_squared - a.mass_squared for a, b in zip(spec, spec[1:])}
    assert gaps == {1.0}
