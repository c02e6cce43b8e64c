import math
from fractions import Fraction

import numpy as np
import pytest

from convspec.cli.verify import CLOSED_FORM_N_MAX, closed_form_residual
from convspec.core.fock_sector import SectorIndex
from convspec.core.model import catalog_model
from convspec.core.spectral import spectral_decomposition
from convspec.families import DEFAULT_GRID, FAMILY_NAMES, family_polynomial, family_spectrum, family_weight, \
    get_family
from convspec.utils.errors import ConfigError, SectorError

GRID = [(name, params) for name in FAMILY_NAMES for params in DEFAULT_GRID[name]]
GRID_IDS = [f"{name}-{i}" for name in FAMILY_NAMES for i in range(len(DEFAULT_GRID[name]))]


def _sizes(family, N_max=8):
    cap = family.closed_form_cap()
    top = N_max if cap is None else min(N_max, cap)
    return range(1, top + 1)


def test_catalog_has_nine_families():
    assert len(FAMILY_NAMES) == 9
    assert all(len(DEFAULT_GRID[name]) >= 1 for name in FAMILY_NAMES)


@pytest.mark.parametrize('name,params', GRID, ids=GRID_IDS)
def test_spectrum_matches_jacobi_eigenvalues(name, params):
    model = catalog_model(name, **params)
    family = model.family
    for N in _sizes(family):
        s = spectral_decomposition(model, SectorIndex(0, 0, N))
        closed = np.array([family_spectrum(family, l, N) for l in range(N + 1)])
        assert np.all(np.abs(s.eigenvalues - closed) <= 1e-9 * np.maximum(1.0, np.abs(closed)))


@pytest.mark.parametrize('name,params', GRID, ids=GRID_IDS)
def test_weights_match_spectral_weights(name, params):
    model = catalog_model(name, **params)
    family = model.family
    for N in _sizes(family):
        s = spectral_decomposition(model, SectorIndex(0, 0, N))
        w = np.array([family_weight(family, l, N) for l in range(N + 1)])
        assert math.fsum(w) == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(s.weights, w, rtol=1e-8)


@pytest.mark.parametrize('name,params', GRID, ids=GRID_IDS)
def test_closed_form_polynomials_match_spectral_coefficients(name, params):
    model = catalog_model(name, **params)
    family = model.family
    for N in range(1, CLOSED_FORM_N_MAX + 1):
        s = spectral_decomposition(model, SectorIndex(0, 0, N))
        assert all(family_polynomial(family, 0, l, N) == pytest.approx(1.0, rel=1e-12) for l in range(N + 1))
        assert closed_form_residual(family, s) <= 1e-9


def _exact_3phi2(num, den, q, z, m):
    total = term = Fraction(1)
    for j in range(m):
        qj = q ** j
        ratio = z / (1 - q * qj)
        for a in num:
            ratio *= 1 - a * qj
        for b in den:
            ratio /= 1 - b * qj
        term *= ratio
        total += term
    return total


def test_q_hahn_series_survives_cancellation():
    # q=α=β=1/2 在二进制下精确，有理数求和即为真值
    f = get_family('q_hahn', {'q': 0.5, 'alpha': 0.5, 'beta': 0.5})
    q = alpha = beta = Fraction(1, 2)
    N = n = l = 8
    exact = _exact_3phi2([q ** -n, alpha * beta * q ** (n + 1), q ** -l], [alpha * q, q ** -N], q, q, min(n, l))
    assert f._series(n, l, N) == pytest.approx(float(exact), rel=1e-12, abs=1e-300)


@pytest.mark.parametrize('name,params', GRID, ids=GRID_IDS)
def test_couplings_positive_inside_sector(name, params):
    family = get_family(name, params)
    N = 6 if family.is_q else 10
    for n in range(N):
        a, b = family.jacobi_map(n, N)
        assert math.isfinite(a)
        assert b > 0
    assert family.sector_coupling(N, N) == 0.0
    assert family.sector_coupling(-1, N) == 0.0


def test_hahn_with_zero_parameters_is_chebyshev():
    hahn = catalog_model('hahn', alpha=0.0, beta=0.0)
    chebyshev = catalog_model('chebyshev')
    for N in (1, 4, 9):
        mu = SectorIndex(0, 0, N)
        s_hahn = spectral_decomposition(hahn, mu)
        s_cheb = spectral_decomposition(chebyshev, mu)
        np.testing.assert_allclose(s_hahn.eigenvalues, s_cheb.eigenvalues, atol=1e-10)
        np.testing.assert_allclose(s_hahn.coeffs, s_cheb.coeffs, atol=1e-10 * np.max(np.abs(s_cheb.coeffs)))


def test_hahn_closed_forms_reduce_to_chebyshev():
    hahn = get_family('hahn', {'alpha': 0.0, 'beta': 0.0})
    chebyshev = get_family('chebyshev')
    for N in (1, 4, 9):
        for l in range(N + 1):
            assert family_spectrum(hahn, l, N) == family_spectrum(chebyshev, l, N)
            assert family_weight(hahn, l, N) == pytest.approx(family_weight(chebyshev, l, N), rel=1e-12)
            for n in range(N + 1):
                assert family_polynomial(hahn, n, l, N) == \
                    pytest.approx(family_polynomial(chebyshev, n, l, N), rel=1e-10, abs=1e-10)


def test_chebyshev_weights():
    f = get_family('chebyshev')
    assert [family_weight(f, l, 4, normalized=False) for l in range(5)] == [1.0] * 5
    assert family_weight(f, 2, 4) == pytest.approx(0.2, rel=1e-14)


def test_krawtchouk_weights_are_binomial():
    f = get_family('krawtchouk', {'p': 0.5})
    assert [family_weight(f, l, 2, normalized=False) for l in range(3)] == [0.25, 0.5, 0.25]


def test_krawtchouk_spectrum_is_integer():
    f = get_family('krawtchouk', {'p': 0.3})
    assert [family_spectrum(f, l, 5) for l in range(6)] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]


def test_dual_hahn_spectrum():
    f = get_family('dual_hahn', {'gamma': 1.0, 'delta': 0.5})
    assert family_spectrum(f, 3, 5) == pytest.approx(3 * (3 + 1.0 + 0.5 + 1))


def test_dual_q_krawtchouk_spectrum_depends_on_sector():
    f = get_family('dual_q_krawtchouk', {'q': 0.5, 'c': -1.0})
    assert f.spectrum_depends_on_N
    assert family_spectrum(f, 1, 3) == pytest.approx(2.0 - 0.5 ** (-2))
    assert family_spectrum(f, 1, 4) != pytest.approx(family_spectrum(f, 1, 3))


def test_q_precision_caps():
    assert get_family('q_krawtchouk', {'q': 0.5, 'p': 1.0}).numeric_cap() == 26
    assert get_family('q_krawtchouk', {'q': 0.3, 'p': 1.0}).numeric_cap() == 15
    assert get_family('q_krawtchouk', {'q': 0.5, 'p': 1.0}).closed_form_cap() == 8
    assert get_family('q_krawtchouk', {'q': 0.8, 'p': 1.0}).closed_form_cap() == 15
    assert get_family('krawtchouk', {'p': 0.5}).numeric_cap() is None


def test_hard_cap_for_q_families(monkeypatch):
    f = get_family('affine_q_krawtchouk', {'q': 0.5, 'p': 0.5})
    with pytest.raises(ConfigError):
        family_spectrum(f, 0, 31)
    monkeypatch.setenv('CONVSPEC_Q_MAX_N', '40')
    assert family_spectrum(f, 0, 31) == 1.0


@pytest.mark.parametrize('name,params', [
    ('krawtchouk', {'p': 1.5}),
    ('krawtchouk', {}),
    ('krawtchouk', {'p': 0.5, 'q': 0.3}),
    ('krawtchouk', {'p': float('nan')}),
    ('dual_hahn', {'gamma': -2.0, 'delta': 0.0}),
    ('q_hahn', {'q': 1.2, 'alpha': 0.5, 'beta': 0.5}),
    ('dual_q_krawtchouk', {'q': 0.5, 'c': 0.5}),
    ('laguerre', {}),
])
def test_invalid_family_parameters(name, params):
    with pytest.raises(ConfigError):
        get_family(name, params)


def test_indices_outside_sector_rejected():
    f = get_family('krawtchouk', {'p': 0.5})
    with pytest.raises(SectorError):
        family_polynomial(f, 4, 0, 3)
    with pytest.raises(SectorError):
        family_weight(f, -1, 3)
