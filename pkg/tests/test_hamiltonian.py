import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from convspec.core.fock_sector import SectorIndex, sectors_up_to
from convspec.core.hamiltonian import JacobiOperator, cal_g, fock_hamiltonian, free_energy, gauge_real, \
    jacobi_operator, operator_matrices, sector_block
from convspec.core.lifting import lift_model
from convspec.core.model import ModelSpec, catalog_model
from convspec.core.spectral import eigenvalues_tridiagonal
from convspec.utils.errors import ConfigError, SectorError


def _table_model(N, a, b_mag, b_phase, k0=1, k1=1):
    return ModelSpec.from_dict({'k0': k0, 'k1': k1, 'coupling': {'type': 'tables', 'sectors': [
        {'N': N, 'a': list(a), 'b_mag': list(b_mag), 'b_phase': list(b_phase)}]}})


def test_krawtchouk_jacobi_coefficients():
    j = jacobi_operator(catalog_model('krawtchouk', p=0.5), SectorIndex(0, 0, 3))
    np.testing.assert_allclose(j.diag, [1.5, 1.5, 1.5, 1.5])
    expected = [math.sqrt(0.25 * (n + 1) * (3 - n)) for n in range(3)]
    np.testing.assert_allclose(j.offdiag_mag, expected, rtol=1e-15)
    np.testing.assert_array_equal(j.offdiag_phase, np.zeros(3))


def test_dense_matrix_convention():
    j = JacobiOperator([1.0, 2.0], [0.5], [0.25])
    H = j.to_dense()
    assert H[0, 1] == pytest.approx(0.5 * np.exp(-0.25j))
    assert H[1, 0] == pytest.approx(np.conj(H[0, 1]))
    np.testing.assert_allclose(H, H.conj().T)


def test_operator_identities():
    model = catalog_model('dual_hahn', gamma=1.0, delta=0.5)
    mu = SectorIndex(0, 0, 6)
    ops = operator_matrices(model, mu)
    A, A_star, A0 = ops['A'], ops['A_star'], ops['A0']
    np.testing.assert_allclose(A0 @ A - A @ A0, -A, atol=1e-12)
    g_lower = [cal_g(model, Fraction(n - 1), mu.K) for n in range(mu.N + 1)]
    g_upper = [cal_g(model, Fraction(n), mu.K) for n in range(mu.N + 1)]
    scale = max(g_upper)
    np.testing.assert_allclose(A_star @ A, np.diag(g_lower), atol=1e-12 * scale)
    np.testing.assert_allclose(A @ A_star, np.diag(g_upper), atol=1e-12 * scale)
    np.testing.assert_allclose(ops['H_I'], jacobi_operator(model, mu).to_dense())


def test_cal_g_boundaries():
    model = catalog_model('krawtchouk', p=0.5)
    # A0 = N 时 n1 = 0，A0 = −1 时 n0+1 = 0
    assert cal_g(model, 4, 4) == 0.0
    assert cal_g(model, -1, 4) == 0.0
    assert cal_g(model, 1, 4) == pytest.approx(0.25 * 2 * 3)
    with pytest.raises(SectorError):
        cal_g(model, Fraction(1, 3), 4)


def test_free_energy_matches_charge_form():
    model = lift_model(catalog_model('krawtchouk', p=0.5), 2, 3, omega0=1.25, omega1=-0.75)
    mu = SectorIndex(1, 2, 4, 2, 3)
    A0 = mu.r0 / mu.k0 + np.arange(mu.N + 1)
    expected = (model.omega0 * mu.k0 - model.omega1 * mu.k1) * A0 + model.omega1 / mu.k0 * mu.K
    np.testing.assert_allclose(free_energy(model, mu), expected, rtol=1e-14)


@pytest.mark.parametrize('name,params', [
    ('krawtchouk', {'p': 0.3}),
    ('hahn', {'alpha': 1.5, 'beta': 0.5}),
    ('q_krawtchouk', {'q': 0.5, 'p': 1.0}),
])
def test_fock_hamiltonian_blocks_match_sectors(name, params):
    model = catalog_model(name, **params)
    n_max = 5
    states, H = fock_hamiltonian(model, n_max)
    np.testing.assert_allclose(H, H.conj().T, atol=1e-12)
    for mu in sectors_up_to(1, 1, n_max):
        block = sector_block(states, H, mu)
        np.testing.assert_allclose(block, jacobi_operator(model, mu).to_dense(), atol=1e-12)


def test_fock_hamiltonian_conserves_k():
    model = catalog_model('dual_hahn', gamma=0.0, delta=0.0)
    states, H = fock_hamiltonian(model, 4)
    K = np.diag([s.n0 + s.n1 for s in states]).astype(complex)
    np.testing.assert_allclose(K @ H - H @ K, 0.0, atol=1e-12)


def test_tables_model_sector_only():
    model = _table_model(2, [0.0, 1.0, 2.0], [1.0, 0.5], [0.1, -0.2])
    j = jacobi_operator(model, SectorIndex(0, 0, 2))
    np.testing.assert_allclose(j.offdiag_phase, [0.1, -0.2])
    with pytest.raises(ConfigError):
        fock_hamiltonian(model, 3)
    with pytest.raises(ConfigError):
        jacobi_operator(model, SectorIndex(0, 0, 1))


def test_sector_multiplicities_must_match_model():
    with pytest.raises(SectorError):
        jacobi_operator(catalog_model('krawtchouk', p=0.5), SectorIndex(0, 0, 2, 2, 1))


def test_sector_cap(monkeypatch):
    monkeypatch.setenv('CONVSPEC_MAX_N', '5')
    with pytest.raises(ConfigError):
        jacobi_operator(catalog_model('krawtchouk', p=0.5), SectorIndex(0, 0, 6))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(min_value=-math.pi, max_value=math.pi), min_size=4, max_size=4))
def test_gauge_leaves_spectrum_unchanged(phases):
    a = [0.5, -1.0, 2.0, 0.25, 1.0]
    b = [1.0, 0.7, 1.3, 0.4]
    twisted = jacobi_operator(_table_model(4, a, b, phases), SectorIndex(0, 0, 4))
    diag, mag, chi = gauge_real(twisted)
    assert chi[0] == 0.0
    D = np.diag(np.exp(1j * chi))
    real = D.conj().T @ twisted.to_dense() @ D
    np.testing.assert_allclose(real.imag, 0.0, atol=1e-12)
    np.testing.assert_allclose(eigenvalues_tridiagonal(diag, mag), np.linalg.eigvalsh(twisted.to_dense()),
                               atol=1e-12)
