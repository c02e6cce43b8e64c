import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from convspec.core.evolution import SectoredObservable, SectoredState, eigenstate, evolve_oracle, evolve_state, \
    expectation, expectation_spectral, heisenberg_element, propagator
from convspec.core.fock_sector import SectorIndex, sector_states
from convspec.core.hamiltonian import fock_hamiltonian, free_energy, jacobi_operator
from convspec.core.lifting import lift_model
from convspec.core.model import catalog_model
from convspec.core.oracle import expm_taylor
from convspec.core.spectral import spectral_decomposition
from convspec.utils.errors import ConfigError, HermiticityError, NumericalError, SectorError

MODELS = [
    catalog_model('krawtchouk', omega0=1.0, omega1=0.4, p=0.3),
    catalog_model('dual_hahn', omega0=0.2, omega1=-0.5, gamma=1.0, delta=0.5),
    catalog_model('q_hahn', q=0.8, alpha=1.0, beta=0.5),
    lift_model(catalog_model('hahn', alpha=1.5, beta=0.5), 2, 3, omega0=0.7, omega1=0.3),
]


def _mixed_state(model):
    mu = SectorIndex(model.k0 - 1, 0, 3, model.k0, model.k1)
    nu = SectorIndex(0, model.k1 - 1, 2, model.k0, model.k1)
    return SectoredState({
        mu: np.array([1.0, 0.5j, -0.25, 0.1 + 0.2j]),
        nu: np.array([0.3, -0.4j, 0.6]),
    }).normalized()


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_propagator_unitary(t):
    s = spectral_decomposition(MODELS[1], SectorIndex(0, 0, 6))
    U = propagator(s, t)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(7), atol=1e-10)


def test_propagator_identity_and_group_law():
    s = spectral_decomposition(MODELS[0], SectorIndex(0, 0, 8))
    np.testing.assert_allclose(propagator(s, 0.0), np.eye(9), atol=1e-12)
    np.testing.assert_allclose(propagator(s, 0.4) @ propagator(s, 1.1), propagator(s, 1.5), atol=1e-9)


@pytest.mark.parametrize('model', MODELS, ids=['krawtchouk', 'dual_hahn', 'q_hahn', 'lifted_hahn'])
def test_spectral_evolution_matches_oracle(model):
    psi = _mixed_state(model)
    for t in (0.0, 0.5, 3.0, 10.0):
        spectral = evolve_state(model, psi, t)
        dense = evolve_oracle(model, psi, t)
        assert spectral.norm() == pytest.approx(1.0, abs=1e-10)
        for mu in psi.sectors:
            np.testing.assert_allclose(spectral.amplitudes[mu], dense.amplitudes[mu], atol=1e-8)


def test_evolution_matches_full_fock_space():
    # 共振 ω0k0 = ω1k1 时 H0 与 H_I 对易，可与完整空间中的 e^{−i(H0+H_I)t} 直接比较
    model = catalog_model('krawtchouk', omega0=0.6, omega1=0.6, p=0.3)
    n_max = 4
    states, H = fock_hamiltonian(model, n_max)
    H = H + np.diag([model.omega0 * s.n0 + model.omega1 * s.n1 for s in states])
    index = {s: i for i, s in enumerate(states)}
    psi = _mixed_state(model)
    vector = np.zeros(len(states), dtype=complex)
    for mu, values in psi.amplitudes.items():
        for s, value in zip(sector_states(mu), values):
            vector[index[s]] = value
    t = 2.5
    full = expm_taylor(-1j * t * H) @ vector
    evolved = evolve_state(model, psi, t)
    for mu, values in evolved.amplitudes.items():
        rows = [index[s] for s in sector_states(mu)]
        np.testing.assert_allclose(values, full[rows], atol=1e-10)


@pytest.mark.parametrize('model', MODELS, ids=['krawtchouk', 'dual_hahn', 'q_hahn', 'lifted_hahn'])
def test_expectation_cross_check(model):
    psi = _mixed_state(model)
    X = SectoredObservable.number_operator(1, psi.sectors)
    for t in (0.0, 1.3, 7.0):
        direct = expectation(model, psi, X, t)
        via_elements = expectation_spectral(model, psi, X, t)
        assert via_elements.imag == pytest.approx(0.0, abs=1e-9)
        assert direct == pytest.approx(via_elements.real, abs=1e-9)


def test_off_diagonal_observable_blocks():
    model = MODELS[1]
    mu, nu = SectorIndex(0, 0, 2), SectorIndex(0, 0, 3)
    block = np.arange(12, dtype=float).reshape(3, 4) * (1 + 0.5j)
    X = SectoredObservable({(mu, nu): block, (nu, mu): block.conj().T})
    psi = SectoredState({mu: np.array([1.0, 0.0, 0.5]), nu: np.array([0.2, 0.3j, 0.0, 1.0])}).normalized()
    assert expectation(model, psi, X, 0.9) == pytest.approx(expectation_spectral(model, psi, X, 0.9).real, abs=1e-9)


def test_heisenberg_element_at_zero_time():
    model = MODELS[0]
    mu = SectorIndex(0, 0, 3)
    X = SectoredObservable.number_operator(0, [mu])
    for n in range(4):
        assert heisenberg_element(model, mu, n, mu, n, X, 0.0) == pytest.approx(float(n), abs=1e-12)
    with pytest.raises(SectorError):
        heisenberg_element(model, mu, 4, mu, 0, X, 0.0)


def test_eigenstate_is_stationary():
    model = catalog_model('dual_hahn', gamma=1.0, delta=0.5)
    mu = SectorIndex(0, 0, 5)
    psi = eigenstate(model, mu, 2)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    X = SectoredObservable.number_operator(0, [mu])
    values = [expectation(model, psi, X, t) for t in (0.0, 0.7, 4.0)]
    np.testing.assert_allclose(values, values[0], atol=1e-10)
    overlap = abs(psi.inner(evolve_state(model, psi, 3.0)))
    assert overlap == pytest.approx(1.0, abs=1e-10)


def test_non_hermitian_observable_rejected():
    mu = SectorIndex(0, 0, 1)
    X = SectoredObservable({(mu, mu): np.array([[0.0, 1.0], [0.0, 0.0]])})
    with pytest.raises(HermiticityError):
        expectation(MODELS[0], SectoredState.basis(mu, 0), X, 1.0)


def test_state_records():
    records = [{'r0': 0, 'r1': 0, 'N': 1, 're': [1.0, 0.0], 'im': [0.0, 1.0]}]
    psi = SectoredState.from_records(records)
    assert psi.norm() == pytest.approx(np.sqrt(2.0))
    assert SectoredState.from_records(psi.to_records()).to_records() == psi.to_records()


@pytest.mark.parametrize('records', [
    {'r0': 0},
    [{'r0': 0, 'r1': 0, 'N': 1}],
    [{'r0': 0, 'r1': 0, 'N': 1, 're': [1.0, 0.0], 'im': [0.0]}],
    [{'r0': 0, 'r1': 0, 'N': 0, 're': [1.0]}, {'r0': 0, 'r1': 0, 'N': 0, 're': [0.5]}],
])
def test_invalid_state_records(records):
    with pytest.raises(ConfigError):
        SectoredState.from_records(records)


def test_state_shape_checked():
    with pytest.raises(SectorError):
        SectoredState.from_records([{'r0': 0, 'r1': 0, 'N': 2, 're': [1.0]}])
    with pytest.raises(ConfigError):
        SectoredState().normalized()


def test_observable_records_round_trip():
    mu = SectorIndex(0, 0, 1)
    X = SectoredObservable.number_operator(0, [mu])
    again = SectoredObservable.from_records(X.to_records())
    np.testing.assert_array_equal(again.block(mu, mu), X.block(mu, mu))
    assert np.all(again.block(mu, SectorIndex(0, 0, 2)) == 0)


def test_zero_time_returns_initial_state():
    model = MODELS[3]
    psi = _mixed_state(model)
    evolved = evolve_state(model, psi, 0.0)
    for mu in psi.sectors:
        np.testing.assert_array_equal(evolved.amplitudes[mu], psi.amplitudes[mu])
    evolved.amplitudes[psi.sectors[0]][0] = 7.0
    assert psi.amplitudes[psi.sectors[0]][0] != 7.0


@pytest.mark.parametrize('t', [0.0, 1.0])
def test_unnormalized_state_rejected(t):
    psi = SectoredState({SectorIndex(0, 0, 1): np.array([1.0, 1.0])})
    with pytest.raises(ConfigError, match='归一化'):
        evolve_state(MODELS[0], psi, t)
    with pytest.raises(ConfigError):
        evolve_oracle(MODELS[0], psi, t)


def test_imaginary_expectation_raises(monkeypatch):
    mu = SectorIndex(0, 0, 1)
    X = SectoredObservable.number_operator(0, [mu])
    monkeypatch.setattr(SectoredObservable, 'bracket', lambda self, psi, phi=None: complex(1.0, 1e-3))
    with pytest.raises(NumericalError):
        expectation(MODELS[0], SectoredState.basis(mu, 0), X, 1.0)


def test_krawtchouk_single_photon_oscillation():
    # N=1、p=1/2 时 H_I = (1+σx)/2，n0(t) = sin²(t/2)
    model = catalog_model('krawtchouk', p=0.5)
    mu = SectorIndex(0, 0, 1)
    psi = SectoredState.basis(mu, 0)
    X = SectoredObservable.number_operator(0, [mu])
    for t, n0 in [(0.0, 0.0), (np.pi / 2, 0.5), (np.pi, 1.0), (2 * np.pi, 0.0), (1.0, np.sin(0.5) ** 2)]:
        assert expectation(model, psi, X, t) == pytest.approx(n0, abs=1e-12)


def _energy_observable(model, sectors):
    blocks = {}
    for mu in sectors:
        blocks[(mu, mu)] = jacobi_operator(model, mu).to_dense() + np.diag(free_energy(model, mu))
    return SectoredObservable(blocks)


@pytest.mark.parametrize('model', [
    catalog_model('dual_hahn', gamma=1.0, delta=0.5),
    catalog_model('dual_hahn', omega0=0.6, omega1=0.6, gamma=1.0, delta=0.5),
    lift_model(catalog_model('hahn', alpha=1.5, beta=0.5), 2, 3, omega0=0.6, omega1=0.4),
], ids=['interaction_only', 'resonant', 'lifted_resonant'])
def test_energy_conserved(model):
    psi = _mixed_state(model)
    H = _energy_observable(model, psi.sectors)
    energies = [expectation(model, psi, H, t) for t in (0.0, 1.0, 5.0, 50.0)]
    np.testing.assert_allclose(energies, energies[0], rtol=1e-10, atol=1e-10)


def test_heisenberg_element_constant_for_conserved_observable():
    model = catalog_model('hahn', alpha=1.5, beta=0.5)
    mu = SectorIndex(0, 0, 4)
    s = spectral_decomposition(model, mu)
    vectors = s.complex_coeffs() * np.sqrt(s.weights)[None, :]
    X = SectoredObservable({(mu, mu): vectors @ np.diag([0.3, -1.0, 2.0, 0.5, 1.7]) @ vectors.conj().T})
    for t in (0.8, 6.0):
        for m in range(mu.N + 1):
            for n in range(mu.N + 1):
                assert heisenberg_element(model, mu, m, mu, n, X, t) == \
                    pytest.approx(heisenberg_element(model, mu, m, mu, n, X, 0.0), abs=1e-10)
