import pytest
from hypothesis import given, strategies as st

from convspec.core.fock_sector import FockState, SectorIndex, charges, compose_state, decompose_state, \
    sector_states, sectors_up_to
from convspec.utils.errors import SectorError

occupations = st.integers(min_value=0, max_value=60)
multiplicities = st.integers(min_value=1, max_value=4)


@given(occupations, occupations, multiplicities, multiplicities)
def test_decompose_compose_round_trip(n0, n1, k0, k1):
    s = FockState(n0, n1)
    mu, n = decompose_state(s, k0, k1)
    assert 0 <= n <= mu.N
    assert compose_state(mu, n) == s


@given(occupations, occupations, multiplicities, multiplicities)
def test_charges_match_sector(n0, n1, k0, k1):
    K, r0, r1, dim = charges(FockState(n0, n1), k0, k1)
    mu, _ = decompose_state(FockState(n0, n1), k0, k1)
    assert K == k1 * n0 + k0 * n1
    assert K == mu.K
    assert (r0, r1) == (n0 % k0, n1 % k1)
    assert dim == mu.N + 1


def test_example_decomposition():
    mu, n = decompose_state(FockState(5, 7), 2, 3)
    assert (mu.r0, mu.r1, mu.N, n) == (1, 1, 4, 2)
    assert compose_state(mu, 0) == FockState(1, 13)
    assert compose_state(mu, 4) == FockState(9, 1)


def test_compose_rejects_out_of_range_index():
    mu = SectorIndex(0, 0, 3)
    with pytest.raises(SectorError):
        compose_state(mu, 4)
    with pytest.raises(SectorError):
        compose_state(mu, -1)


@pytest.mark.parametrize('kwargs', [
    dict(r0=2, r1=0, N=1, k0=2, k1=1),
    dict(r0=0, r1=-1, N=1, k0=1, k1=1),
    dict(r0=0, r1=0, N=-1),
    dict(r0=0, r1=0, N=1, k0=0, k1=1),
])
def test_invalid_sector_index(kwargs):
    with pytest.raises(SectorError):
        SectorIndex(**kwargs)


def test_negative_occupation_rejected():
    with pytest.raises(SectorError):
        FockState(-1, 0)


def test_sector_states_order():
    mu = SectorIndex(1, 2, 2, 2, 3)
    assert sector_states(mu) == [FockState(1, 8), FockState(3, 5), FockState(5, 2)]


def test_sectors_up_to_partitions_the_fock_box():
    k0, k1, N_max = 2, 3, 4
    sectors = sectors_up_to(k0, k1, N_max)
    assert len(sectors) == k0 * k1 * (N_max + 1)
    assert [mu.sort_key for mu in sectors] == sorted(mu.sort_key for mu in sectors)
    seen = set()
    for mu in sectors:
        for s in sector_states(mu):
            assert s not in seen
            seen.add(s)
    # N=0 的扇区恰好是各余数态
    for n0 in range(k0):
        for n1 in range(k1):
            assert FockState(n0, n1) in seen


def test_sector_index_serialisation():
    mu = SectorIndex(1, 0, 5, 2, 1)
    assert mu.to_dict() == {'r0': 1, 'r1': 0, 'N': 5}
    assert str(mu) == '(1,0,5)'
    assert mu.dim == 6
