import pytest

from convspec.utils.config import check_sector_cap, get_section_config, load_config
from convspec.utils.errors import ConfigError


def test_defaults():
    config = load_config()
    assert config['limits'] == {'max_n': 100, 'q_max_n': 30}
    assert config['tolerances'] == {'verify': 1e-10, 'degeneracy': 1e-12}
    assert config['solver']['max_iterations'] == 60
    assert config['precision']['series_dps'] == 30
    assert config['logging']['level'] == 'WARNING'
    assert config['cli']['jobs'] == 1


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('CONVSPEC_MAX_N', '12')
    monkeypatch.setenv('CONVSPEC_TOL', '1e-8')
    monkeypatch.setenv('CONVSPEC_LOG_LEVEL', 'debug')
    monkeypatch.setenv('CONVSPEC_SERIES_DPS', '60')
    config = load_config()
    assert config['limits']['max_n'] == 12
    assert config['tolerances']['verify'] == 1e-8
    assert config['logging']['level'] == 'DEBUG'
    assert config['precision']['series_dps'] == 60
    assert get_section_config('limits')['max_n'] == 12
    assert get_section_config('missing') == {}


@pytest.mark.parametrize('name,value', [
    ('CONVSPEC_MAX_N', 'many'),
    ('CONVSPEC_MAX_N', '0'),
    ('CONVSPEC_Q_MAX_N', '-3'),
    ('CONVSPEC_TOL', 'abc'),
    ('CONVSPEC_JOBS', '1.5'),
    ('CONVSPEC_SERIES_DPS', '0'),
    ('CONVSPEC_LOG_LEVEL', 'LOUD'),
])
def test_invalid_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        load_config()


def test_sector_cap(monkeypatch):
    check_sector_cap(100)
    check_sector_cap(30, q_family=True)
    with pytest.raises(ConfigError, match='CONVSPEC_MAX_N'):
        check_sector_cap(101)
    with pytest.raises(ConfigError, match='CONVSPEC_Q_MAX_N'):
        check_sector_cap(31, q_family=True)
    monkeypatch.setenv('CONVSPEC_MAX_N', '20')
    with pytest.raises(ConfigError, match='CONVSPEC_MAX_N'):
        check_sector_cap(25, q_family=True)
