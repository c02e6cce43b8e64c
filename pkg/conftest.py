import sys
from pathlib import Path

import pytest

# 添加项目根目录到sys.path
ROOT_DIR = Path(__file__).resolve().parent
sys.path.insert(0, str(ROOT_DIR))

CONVSPEC_ENV = (
    'CONVSPEC_MAX_N', 'CONVSPEC_Q_MAX_N', 'CONVSPEC_TOL', 'CONVSPEC_DEGENERACY_TOL',
    'CONVSPEC_MAX_ITER', 'CONVSPEC_LOG_LEVEL', 'CONVSPEC_JOBS', 'CONVSPEC_SERIES_DPS',
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """每个测试都从默认配置开始，不受本地 .env 影响"""
    for name in CONVSPEC_ENV:
        monkeypatch.delenv(name, raising=False)
