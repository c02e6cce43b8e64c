import os
from dotenv import load_dotenv

from .errors import ConfigError

# 加载.env文件
load_dotenv()


def _read_number(name, default, cast, positive=True):
    """从环境变量读取数值，无效时抛出ConfigError"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = cast(raw)
    except ValueError:
        raise ConfigError(f"环境变量 {name} 的值无效: {raw!r}")
    if positive and value <= 0:
        raise ConfigError(f"环境变量 {name} 必须为正数，实际为 {raw!r}")
    return value


def load_config():
    """
    加载配置信息，优先从环境变量中获取，如果不存在则使用默认值

    Returns:
        dict: 配置字典
    """
    level = os.getenv('CONVSPEC_LOG_LEVEL', 'WARNING').upper()
    if level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        raise ConfigError(f"环境变量 CONVSPEC_LOG_LEVEL 的值无效: {level!r}")

    config = {
        'limits': {
            'max_n': _read_number('CONVSPEC_MAX_N', 100, int),
            'q_max_n': _read_number('CONVSPEC_Q_MAX_N', 30, int),
        },
        'tolerances': {
            'verify': _read_number('CONVSPEC_TOL', 1e-10, float),
            'degeneracy': _read_number('CONVSPEC_DEGENERACY_TOL', 1e-12, float),
        },
        'solver': {
            'max_iterations': _read_number('CONVSPEC_MAX_ITER', 60, int),
        },
        'precision': {
            # 闭式级数求值的基础十进制精度，族按 N 和 q 再追加保护位
            'series_dps': _read_number('CONVSPEC_SERIES_DPS', 30, int),
        },
        'logging': {
            'level': level,
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        },
        'cli': {
            'jobs': _read_number('CONVSPEC_JOBS', 1, int),
        },
    }

    return config


def get_section_config(section_name):
    """
    获取特定配置段

    Args:
        section_name (str): 配置段名称，例如 'limits'

    Returns:
        dict: 配置段字典
    """
    config = load_config()
    return config.get(section_name, {})


def check_sector_cap(N, q_family=False):
    """
    检查扇区层级 N 是否超过配置的上限

    Args:
        N (int): 扇区层级
        q_family (bool): 是否为 q-族（使用更严格的上限）
    """
    limits = get_section_config('limits')
    cap = limits['q_max_n'] if q_family else limits['max_n']
    if N > limits['max_n'] or N > cap:
        name = 'CONVSPEC_Q_MAX_N' if q_family and N <= limits['max_n'] else 'CONVSPEC_MAX_N'
        raise ConfigError(f"扇区层级 N={N} 超过上限 {min(cap, limits['max_n'])}（由 {name} 控制）")
