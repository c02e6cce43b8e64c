"""
九个有限正交多项式族的目录

通过 get_family(name, params) 构造族描述符；family_spectrum、family_weight、
family_polynomial 是对描述符方法的函数式封装。
"""
import logging

from ..utils.config import check_sector_cap
from ..utils.errors import ConfigError
from .base_family import BaseFamily, QFamily
from .classical import Chebyshev, DualHahn, Hahn, Krawtchouk
from .q_families import AffineQKrawtchouk, DualQHahn, DualQKrawtchouk, QHahn, QKrawtchouk

logger = logging.getLogger(__name__)

FAMILIES = {
    cls.name: cls
    for cls in (Krawtchouk, DualHahn, Chebyshev, Hahn,
                DualQHahn, AffineQKrawtchouk, QKrawtchouk, QHahn, DualQKrawtchouk)
}

FAMILY_NAMES = tuple(FAMILIES)

# 每个族的默认参数点（CLI 与 verify 使用）
DEFAULT_GRID = {
    'krawtchouk': [{'p': 0.5}, {'p': 0.3}, {'p': 0.8}],
    'dual_hahn': [{'gamma': 0.0, 'delta': 0.0}, {'gamma': 1.0, 'delta': 0.5}, {'gamma': -0.5, 'delta': 2.0}],
    'chebyshev': [{}],
    'hahn': [{'alpha': 0.0, 'beta': 0.0}, {'alpha': 1.5, 'beta': 0.5}, {'alpha': -0.5, 'beta': -0.3}],
    'dual_q_hahn': [{'q': 0.5, 'gamma': 0.5, 'delta': 0.5}, {'q': 0.8, 'gamma': 1.0, 'delta': 0.3},
                    {'q': 0.3, 'gamma': 2.0, 'delta': 0.5}],
    'affine_q_krawtchouk': [{'q': 0.5, 'p': 0.5}, {'q': 0.8, 'p': 1.0}, {'q': 0.3, 'p': 2.0}],
    'q_krawtchouk': [{'q': 0.5, 'p': 1.0}, {'q': 0.8, 'p': 0.5}, {'q': 0.3, 'p': 2.0}],
    'q_hahn': [{'q': 0.5, 'alpha': 0.5, 'beta': 0.5}, {'q': 0.8, 'alpha': 1.0, 'beta': 0.5},
               {'q': 0.3, 'alpha': 2.0, 'beta': 1.5}],
    'dual_q_krawtchouk': [{'q': 0.5, 'c': -1.0}, {'q': 0.8, 'c': -0.5}, {'q': 0.3, 'c': -2.0}],
}


def get_family(name, params=None):
    """
    按名称构造族描述符

    Args:
        name (str): 族名称
        params (dict, optional): 族参数

    Returns:
        BaseFamily: 族描述符
    """
    cls = FAMILIES.get(name)
    if cls is None:
        raise ConfigError(f"未知的多项式族 'name': {name!r}，可选: {', '.join(FAMILY_NAMES)}")
    return cls(params)


def family_spectrum(f, l, N):
    """闭式本征值 E_{l,N}"""
    check_sector_cap(N, f.is_q)
    return f.spectrum(l, N)


def family_weight(f, l, N, normalized=True):
    """闭式权函数 w_l，normalized=True 时 Σ_l w_l = 1"""
    check_sector_cap(N, f.is_q)
    return f.weight(l, N, normalized=normalized)


def family_polynomial(f, n, l, N, normalized=True):
    """闭式多项式值 P_n(E_{l,N})，normalized=True 时 P_0 = 1"""
    check_sector_cap(N, f.is_q)
    return f.polynomial(n, l, N, normalized=normalized)


__all__ = [
    'BaseFamily', 'QFamily', 'FAMILIES', 'FAMILY_NAMES', 'DEFAULT_GRID',
    'get_family', 'family_spectrum', 'family_weight', 'family_polynomial',
]
