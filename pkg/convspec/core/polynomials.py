"""
特殊函数求值器

包括 Pochhammer 符号、q-Pochhammer 符号、终止型超几何级数 rFs、
终止型基本超几何级数 3φ2，以及由三项递推关系生成多项式值的 recurrence_eval。
级数按项比逐项更新求和，不重复计算阶乘。

终止型级数的各项可以比和大很多个数量级，双精度求和会被抵消误差淹没；
给出 ctx 时在 mpmath 的扩展精度上下文中求和，只把最终结果转回 float。
"""
import functools
import logging
import math

import mpmath
import numpy as np

from ..utils.config import get_section_config
from ..utils.errors import ConfigError, NumericalError

logger = logging.getLogger(__name__)

# 判定“恰好为零”的分母阈值
_ZERO_TOL = 1e-13


@functools.lru_cache(maxsize=None)
def _context(dps):
    ctx = mpmath.MPContext()
    ctx.dps = dps
    logger.debug(f"创建 mpmath 上下文，精度 {dps} 位")
    return ctx


def series_context(guard_digits=0):
    """
    级数求值用的 mpmath 上下文

    每个精度对应一个独立上下文，精度创建后不再修改，多线程共享安全。

    Args:
        guard_digits (int): 在 CONVSPEC_SERIES_DPS 之上追加的十进制位数

    Returns:
        mpmath.MPContext: 上下文
    """
    dps = get_section_config('precision')['series_dps'] + max(0, int(guard_digits))
    return _context(dps)


def _finish(terms, ctx):
    if ctx is None:
        return math.fsum(terms)
    return float(ctx.fsum(terms))


def pochhammer(a, n):
    """
    升阶乘 (a)_n = a(a+1)...(a+n−1)，(a)_0 = 1

    Args:
        a (float): 参数
        n (int): 非负整数

    Returns:
        float: (a)_n
    """
    result = 1.0
    for j in range(n):
        result *= a + j
    return result


def q_pochhammer(a, q, n):
    """
    q-Pochhammer 符号 (a;q)_n = ∏_{j<n} (1 − a q^j)

    Args:
        a (float): 参数
        q (float): 0 < q < 1
        n (int): 非负整数

    Returns:
        float: (a;q)_n
    """
    result = 1.0
    for j in range(n):
        result *= 1.0 - a * q ** j
    return result


def q_pochhammer_flipped(a, q, n):
    """∏_{j<n} (a q^j − 1)，即 (−1)^n (a;q)_n，用于 a q^j > 1 时保持因子为正"""
    result = 1.0
    for j in range(n):
        result *= a * q ** j - 1.0
    return result


def factor_ratio(numerators, denominators):
    """
    计算 ∏numerators / ∏denominators，分子分母交替相乘以避免中间溢出

    Args:
        numerators (list): 分子因子
        denominators (list): 分母因子

    Returns:
        float: 比值
    """
    if any(d == 0 for d in denominators):
        raise NumericalError("因子比中出现为零的分母")
    if any(f == 0 for f in numerators):
        return 0.0
    result = 1.0
    num = list(numerators)
    den = list(denominators)
    for i in range(max(len(num), len(den))):
        if i < len(num):
            result *= num[i]
        if i < len(den):
            result /= den[i]
    return result


def _nonpositive_integer(a):
    """若 a 是非正整数则返回 −a，否则返回 None"""
    r = round(a)
    if r <= 0 and abs(a - r) <= 1e-12 * max(1.0, abs(a)):
        return -int(r)
    return None


def hypergeometric_terminating(num, den, z, m=None, ctx=None):
    """
    终止型超几何级数 Σ_{j=0}^{m} (num)_j/(den)_j · z^j/j!

    Args:
        num (list): 分子参数，至少一个为非正整数 −m
        den (list): 分母参数
        z (float): 自变量
        m (int, optional): 终止下标，不给出时由分子参数推断
        ctx (mpmath.MPContext, optional): 扩展精度上下文，默认双精度

    Returns:
        float: 级数值
    """
    if m is None:
        candidates = [c for c in (_nonpositive_integer(float(a)) for a in num) if c is not None]
        if not candidates:
            raise ConfigError(f"超几何级数不终止: 分子参数 {list(num)} 中没有非正整数")
        m = min(candidates)

    term = 1.0
    if ctx is not None:
        num = [ctx.mpf(a) for a in num]
        den = [ctx.mpf(b) for b in den]
        z = ctx.mpf(z)
        term = ctx.one
    terms = [term]
    for j in range(m):
        for b in den:
            if abs(b + j) <= _ZERO_TOL:
                raise NumericalError(f"超几何级数分母 ({b})_{j + 1} 在第 {j + 1} 项处为零")
        ratio = z / (j + 1)
        for a in num:
            ratio *= a + j
        for b in den:
            ratio /= b + j
        term *= ratio
        if term == 0:
            break
        terms.append(term)
    return _finish(terms, ctx)


def _q_termination(a, q):
    """若 a = q^{−m}（m ≥ 0 为整数）则返回 m，否则返回 None"""
    if a <= 0:
        return None
    m = -math.log(a) / math.log(q)
    r = round(m)
    if r >= 0 and abs(m - r) <= 1e-9:
        return int(r)
    return None


def basic_hypergeometric_3phi2(num, den, q, z, m=None, ctx=None):
    """
    终止型基本超几何级数 3φ2(a1,a2,a3; b1,b2 | q; z)

    参数形如 q^{−n} 时，调用方应在 ctx 中构造它们，避免先舍入为 float。

    Args:
        num (list): 三个分子参数，其中一个形如 q^{−m}
        den (list): 两个分母参数
        q (float): 0 < q < 1
        z (float): 自变量
        m (int, optional): 终止下标，不给出时由分子参数推断
        ctx (mpmath.MPContext, optional): 扩展精度上下文，默认双精度

    Returns:
        float: 级数值
    """
    if len(num) != 3 or len(den) != 2:
        raise ConfigError(f"3φ2 需要 3 个分子参数和 2 个分母参数，实际为 {len(num)} 和 {len(den)}")
    if not 0 < q < 1:
        raise ConfigError(f"参数 'q' 必须满足 0<q<1，实际为 {q}")
    if m is None:
        candidates = [c for c in (_q_termination(float(a), float(q)) for a in num) if c is not None]
        if not candidates:
            raise ConfigError(f"3φ2 级数不终止: 分子参数 {list(num)} 中没有 q 的非正整数次幂")
        m = min(candidates)

    term = 1.0
    if ctx is not None:
        num = [ctx.mpf(a) for a in num]
        den = [ctx.mpf(b) for b in den]
        q = ctx.mpf(q)
        z = ctx.mpf(z)
        term = ctx.one
    terms = [term]
    for j in range(m):
        qj = q ** j
        ratio = z / (1.0 - q * qj)
        for a in num:
            ratio *= 1.0 - a * qj
        for b in den:
            factor = 1.0 - b * qj
            if abs(factor) <= _ZERO_TOL:
                raise NumericalError(f"3φ2 分母 ({b};q)_{j + 1} 在第 {j + 1} 项处为零")
            ratio /= factor
        term *= ratio
        if term == 0:
            break
        terms.append(term)
    return _finish(terms, ctx)


def recurrence_eval(j, E):
    """
    由三项递推关系计算 P_0..P_N 在 E 处的值（实规范下，P_0 = 1）

    E·P_n = |b_{n−1}| P_{n−1} + a_n P_n + |b_n| P_{n+1}

    Args:
        j (JacobiOperator): 雅可比算符
        E (float): 求值点

    Returns:
        numpy.ndarray: 长度 N+1 的数组
    """
    diag = np.asarray(j.diag, dtype=float)
    mag = np.asarray(j.offdiag_mag, dtype=float)
    size = len(diag)
    P = np.zeros(size)
    P[0] = 1.0
    for n in range(size - 1):
        if mag[n] == 0.0:
            raise NumericalError(f"非对角元 |b_{n}| = 0，扇区解耦，递推无法继续")
        value = (E - diag[n]) * P[n]
        if n > 0:
            value -= mag[n - 1] * P[n - 1]
        P[n + 1] = value / mag[n]
    return P
