"""
提升构造：由 k0=k1=1 的初始模型得到任意 (k0,k1) 的哈密顿量，
其每个扇区 (r0,r1,N) 都复现初始模型在扇区 N 上的谱和多项式。

提升后的耦合 g̃(n0,n1) = g((n0−r0)/k0, (n1−r1)/k1)·W(n0,n1)，
对角部分 h̃0(n0,n1) = h0((n0−r0)/k0, (n1−r1)/k1)。
"""
import math

from ..utils.errors import ConfigError, NumericalError, SectorError
from .model import LiftedCoupling, ModelSpec


def w_factor(k0, k1, n0, n1, r0, r1):
    """
    W 算符在占据数 (n0,n1) 上的本征值

    使 W·a0^{k0}(a1*)^{k1}|n⟩_μ = √(n(N−n+1))|n−1⟩_μ，其中 (n0,n1) 为移位之后的占据数。

    Args:
        k0 (int): 模0的转换重数
        k1 (int): 模1的转换重数
        n0 (int): 模0光子数
        n1 (int): 模1光子数
        r0 (int): n0 模 k0 的余数
        r1 (int): n1 模 k1 的余数

    Returns:
        float: 非负标量
    """
    if k0 < 1 or k1 < 1:
        raise SectorError(f"转换重数必须为正整数: k0={k0}, k1={k1}")
    if n0 < 0 or n0 % k0 != r0:
        raise SectorError(f"n0={n0} 与余数 r0={r0} (k0={k0}) 不相容")
    if n1 < 0 or n1 % k1 != r1:
        raise SectorError(f"n1={n1} 与余数 r1={r1} (k1={k1}) 不相容")
    if n1 < k1:
        raise SectorError(f"W 要求 n1 ≥ k1，实际 n1={n1}, k1={k1}")

    numerator = (n0 - r0 + k0) * (n1 - r1)
    denominator = k0 * k1
    for j in range(1, k0 + 1):
        denominator *= n0 + j
    for j in range(k1):
        denominator *= n1 - j
    value = numerator / denominator
    if value < 0:
        raise NumericalError(f"W 在 (n0={n0}, n1={n1}) 处根号下为负: {value}")
    return math.sqrt(value)


def inner_occupations(k0, k1, n0, n1):
    """把提升模型的占据数映射为内模型的占据数 ((n0−r0)/k0, (n1−r1)/k1)"""
    return (n0 - n0 % k0) // k0, (n1 - n1 % k1) // k1


def lift_model(inner, k0, k1, omega0=None, omega1=None):
    """
    构造提升模型

    Args:
        inner (ModelSpec): k0=k1=1 的初始模型
        k0 (int): 目标重数
        k1 (int): 目标重数
        omega0 (float, optional): 自由频率，默认沿用内模型
        omega1 (float, optional): 自由频率，默认沿用内模型

    Returns:
        ModelSpec: 提升后的模型
    """
    if not isinstance(inner, ModelSpec):
        raise ConfigError("lift_model 的 'inner' 必须是 ModelSpec")
    return ModelSpec(
        k0=k0,
        k1=k1,
        omega0=inner.omega0 if omega0 is None else omega0,
        omega1=inner.omega1 if omega1 is None else omega1,
        coupling=LiftedCoupling(inner),
    )
