"""
双模Fock态与守恒扇区之间的映射

扇区 μ=(r0,r1,N) 由基矢 |n⟩_μ = |r0+k0·n, r1+k1·(N−n)⟩ 张成，维数 N+1。
本模块只使用整数运算。
"""
from dataclasses import dataclass

from ..utils.errors import SectorError


@dataclass(frozen=True)
class SectorIndex:
    """守恒扇区标签 μ=(r0,r1,N)，附带转换重数 (k0,k1)"""
    r0: int
    r1: int
    N: int
    k0: int = 1
    k1: int = 1

    def __post_init__(self):
        if self.k0 < 1 or self.k1 < 1:
            raise SectorError(f"转换重数必须为正整数: k0={self.k0}, k1={self.k1}")
        if not 0 <= self.r0 < self.k0:
            raise SectorError(f"余数 r0={self.r0} 必须在 [0,{self.k0}) 内")
        if not 0 <= self.r1 < self.k1:
            raise SectorError(f"余数 r1={self.r1} 必须在 [0,{self.k1}) 内")
        if self.N < 0:
            raise SectorError(f"扇区层级 N={self.N} 必须非负")

    @property
    def dim(self):
        return self.N + 1

    @property
    def K(self):
        """K 的本征值 k1·r0 + k0·r1 + k0·k1·N"""
        return self.k1 * self.r0 + self.k0 * self.r1 + self.k0 * self.k1 * self.N

    @property
    def sort_key(self):
        return (self.N, self.r0, self.r1)

    def to_dict(self):
        return {'r0': self.r0, 'r1': self.r1, 'N': self.N}

    def __str__(self):
        return f"({self.r0},{self.r1},{self.N})"


@dataclass(frozen=True)
class FockState:
    """双模Fock基矢 |n0,n1⟩"""
    n0: int
    n1: int

    def __post_init__(self):
        if self.n0 < 0 or self.n1 < 0:
            raise SectorError(f"光子数必须非负: n0={self.n0}, n1={self.n1}")


def decompose_state(s, k0, k1):
    """
    把Fock态分解为扇区标签和扇区内索引

    Args:
        s (FockState): Fock态
        k0 (int): 模0的转换重数
        k1 (int): 模1的转换重数

    Returns:
        tuple: (SectorIndex, n)
    """
    r0 = s.n0 % k0
    r1 = s.n1 % k1
    n = (s.n0 - r0) // k0
    N = n + (s.n1 - r1) // k1
    return SectorIndex(r0, r1, N, k0, k1), n


def compose_state(mu, n):
    """
    由扇区标签和索引 n 还原Fock态

    Args:
        mu (SectorIndex): 扇区标签
        n (int): 扇区内索引，0 ≤ n ≤ N

    Returns:
        FockState: 对应的Fock态
    """
    if not 0 <= n <= mu.N:
        raise SectorError(f"索引 n={n} 超出扇区 {mu} 的范围 [0,{mu.N}]")
    return FockState(mu.r0 + mu.k0 * n, mu.r1 + mu.k1 * (mu.N - n))


def charges(s, k0, k1):
    """
    计算运动积分 K、R0、R1 以及维数算符的本征值

    Args:
        s (FockState): Fock态
        k0 (int): 模0的转换重数
        k1 (int): 模1的转换重数

    Returns:
        tuple: (K, r0, r1, dim)
    """
    mu, _ = decompose_state(s, k0, k1)
    K = k1 * s.n0 + k0 * s.n1
    return K, mu.r0, mu.r1, mu.dim


def sector_states(mu):
    """按 n=0..N 的顺序列出扇区内的全部Fock态"""
    return [compose_state(mu, n) for n in range(mu.N + 1)]


def sectors_up_to(k0, k1, N_max):
    """
    枚举 N ≤ N_max 的所有扇区，按 (N, r0, r1) 排序

    Args:
        k0 (int): 模0的转换重数
        k1 (int): 模1的转换重数
        N_max (int): 最大扇区层级

    Returns:
        list: SectorIndex 列表
    """
    return [SectorIndex(r0, r1, N, k0, k1)
            for N in range(N_max + 1)
            for r0 in range(k0)
            for r1 in range(k1)]
