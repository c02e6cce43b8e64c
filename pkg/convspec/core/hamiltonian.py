"""
扇区雅可比算符的构造

在扇区 μ 的基 |n⟩_μ 下，相互作用哈密顿量是厄米三对角矩阵：
对角元 a_n，(n,n+1) 元 b_n = |b_n|e^{−iφ_n}，(n+1,n) 元为其共轭。
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..utils.config import check_sector_cap
from ..utils.errors import ConfigError, NumericalError, SectorError
from .fock_sector import FockState, compose_state, decompose_state, sector_states
from .lifting import inner_occupations, w_factor
from .model import CatalogCoupling, LiftedCoupling, TablesCoupling, wrap_phase

logger = logging.getLogger(__name__)


@dataclass
class JacobiOperator:
    """极坐标形式的厄米三对角矩阵"""
    diag: np.ndarray
    offdiag_mag: np.ndarray
    offdiag_phase: np.ndarray

    def __post_init__(self):
        self.diag = np.asarray(self.diag, dtype=float)
        self.offdiag_mag = np.asarray(self.offdiag_mag, dtype=float)
        self.offdiag_phase = np.asarray(self.offdiag_phase, dtype=float)
        size = self.diag.size
        if size == 0:
            raise SectorError("雅可比算符至少需要一个对角元")
        if self.offdiag_mag.shape != (size - 1,) or self.offdiag_phase.shape != (size - 1,):
            raise SectorError(f"非对角数组长度应为 {size - 1}")
        if np.any(self.offdiag_mag < 0):
            raise NumericalError("非对角元模长必须非负")

    @property
    def N(self):
        return self.diag.size - 1

    @property
    def offdiag(self):
        """复数非对角元 b_n"""
        return self.offdiag_mag * np.exp(-1j * self.offdiag_phase)

    def to_dense(self):
        """稠密厄米矩阵"""
        H = np.diag(self.diag.astype(complex))
        if self.N > 0:
            b = self.offdiag
            H += np.diag(b, 1) + np.diag(b.conj(), -1)
        return H

    def scale(self):
        """矩阵无穷范数的上界，用作相对容差的尺度"""
        bound = np.max(np.abs(self.diag))
        if self.N > 0:
            bound += 2 * np.max(self.offdiag_mag)
        return float(bound)


def _table_lookup(model, n0, n1):
    mu, n = decompose_state(FockState(n0, n1), model.k0, model.k1)
    return model.coupling.sector(mu.N), mu, n


def diagonal_value(model, n0, n1):
    """
    对角函数 h0 在占据数 (n0,n1) 处的值

    Args:
        model (ModelSpec): 模型
        n0 (int): 模0光子数
        n1 (int): 模1光子数

    Returns:
        float: h0(n0,n1)
    """
    coupling = model.coupling
    if isinstance(coupling, CatalogCoupling):
        return coupling.family.h0(n0, n1)
    if isinstance(coupling, TablesCoupling):
        table, _, n = _table_lookup(model, n0, n1)
        return float(table.a[n])
    if isinstance(coupling, LiftedCoupling):
        m0, m1 = inner_occupations(model.k0, model.k1, n0, n1)
        return diagonal_value(coupling.inner, m0, m1)
    raise ConfigError(f"不支持的耦合类型: {type(coupling).__name__}")


def _shift_product(k0, k1, n0, n1):
    """(n0+1)...(n0+k0) · n1(n1−1)...(n1−k1+1)"""
    product = 1
    for j in range(1, k0 + 1):
        product *= n0 + j
    for j in range(k1):
        product *= n1 - j
    return product


def coupling_sq(model, n0, n1):
    """
    耦合函数模方 |g(n0,n1)|²

    Args:
        model (ModelSpec): 模型
        n0 (int): 模0光子数
        n1 (int): 模1光子数

    Returns:
        float: |g|²，在 n1 < k1（不出现于任何矩阵元）处取 0
    """
    if n0 < 0 or n1 < model.k1:
        return 0.0
    coupling = model.coupling
    if isinstance(coupling, CatalogCoupling):
        return coupling.family.coupling_sq(n0, n1)
    if isinstance(coupling, TablesCoupling):
        table, mu, n = _table_lookup(model, n0, n1)
        if n >= mu.N:
            return 0.0
        return float(table.b_mag[n]) ** 2 / _shift_product(model.k0, model.k1, n0, n1)
    if isinstance(coupling, LiftedCoupling):
        m0, m1 = inner_occupations(model.k0, model.k1, n0, n1)
        inner_value = coupling_sq(coupling.inner, m0, m1)
        if inner_value == 0.0:
            return 0.0
        w = w_factor(model.k0, model.k1, n0, n1, n0 % model.k0, n1 % model.k1)
        return inner_value * w * w
    raise ConfigError(f"不支持的耦合类型: {type(coupling).__name__}")


def coupling_phase(model, n0, n1):
    """耦合相位 θ(n0,n1)，目录族恒为 0"""
    coupling = model.coupling
    if isinstance(coupling, CatalogCoupling):
        return 0.0
    if isinstance(coupling, TablesCoupling):
        table, mu, n = _table_lookup(model, n0, n1)
        return float(table.b_phase[n]) if n < mu.N else 0.0
    if isinstance(coupling, LiftedCoupling):
        m0, m1 = inner_occupations(model.k0, model.k1, n0, n1)
        return coupling_phase(coupling.inner, m0, m1)
    raise ConfigError(f"不支持的耦合类型: {type(coupling).__name__}")


def cal_g(model, A0, K):
    """
    函数 𝓖(A0,K) = |g(k0A0, K/k0−k1A0)|² (k0A0+1)...(k0A0+k0) (K/k0−k1A0)...(K/k0−k1A0−k1+1)

    Args:
        model (ModelSpec): 模型
        A0 (Fraction|float): A0 的本征值 r0/k0 + n
        K (int): K 的本征值

    Returns:
        float: 非负实数，扇区边界处为精确零
    """
    k0, k1 = model.k0, model.k1
    A0 = Fraction(A0).limit_denominator(10 ** 9)
    n0 = A0 * k0
    n1 = (Fraction(K) - k1 * n0) / k0
    if n0.denominator != 1 or n1.denominator != 1:
        raise SectorError(f"𝓖 的参数 (A0={A0}, K={K}) 不对应整数占据数")
    n0, n1 = int(n0), int(n1)
    product = _shift_product(k0, k1, n0, n1)
    if product == 0:
        return 0.0
    if n0 < 0 or n1 < 0:
        raise SectorError(f"𝓖 的参数 (A0={A0}, K={K}) 位于扇区之外")
    value = coupling_sq(model, n0, n1) * product
    if value < 0:
        raise NumericalError(f"𝓖(A0={A0}, K={K}) 为负: {value}")
    return value


def _check_sector(model, mu):
    if mu.k0 != model.k0 or mu.k1 != model.k1:
        raise SectorError(
            f"扇区 {mu} 的重数 (k0={mu.k0}, k1={mu.k1}) 与模型 (k0={model.k0}, k1={model.k1}) 不一致")
    family = model.family
    check_sector_cap(mu.N, q_family=family is not None and family.is_q)


def jacobi_operator(model, mu):
    """
    构造扇区 μ 上的雅可比算符

    Args:
        model (ModelSpec): 模型
        mu (SectorIndex): 扇区

    Returns:
        JacobiOperator: 雅可比算符
    """
    _check_sector(model, mu)
    coupling = model.coupling
    if isinstance(coupling, TablesCoupling):
        table = coupling.sector(mu.N)
        return JacobiOperator(table.a.copy(), table.b_mag.copy(), table.b_phase.copy())

    N = mu.N
    diag = np.empty(N + 1)
    mag = np.empty(N)
    phase = np.empty(N)
    K = mu.K
    for n in range(N + 1):
        s = compose_state(mu, n)
        diag[n] = diagonal_value(model, s.n0, s.n1)
        if n < N:
            mag[n] = math.sqrt(cal_g(model, Fraction(mu.r0, mu.k0) + n, K))
            phase[n] = wrap_phase(coupling_phase(model, s.n0, s.n1))
    logger.debug(f"已构造扇区 {mu} 的雅可比算符")
    return JacobiOperator(diag, mag, phase)


def gauge_real(j):
    """
    对角幺正规范变换，把厄米三对角矩阵化为实对称矩阵

    Args:
        j (JacobiOperator): 雅可比算符

    Returns:
        tuple: (diag, offdiag, chi)，offdiag = |b_n|，χ_0 = 0
    """
    chi = np.zeros(j.N + 1)
    for n in range(j.N):
        chi[n + 1] = wrap_phase(chi[n] + j.offdiag_phase[n])
    return j.diag.copy(), j.offdiag_mag.copy(), chi


def free_energy(model, mu):
    """H0 在扇区基上的本征值 ω0r0+ω1r1+ω1k1N+(ω0k0−ω1k1)n"""
    n = np.arange(mu.N + 1)
    base = model.omega0 * mu.r0 + model.omega1 * mu.r1 + model.omega1 * mu.k1 * mu.N
    return base + (model.omega0 * mu.k0 - model.omega1 * mu.k1) * n


def operator_matrices(model, mu):
    """
    扇区上的稠密算符矩阵

    Args:
        model (ModelSpec): 模型
        mu (SectorIndex): 扇区

    Returns:
        dict: 键为 'A0', 'A', 'A_star', 'H_I', 'H_0' 的矩阵
    """
    j = jacobi_operator(model, mu)
    size = mu.N + 1
    A = np.zeros((size, size), dtype=complex)
    if mu.N > 0:
        A += np.diag(j.offdiag, 1)
    return {
        'A0': np.diag(mu.r0 / mu.k0 + np.arange(size, dtype=float)),
        'A': A,
        'A_star': A.conj().T,
        'H_I': np.diag(j.diag.astype(complex)) + A + A.conj().T,
        'H_0': np.diag(free_energy(model, mu)),
    }


def shift_action_matrix(k0, k1, mu):
    """
    W·a0^{k0}(a1*)^{k1} 在扇区上的矩阵，应为 (n−1,n) 元 √(n(N−n+1)) 的移位矩阵

    Args:
        k0 (int): 模0的转换重数
        k1 (int): 模1的转换重数
        mu (SectorIndex): 扇区

    Returns:
        numpy.ndarray: (N+1)×(N+1) 矩阵
    """
    size = mu.N + 1
    M = np.zeros((size, size))
    for n in range(1, size):
        upper = compose_state(mu, n)
        lower = compose_state(mu, n - 1)
        ladder = math.sqrt(_shift_product(k0, k1, lower.n0, lower.n1))
        M[n - 1, n] = w_factor(k0, k1, lower.n0, lower.n1, mu.r0, mu.r1) * ladder
    return M


def fock_hamiltonian(model, n_max):
    """
    在截断的双模Fock空间 {0..n_max}² 上由升降算符直接构造 H_I

    Args:
        model (ModelSpec): 目录族或提升模型
        n_max (int): 每个模的最大光子数

    Returns:
        tuple: (Fock态列表, 稠密厄米矩阵)
    """
    if isinstance(model.coupling, TablesCoupling):
        raise ConfigError("系数表模型只在扇区上定义，不能构造完整Fock空间哈密顿量")
    check_sector_cap(n_max)
    k0, k1 = model.k0, model.k1
    dim = n_max + 1
    states = [FockState(n0, n1) for n0 in range(dim) for n1 in range(dim)]

    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    eye = np.eye(dim)
    a0 = np.kron(a, eye)
    a1 = np.kron(eye, a)
    shift = np.linalg.matrix_power(a0, k0) @ np.linalg.matrix_power(a1.T, k1)

    h = np.array([diagonal_value(model, s.n0, s.n1) for s in states])
    g = np.zeros(len(states), dtype=complex)
    for i, s in enumerate(states):
        if s.n1 >= k1 and s.n0 + k0 <= n_max:
            g[i] = math.sqrt(coupling_sq(model, s.n0, s.n1)) * np.exp(-1j * coupling_phase(model, s.n0, s.n1))
    interaction = np.diag(g) @ shift
    H = np.diag(h.astype(complex)) + interaction + interaction.conj().T
    return states, H


def sector_block(states, H, mu):
    """从完整Fock矩阵中取出扇区 μ 对应的块（按 n=0..N 排序）"""
    index = {s: i for i, s in enumerate(states)}
    rows = [index[s] for s in sector_states(mu)]
    return H[np.ix_(rows, rows)]
