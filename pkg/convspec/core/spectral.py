"""
扇区雅可比算符的数值对角化与谱分解

本征值由隐式位移 QL 迭代求得；本征矢系数 P_n(E_l) 由两侧三项递推
（正向与反向在扭转下标处拼接）计算，并归一化到 P_0 = 1；
权重由对偶正交关系 w_l = 1/Σ_n P_n(E_l)² 给出。
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..utils.config import get_section_config
from ..utils.errors import ConfigError, ConvergenceError, DegeneracyError, NumericalError
from .fock_sector import sectors_up_to
from .hamiltonian import gauge_real, jacobi_operator

logger = logging.getLogger(__name__)


@dataclass
class SpectralData:
    """单个扇区的谱分解"""
    eigenvalues: np.ndarray
    coeffs: np.ndarray
    weights: np.ndarray
    gauge: np.ndarray
    mu: object = None

    @property
    def N(self):
        return self.eigenvalues.size - 1

    def complex_coeffs(self):
        """带规范相位的系数 e^{iχ_n} P_n(E_l)"""
        return np.exp(1j * self.gauge)[:, None] * self.coeffs


def eigenvalues_tridiagonal(diag, offdiag, max_iterations=None):
    """
    隐式位移 QL 迭代求实对称三对角矩阵的全部本征值

    Args:
        diag (array): 对角元
        offdiag (array): 非对角元
        max_iterations (int, optional): 每个本征值的最大迭代次数

    Returns:
        numpy.ndarray: 升序本征值
    """
    if max_iterations is None:
        max_iterations = get_section_config('solver')['max_iterations']
    d = np.array(diag, dtype=float)
    size = d.size
    if size == 0:
        return d
    e = np.zeros(size)
    e[:size - 1] = np.asarray(offdiag, dtype=float)
    # 大元素放在右下角时 QL 更稳定
    if size > 1 and abs(d[0]) > abs(d[-1]):
        d = d[::-1].copy()
        e[:size - 1] = e[:size - 1][::-1]
    eps = np.finfo(float).eps

    for l in range(size):
        iterations = 0
        while True:
            m = l
            while m < size - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if iterations >= max_iterations:
                raise ConvergenceError(f"QL 迭代在第 {l} 个本征值处 {max_iterations} 次内未收敛")
            iterations += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
        logger.debug(f"QL: 第 {l} 个本征值经 {iterations} 次迭代收敛")

    return np.sort(d)


def twisted_vectors(diag, offdiag, eigenvalues):
    """
    两侧递推计算本征矢，归一化到第一个分量为 1

    正向 LDLᵀ 与反向 UDUᵀ 分解在 |γ_k| 最小的下标 k 处拼接，
    避免单向递推在本征矢衰减方向上的误差放大。

    Args:
        diag (array): 实对称三对角矩阵的对角元
        offdiag (array): 非对角元（全部为正）
        eigenvalues (array): 本征值

    Returns:
        numpy.ndarray: (N+1)×(N+1) 矩阵，列 l 为 P_·(E_l)
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    E = np.asarray(eigenvalues, dtype=float)
    size = diag.size
    if size == 1:
        return np.ones((1, E.size))

    tiny = np.finfo(float).eps * max(np.max(np.abs(diag)) + 2 * np.max(offdiag), 1.0)
    shifted = diag[:, None] - E[None, :]

    forward = np.empty((size, E.size))
    forward[0] = shifted[0]
    for k in range(1, size):
        prev = np.where(forward[k - 1] == 0.0, tiny, forward[k - 1])
        forward[k] = shifted[k] - offdiag[k - 1] ** 2 / prev
    backward = np.empty((size, E.size))
    backward[-1] = shifted[-1]
    for k in range(size - 2, -1, -1):
        nxt = np.where(backward[k + 1] == 0.0, tiny, backward[k + 1])
        backward[k] = shifted[k] - offdiag[k] ** 2 / nxt

    gamma = forward + backward - shifted
    twist = np.argmin(np.abs(gamma), axis=0)

    forward = np.where(forward == 0.0, tiny, forward)
    backward = np.where(backward == 0.0, tiny, backward)
    Z = np.zeros((size, E.size))
    for l in range(E.size):
        r = twist[l]
        Z[r, l] = 1.0
        for k in range(r - 1, -1, -1):
            Z[k, l] = -offdiag[k] / forward[k, l] * Z[k + 1, l]
        for k in range(r + 1, size):
            Z[k, l] = -offdiag[k - 1] / backward[k, l] * Z[k - 1, l]
    if np.any(Z[0] == 0.0):
        raise NumericalError("本征矢第一个分量为零，矩阵不是不可约三对角矩阵")
    return Z / Z[0]


def _check_simple(eigenvalues, scale, mu=None):
    tol = get_section_config('tolerances')['degeneracy']
    gaps = np.diff(eigenvalues)
    if gaps.size == 0:
        return
    k = int(np.argmin(gaps))
    if gaps[k] < tol * max(scale, np.finfo(float).tiny):
        where = f"扇区 {mu} 中" if mu is not None else ""
        raise DegeneracyError(
            f"{where}本征值 E_{k}={eigenvalues[k]:.17g} 与 E_{k + 1}={eigenvalues[k + 1]:.17g} 简并",
            pair=(k, k + 1))


def decompose_jacobi(j, mu=None):
    """
    对给定雅可比算符做谱分解

    Args:
        j (JacobiOperator): 雅可比算符
        mu (SectorIndex, optional): 扇区标签，仅用于诊断信息

    Returns:
        SpectralData: 谱分解
    """
    diag, mag, chi = gauge_real(j)
    if np.any(mag == 0.0):
        n = int(np.flatnonzero(mag == 0.0)[0])
        raise NumericalError(f"非对角元 |b_{n}| = 0，扇区解耦，谱不是单谱")
    E = eigenvalues_tridiagonal(diag, mag)
    _check_simple(E, j.scale(), mu)
    P = twisted_vectors(diag, mag, E)
    weights = 1.0 / np.sum(P * P, axis=0)
    return SpectralData(E, P, weights, chi, mu)


def spectral_decomposition(model, mu):
    """
    扇区 μ 上相互作用哈密顿量的谱分解

    Args:
        model (ModelSpec): 模型
        mu (SectorIndex): 扇区

    Returns:
        SpectralData: 本征值、系数矩阵 P[n][l]、权重和规范相位
    """
    return decompose_jacobi(jacobi_operator(model, mu), mu)


def verify_orthonormality(s):
    """max_{n,m} |Σ_l P_n P_m w_l − δ_nm|"""
    G = (s.coeffs * s.weights[None, :]) @ s.coeffs.T
    return float(np.max(np.abs(G - np.eye(s.N + 1))))


def verify_dual_orthogonality(s):
    """√w 缩放后系数矩阵的正交性残差 ‖UᵀU − I‖_max"""
    U = s.coeffs * np.sqrt(s.weights)[None, :]
    return float(np.max(np.abs(U.T @ U - np.eye(s.N + 1))))


def inversion_residual(s):
    """
    反演公式 |n⟩ = Σ_l w_l P̄_n(E_l)|E_l⟩ 的残差

    把 |E_l⟩ = Σ_m P_m(E_l)|m⟩ 代入后与 |n⟩ 比较，使用带规范相位的复系数。
    """
    Q = s.complex_coeffs()
    reconstructed = (Q * s.weights[None, :]) @ Q.conj().T
    return float(np.max(np.abs(reconstructed.T - np.eye(s.N + 1))))


def reconstruction_residual(j, s):
    """Σ_l E_l w_l P[·][l]P[·][l]ᵀ 与实规范雅可比矩阵之差，相对于最大元素"""
    diag, mag, _ = gauge_real(j)
    T = np.diag(diag)
    if mag.size:
        T += np.diag(mag, 1) + np.diag(mag, -1)
    R = (s.coeffs * (s.eigenvalues * s.weights)[None, :]) @ s.coeffs.T
    scale = max(float(np.max(np.abs(T))), 1.0)
    return float(np.max(np.abs(R - T))) / scale


def eigenspace_sectors(model, l, N_max, rtol=1e-12):
    """
    列出本征值 E_{l,l}（首次出现于扇区 N=l）在 N ≤ N_max 各扇区中的出现位置

    Args:
        model (ModelSpec): 目录族或以目录族为内模型的提升模型
        l (int): 本征值下标
        N_max (int): 最大扇区层级

    Returns:
        list: [(SectorIndex, l', E)]，E_{l',N} 与 E_{l,l} 相等
    """
    family = model.family
    if family is None:
        raise ConfigError("eigenspace_sectors 需要闭式谱，系数表模型不支持")
    if l < 0 or l > N_max:
        raise ConfigError(f"本征值下标 l={l} 必须在 [0,N_max={N_max}] 内")
    target = family.spectrum(l, l)
    found = []
    for mu in sectors_up_to(model.k0, model.k1, N_max):
        if mu.N < l:
            continue
        for lp in range(mu.N + 1):
            E = family.spectrum(lp, mu.N)
            if abs(E - target) <= rtol * max(1.0, abs(target)):
                found.append((mu, lp, E))
    return found
