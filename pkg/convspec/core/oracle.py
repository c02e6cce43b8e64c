"""
独立校验路径

expm_taylor: 缩放平方 + Taylor 级数的矩阵指数，不依赖谱分解；
sturm_bisection: 基于 Sturm 序列计数的二分法三对角本征值求解。
"""
import math

import numpy as np

from ..utils.errors import ConvergenceError


def expm_taylor(M, tol=1e-16, max_terms=60):
    """
    缩放平方法计算矩阵指数 e^M

    Args:
        M (numpy.ndarray): 方阵
        tol (float): Taylor 级数截断的相对阈值
        max_terms (int): 最大项数

    Returns:
        numpy.ndarray: e^M
    """
    M = np.asarray(M, dtype=complex)
    norm = np.linalg.norm(M, 1)
    squarings = 0
    if norm > 0.5:
        squarings = int(math.ceil(math.log2(norm / 0.5)))
    A = M / (2 ** squarings)

    result = np.eye(M.shape[0], dtype=complex)
    term = np.eye(M.shape[0], dtype=complex)
    for k in range(1, max_terms + 1):
        term = term @ A / k
        result = result + term
        if np.linalg.norm(term, 1) <= tol * np.linalg.norm(result, 1):
            break
    else:
        raise ConvergenceError(f"Taylor 级数在 {max_terms} 项内未收敛")

    for _ in range(squarings):
        result = result @ result
    return result


def sturm_count(diag, offdiag, x):
    """实对称三对角矩阵中严格小于 x 的本征值个数"""
    count = 0
    d = 1.0
    tiny = np.finfo(float).tiny
    for i in range(len(diag)):
        b2 = offdiag[i - 1] ** 2 if i > 0 else 0.0
        d = diag[i] - x - b2 / d
        if d == 0.0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def sturm_bisection(diag, offdiag, rtol=1e-15):
    """
    二分法求实对称三对角矩阵的全部本征值

    Args:
        diag (array): 对角元
        offdiag (array): 非对角元
        rtol (float): 区间相对宽度的收敛阈值

    Returns:
        numpy.ndarray: 升序本征值
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.abs(np.asarray(offdiag, dtype=float))
    size = len(diag)
    # Gershgorin 区间
    radius = np.zeros(size)
    radius[:-1] += offdiag
    radius[1:] += offdiag
    lo = float(np.min(diag - radius))
    hi = float(np.max(diag + radius))
    scale = max(abs(lo), abs(hi), 1.0)

    values = np.empty(size)
    for k in range(size):
        a, b = lo, hi
        for _ in range(200):
            mid = 0.5 * (a + b)
            if sturm_count(diag, offdiag, mid) > k:
                b = mid
            else:
                a = mid
            if b - a <= rtol * scale:
                break
        values[k] = 0.5 * (a + b)
    return values
