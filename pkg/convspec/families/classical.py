"""
经典（非 q 变形）有限正交多项式族：Krawtchouk、对偶 Hahn、离散 Chebyshev、Hahn

所有系数以因式分解形式给出，可去奇点在求值前已消去。
"""
import math

from ..core.polynomials import factor_ratio, hypergeometric_terminating
from .base_family import BaseFamily


def _rising(a, n):
    """(a)_n 的因子列表"""
    return [a + j for j in range(n)]


class Krawtchouk(BaseFamily):
    """Krawtchouk 族，谱 E_l = l"""

    name = 'krawtchouk'
    param_names = ('p',)

    def _validate(self):
        p = self.params['p']
        self._require(0 < p < 1, f"需要 0<p<1，实际 p={p}")

    def h0(self, n0, n1):
        p = self.params['p']
        return p * n1 + (1 - p) * n0

    def _coupling_sq(self, n0, n1):
        p = self.params['p']
        return p * (1 - p)

    def _spectrum(self, l, N):
        return float(l)

    def _raw_weight(self, l, N):
        p = self.params['p']
        return math.comb(N, l) * p ** l * (1 - p) ** (N - l)

    def _prefactor_sq(self, n, N):
        p = self.params['p']
        return math.comb(N, n) * (p / (1 - p)) ** n

    def _series(self, n, l, N):
        mp = self.series_context(N)
        return hypergeometric_terminating([-n, -l], [-N], mp.one / mp.mpf(self.params['p']), m=min(n, l), ctx=mp)


class DualHahn(BaseFamily):
    """对偶 Hahn 族，谱 E_l = l(l+γ+δ+1)"""

    name = 'dual_hahn'
    param_names = ('gamma', 'delta')

    def _validate(self):
        gamma, delta = self.params['gamma'], self.params['delta']
        self._require(gamma > -1, f"需要 gamma>-1，实际 gamma={gamma}")
        self._require(delta > -1, f"需要 delta>-1，实际 delta={delta}")

    def h0(self, n0, n1):
        gamma, delta = self.params['gamma'], self.params['delta']
        return n0 * (n1 + delta + 1) + (n0 + gamma + 1) * n1

    def _coupling_sq(self, n0, n1):
        gamma, delta = self.params['gamma'], self.params['delta']
        return (n1 + delta) * (n0 + gamma + 1)

    def _spectrum(self, l, N):
        s = self.params['gamma'] + self.params['delta']
        return float(l * (l + s + 1))

    def _raw_weight(self, l, N):
        gamma, delta = self.params['gamma'], self.params['delta']
        s = gamma + delta
        # l=0 时 (2l+s+1)/(l+s+1) 的极限为 1
        ratio = 1.0 if l == 0 else (2 * l + s + 1) / (l + s + 1)
        return ratio * factor_ratio(
            _rising(gamma + 1, l) + _rising(N - l + 1, l) + _rising(1, N),
            _rising(l + s + 2, N) + _rising(delta + 1, l) + _rising(1, l),
        )

    def _prefactor_sq(self, n, N):
        gamma, delta = self.params['gamma'], self.params['delta']
        return factor_ratio(
            _rising(gamma + 1, n) + _rising(delta + 1, N - n),
            _rising(1, n) + _rising(1, N - n),
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        gamma, delta = mp.mpf(self.params['gamma']), mp.mpf(self.params['delta'])
        return hypergeometric_terminating(
            [-n, -l, l + gamma + delta + 1], [gamma + 1, -N], 1, m=min(n, l), ctx=mp)


class Chebyshev(BaseFamily):
    """离散 Chebyshev 族，常数权函数，谱 E_l = l"""

    name = 'chebyshev'
    param_names = ()

    def _validate(self):
        pass

    def h0(self, n0, n1):
        return ((2 * n0 + n1 + 1) * n0 + (n0 + 1) * n1) / (2 * (2 * n0 + 1))

    def _coupling_sq(self, n0, n1):
        return (2 * n0 + n1 + 2) * (n0 + 1) / (4 * (2 * n0 + 1) * (2 * n0 + 3))

    def _spectrum(self, l, N):
        return float(l)

    def _raw_weight(self, l, N):
        return 1.0

    def _prefactor_sq(self, n, N):
        # (2n+1) N!² / ((N−n)! (N+n+1)!)
        return (2 * n + 1) * factor_ratio([N - j for j in range(n)], [N + j for j in range(1, n + 2)])

    def _series(self, n, l, N):
        return hypergeometric_terminating([-n, n + 1, -l], [1, -N], 1, m=min(n, l), ctx=self.series_context(N))


class Hahn(BaseFamily):
    """Hahn 族，谱 E_l = l；α=β=0 时退化为离散 Chebyshev"""

    name = 'hahn'
    param_names = ('alpha', 'beta')

    def _validate(self):
        alpha, beta = self.params['alpha'], self.params['beta']
        self._require(alpha > -1, f"需要 alpha>-1，实际 alpha={alpha}")
        self._require(beta > -1, f"需要 beta>-1，实际 beta={beta}")

    def _edge_ratio(self, n0):
        """(n0+α+β+1)/(2n0+α+β+1)，n0=0 处取 1"""
        s = self.params['alpha'] + self.params['beta']
        if n0 == 0:
            return 1.0
        return (n0 + s + 1) / (2 * n0 + s + 1)

    def h0(self, n0, n1):
        alpha, beta = self.params['alpha'], self.params['beta']
        s = alpha + beta
        lower = 0.0
        if n0 > 0:
            lower = n0 * (2 * n0 + n1 + s + 1) * (n0 + beta) / ((2 * n0 + s) * (2 * n0 + s + 1))
        upper = self._edge_ratio(n0) * (n0 + alpha + 1) * n1 / (2 * n0 + s + 2)
        return lower + upper

    def _coupling_sq(self, n0, n1):
        alpha, beta = self.params['alpha'], self.params['beta']
        s = alpha + beta
        return (self._edge_ratio(n0) * (2 * n0 + n1 + s + 2) * (n0 + beta + 1) * (n0 + alpha + 1)
                / ((2 * n0 + s + 2) ** 2 * (2 * n0 + s + 3)))

    def _spectrum(self, l, N):
        return float(l)

    def _raw_weight(self, l, N):
        alpha, beta = self.params['alpha'], self.params['beta']
        return factor_ratio(
            _rising(alpha + 1, l) + _rising(beta + 1, N - l),
            _rising(1, l) + _rising(1, N - l),
        )

    def _prefactor_sq(self, n, N):
        alpha, beta = self.params['alpha'], self.params['beta']
        s = alpha + beta
        ratio = 1.0 if n == 0 else (2 * n + s + 1) / (n + s + 1)
        return ratio * factor_ratio(
            _rising(alpha + 1, n) + _rising(N - n + 1, n) + _rising(1, N),
            _rising(n + s + 2, N) + _rising(beta + 1, n) + _rising(1, n),
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        alpha, beta = mp.mpf(self.params['alpha']), mp.mpf(self.params['beta'])
        return hypergeometric_terminating(
            [-n, n + alpha + beta + 1, -l], [alpha + 1, -N], 1, m=min(n, l), ctx=mp)
