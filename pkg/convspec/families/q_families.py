"""
q 变形的有限正交多项式族

对偶 q-Hahn、仿射 q-Krawtchouk、q-Krawtchouk、q-Hahn、对偶 q-Krawtchouk。
权函数和前置因子中的 (q^{−N};q)_n 与 q 的幂次成对合并为 (1 − q^{N−j}) 等正因子，
避免出现巨大的中间量和根号下的负数。
"""
from ..core.polynomials import basic_hypergeometric_3phi2, factor_ratio
from .base_family import QFamily


def _qp(a, q, n):
    """(a;q)_n 的因子列表"""
    return [1.0 - a * q ** j for j in range(n)]


def _top(q, n, N):
    """∏_{j<n} (1 − q^{N−j})，即 (q^{−N};q)_n 乘以 q^{Nn−C(n,2)} 再乘 (−1)^n"""
    return [1.0 - q ** (N - j) for j in range(n)]


class DualQHahn(QFamily):
    """对偶 q-Hahn 族，谱 E_l = q^{−l} + γδq^{l+1}"""

    name = 'dual_q_hahn'
    param_names = ('q', 'gamma', 'delta')

    def _validate_q(self):
        q, gamma, delta = self.params['q'], self.params['gamma'], self.params['delta']
        self._require(0 < gamma < 1 / q, f"需要 0<gamma<1/q，实际 gamma={gamma}")
        self._require(0 < delta < 1 / q, f"需要 0<delta<1/q，实际 delta={delta}")
        self._require(0 < gamma * delta < 1 / q, f"需要 0<gamma*delta<1/q，实际 {gamma * delta}")

    def h0(self, n0, n1):
        q, gamma, delta = self.params['q'], self.params['gamma'], self.params['delta']
        return (1 + gamma * delta * q
                - gamma * q * (1 - q ** n0) * (delta - q ** (-n1 - 1))
                - (1 - q ** (-n1)) * (1 - gamma * q ** (n0 + 1)))

    def _coupling_sq(self, n0, n1):
        q, gamma, delta = self.params['q'], self.params['gamma'], self.params['delta']
        return (gamma * q * (q ** (-n1) - 1) * (1 - gamma * q ** (n0 + 1))
                * (1 - q ** (n0 + 1)) * (q ** (-n1) - delta) / ((n0 + 1) * n1))

    def _spectrum(self, l, N):
        q, gamma, delta = self.params['q'], self.params['gamma'], self.params['delta']
        return q ** (-l) + gamma * delta * q ** (l + 1)

    def _raw_weight(self, l, N):
        q, gamma, delta = self.params['q'], self.params['gamma'], self.params['delta']
        gd = gamma * delta
        return factor_ratio(
            _qp(gamma * q, q, l) + _qp(gd * q, q, l) + _top(q, l, N) + [1 - gd * q ** (2 * l + 1)],
            _qp(q, q, l) + _qp(gd * q ** (N + 2), q, l) + _qp(delta * q, q, l)
            + [1 - gd * q] + [gamma * q] * l,
        )

    def _prefactor_sq(self, n, N):
        q, gamma, delta = self.params['q'], self.params['gamma'], self.params['delta']
        return factor_ratio(
            _qp(delta * q, q, N) + [gamma * q] * N + _qp(gamma * q, q, n) + _top(q, n, N),
            _qp(gamma * delta * q * q, q, N) + _qp(q, q, n)
            + [1 / delta - q ** (N - j) for j in range(n)] + [gamma * delta * q] * n,
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        q, gamma, delta = (mp.mpf(self.params[key]) for key in ('q', 'gamma', 'delta'))
        return basic_hypergeometric_3phi2(
            [q ** (-n), q ** (-l), gamma * delta * q ** (l + 1)],
            [gamma * q, q ** (-N)], q, q, m=min(n, l), ctx=mp)


class AffineQKrawtchouk(QFamily):
    """仿射 q-Krawtchouk 族，谱 E_l = q^{−l}"""

    name = 'affine_q_krawtchouk'
    param_names = ('q', 'p')

    def _validate_q(self):
        q, p = self.params['q'], self.params['p']
        self._require(0 < p < 1 / q, f"需要 0<p<1/q，实际 p={p}")

    def h0(self, n0, n1):
        q, p = self.params['q'], self.params['p']
        return (1 - (1 - q ** (-n1)) * (1 - p * q ** (n0 + 1))
                + p * q ** (-n1) * (1 - q ** n0))

    def _coupling_sq(self, n0, n1):
        q, p = self.params['q'], self.params['p']
        return (p * q ** (1 - n1) * (1 - q ** (n0 + 1)) * (q ** (-n1) - 1)
                * (1 - p * q ** (n0 + 1)) / ((n0 + 1) * n1))

    def _spectrum(self, l, N):
        return self.params['q'] ** (-l)

    def _raw_weight(self, l, N):
        q, p = self.params['q'], self.params['p']
        return factor_ratio(
            _qp(p * q, q, l) + _qp(q, q, N),
            _qp(q, q, l) + _qp(q, q, N - l) + [p * q] * l,
        )

    def _prefactor_sq(self, n, N):
        q, p = self.params['q'], self.params['p']
        return factor_ratio(
            [p * q] * (N - n) + _qp(p * q, q, n) + _qp(q, q, N),
            _qp(q, q, n) + _qp(q, q, N - n),
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        q, p = mp.mpf(self.params['q']), mp.mpf(self.params['p'])
        return basic_hypergeometric_3phi2(
            [q ** (-n), 0, q ** (-l)], [p * q, q ** (-N)], q, q, m=min(n, l), ctx=mp)


class QKrawtchouk(QFamily):
    """q-Krawtchouk 族，谱 E_l = q^{−l}"""

    name = 'q_krawtchouk'
    param_names = ('q', 'p')

    def _validate_q(self):
        p = self.params['p']
        self._require(p > 0, f"需要 p>0，实际 p={p}")

    def h0(self, n0, n1):
        q, p = self.params['q'], self.params['p']
        upper = ((1 - q ** (-n1)) * (1 + p * q ** n0)
                 / ((1 + p * q ** (2 * n0)) * (1 + p * q ** (2 * n0 + 1))))
        lower = (p * q ** (n0 - n1 - 1) * (1 + p * q ** (2 * n0 + n1)) * (1 - q ** n0)
                 / ((1 + p * q ** (2 * n0 - 1)) * (1 + p * q ** (2 * n0))))
        return 1 - upper + lower

    def _coupling_sq(self, n0, n1):
        q, p = self.params['q'], self.params['p']
        numerator = (p * q ** (n0 - n1 + 1) * (1 + p * q ** (2 * n0 + n1 + 1))
                     * (1 - q ** (n0 + 1)) * (q ** (-n1) - 1) * (1 + p * q ** n0))
        denominator = ((1 + p * q ** (2 * n0)) * (1 + p * q ** (2 * n0 + 1)) ** 2
                       * (1 + p * q ** (2 * n0 + 2)) * (n0 + 1) * n1)
        return numerator / denominator

    def _spectrum(self, l, N):
        return self.params['q'] ** (-l)

    def _raw_weight(self, l, N):
        q, p = self.params['q'], self.params['p']
        return factor_ratio(
            [q ** (j - N) - 1 for j in range(l)],
            _qp(q, q, l) + [p] * l,
        )

    def _prefactor_sq(self, n, N):
        q, p = self.params['q'], self.params['p']
        # (q^{−N};q)_n / (−pq^{−N})^n = ∏ (q^j − q^N) / p^n
        return factor_ratio(
            _qp(-p, q, n) + [q ** j - q ** N for j in range(n)] + [1 + p * q ** (2 * n)]
            + [p] * N + [q ** (N * (N + 1) // 2 - n * n)],
            _qp(q, q, n) + _qp(-p * q ** (N + 1), q, n) + [1 + p] + _qp(-p * q, q, N) + [p] * n,
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        q, p = mp.mpf(self.params['q']), mp.mpf(self.params['p'])
        return basic_hypergeometric_3phi2(
            [q ** (-n), q ** (-l), -p * q ** n], [q ** (-N), 0], q, q, m=min(n, l), ctx=mp)


class QHahn(QFamily):
    """q-Hahn 族，谱 E_l = q^{−l}"""

    name = 'q_hahn'
    param_names = ('q', 'alpha', 'beta')

    def _validate_q(self):
        q, alpha, beta = self.params['q'], self.params['alpha'], self.params['beta']
        self._require(0 < alpha < 1 / q, f"需要 0<alpha<1/q，实际 alpha={alpha}")
        self._require(0 < beta < 1 / q, f"需要 0<beta<1/q，实际 beta={beta}")

    def _edge_ratio(self, n0):
        """(1−αβq^{n0+1})/(1−αβq^{2n0+1})，n0=0 处取 1"""
        q, ab = self.params['q'], self.params['alpha'] * self.params['beta']
        if n0 == 0:
            return 1.0
        return (1 - ab * q ** (n0 + 1)) / (1 - ab * q ** (2 * n0 + 1))

    def h0(self, n0, n1):
        q, alpha, beta = self.params['q'], self.params['alpha'], self.params['beta']
        ab = alpha * beta
        lower = 0.0
        if n0 > 0:
            lower = (alpha * q ** (-n1) * (1 - q ** n0) * (1 - ab * q ** (2 * n0 + n1 + 1))
                     * (1 - beta * q ** n0)
                     / ((1 - ab * q ** (2 * n0)) * (1 - ab * q ** (2 * n0 + 1))))
        upper = (self._edge_ratio(n0) * (1 - q ** (-n1)) * (1 - alpha * q ** (n0 + 1))
                 / (1 - ab * q ** (2 * n0 + 2)))
        return 1 + lower - upper

    def _coupling_sq(self, n0, n1):
        q, alpha, beta = self.params['q'], self.params['alpha'], self.params['beta']
        ab = alpha * beta
        numerator = (alpha * q ** (1 - n1) * (1 - q ** (n0 + 1)) * (1 - ab * q ** (2 * n0 + n1 + 2))
                     * (1 - beta * q ** (n0 + 1)) * (q ** (-n1) - 1) * (1 - alpha * q ** (n0 + 1)))
        denominator = ((1 - ab * q ** (2 * n0 + 2)) ** 2 * (1 - ab * q ** (2 * n0 + 3))
                       * (n0 + 1) * n1)
        return self._edge_ratio(n0) * numerator / denominator

    def _spectrum(self, l, N):
        return self.params['q'] ** (-l)

    def _raw_weight(self, l, N):
        q, alpha, beta = self.params['q'], self.params['alpha'], self.params['beta']
        # (q^{−N};q)_l / (β^{−1}q^{−N};q)_l = ∏ (1 − q^{N−j}) / (β^{−1} − q^{N−j})
        return factor_ratio(
            _qp(alpha * q, q, l) + _top(q, l, N),
            _qp(q, q, l) + [1 / beta - q ** (N - j) for j in range(l)] + [alpha * beta * q] * l,
        )

    def _prefactor_sq(self, n, N):
        q, alpha, beta = self.params['q'], self.params['alpha'], self.params['beta']
        ab = alpha * beta
        middle = [] if n == 0 else _qp(ab * q * q, q, n - 1) + [1 - ab * q ** (2 * n + 1)]
        return factor_ratio(
            _qp(beta * q, q, N) + [alpha * q] * N + _qp(alpha * q, q, n) + _top(q, n, N) + middle,
            _qp(ab * q * q, q, N) + _qp(q, q, n) + _qp(ab * q ** (N + 2), q, n)
            + _qp(beta * q, q, n) + [alpha * q] * n,
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        q, alpha, beta = (mp.mpf(self.params[key]) for key in ('q', 'alpha', 'beta'))
        return basic_hypergeometric_3phi2(
            [q ** (-n), alpha * beta * q ** (n + 1), q ** (-l)],
            [alpha * q, q ** (-N)], q, q, m=min(n, l), ctx=mp)


class DualQKrawtchouk(QFamily):
    """对偶 q-Krawtchouk 族，谱 E_l = q^{−l} + c q^{l−N}，依赖于 N"""

    name = 'dual_q_krawtchouk'
    param_names = ('q', 'c')
    spectrum_depends_on_N = True

    def _validate_q(self):
        c = self.params['c']
        self._require(c < 0, f"需要 c<0，实际 c={c}")

    def h0(self, n0, n1):
        q, c = self.params['q'], self.params['c']
        return (1 + c) * q ** (-n1)

    def _coupling_sq(self, n0, n1):
        q, c = self.params['q'], self.params['c']
        return ((-c) * q ** (-(n0 + n1)) * (q ** (-n1) - 1) * (1 - q ** (n0 + 1))
                / ((n0 + 1) * n1))

    def _spectrum(self, l, N):
        q, c = self.params['q'], self.params['c']
        return q ** (-l) + c * q ** (l - N)

    def _raw_weight(self, l, N):
        q, c = self.params['q'], self.params['c']
        return factor_ratio(
            _top(q, l, N) + [q ** (N - j) - c for j in range(l)] + [q ** N - c * q ** (2 * l)],
            _qp(q, q, l) + _qp(c * q, q, l) + [q ** N - c] + [-c * q] * l,
        )

    def _prefactor_sq(self, n, N):
        q, c = self.params['q'], self.params['c']
        return factor_ratio(
            [q ** j - q ** N for j in range(n)],
            _qp(1 / c, q, N) + _qp(q, q, n) + [-c] * n,
        )

    def _series(self, n, l, N):
        mp = self.series_context(N)
        q, c = mp.mpf(self.params['q']), mp.mpf(self.params['c'])
        return basic_hypergeometric_3phi2(
            [q ** (-n), q ** (-l), c * q ** (l - N)], [q ** (-N), 0], q, q, m=min(n, l), ctx=mp)
