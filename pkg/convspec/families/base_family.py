import math
import logging

from ..core.polynomials import series_context
from ..utils.errors import ConfigError, NumericalError, SectorError

logger = logging.getLogger(__name__)

# q-族数值检查（q^{−N}）与闭式权重检查（q^{−N²/4}）的量级上限
NUMERIC_SCALE_LIMIT = 1e8
CLOSED_FORM_SCALE_LIMIT = 1e6


class BaseFamily:
    """所有有限正交多项式族的基类，提供通用功能"""

    name = None
    param_names = ()
    is_q = False
    spectrum_depends_on_N = False

    def __init__(self, params=None, name=None):
        """
        初始化多项式族

        Args:
            params (dict, optional): 族参数
            name (str, optional): 族名称
        """
        params = dict(params or {})
        unknown = sorted(set(params) - set(self.param_names))
        if unknown:
            raise ConfigError(f"族 '{self.name}' 不接受参数: {', '.join(unknown)}")
        missing = [key for key in self.param_names if key not in params]
        if missing:
            raise ConfigError(f"族 '{self.name}' 缺少参数: {', '.join(missing)}")

        self.params = {}
        for key in self.param_names:
            try:
                self.params[key] = float(params[key])
            except (TypeError, ValueError):
                raise ConfigError(f"参数 '{key}' 必须是实数，实际为 {params[key]!r}")
            if not math.isfinite(self.params[key]):
                raise ConfigError(f"参数 '{key}' 必须是有限实数，实际为 {params[key]!r}")

        self.name = name or self.name or self.__class__.__name__
        self._validate()
        logger.debug(f"已创建多项式族 {self.name}，参数: {self.params}")

    def _validate(self):
        """检查参数域，子类必须实现"""
        raise NotImplementedError("子类必须实现_validate方法")

    def _require(self, condition, message):
        if not condition:
            raise ConfigError(f"族 '{self.name}' 参数无效: {message}")

    @staticmethod
    def _check_index(value, N, label):
        if N < 0:
            raise SectorError(f"扇区层级 N={N} 必须非负")
        if not 0 <= value <= N:
            raise SectorError(f"索引 {label}={value} 超出范围 [0,{N}]")

    # 哈密顿量系数

    def h0(self, n0, n1):
        """对角部分 h0(n0,n1)"""
        raise NotImplementedError("子类必须实现h0方法")

    def _coupling_sq(self, n0, n1):
        raise NotImplementedError("子类必须实现_coupling_sq方法")

    def coupling_sq(self, n0, n1):
        """
        耦合函数模方 |g(n0,n1)|²

        n1=0 处的耦合不出现在任何矩阵元中，取 0。
        """
        if n1 <= 0 or n0 < 0:
            return 0.0
        return self._coupling_sq(n0, n1)

    def sector_coupling(self, n, N):
        """k0=k1=1 时的 𝓖(n,N) = |g(n,N−n)|²(n+1)(N−n)，扇区外取精确零"""
        if n < 0 or n >= N:
            return 0.0
        return self.coupling_sq(n, N - n) * (n + 1) * (N - n)

    def jacobi_map(self, n, N):
        """
        扇区 N 内第 n 个雅可比系数

        Returns:
            tuple: (a_n, |b_n|)
        """
        self._check_index(n, N, 'n')
        value = self.sector_coupling(n, N)
        if value < 0:
            raise NumericalError(f"族 '{self.name}' 在 (n={n}, N={N}) 处 𝓖 为负: {value}")
        return self.h0(n, N - n), math.sqrt(value)

    # 闭式解

    def _spectrum(self, l, N):
        raise NotImplementedError("子类必须实现_spectrum方法")

    def _raw_weight(self, l, N):
        raise NotImplementedError("子类必须实现_raw_weight方法")

    def _prefactor_sq(self, n, N):
        raise NotImplementedError("子类必须实现_prefactor_sq方法")

    def _series(self, n, l, N):
        raise NotImplementedError("子类必须实现_series方法")

    def spectrum(self, l, N):
        """闭式本征值 E_{l,N}"""
        self._check_index(l, N, 'l')
        return self._spectrum(l, N)

    def raw_weight(self, l, N):
        """闭式权函数（未归一化形式）"""
        self._check_index(l, N, 'l')
        return self._raw_weight(l, N)

    def prefactor_sq(self, n, N):
        """
        多项式前置因子的平方 h_n²，检查其为正

        Args:
            n (int): 次数
            N (int): 扇区层级

        Returns:
            float: h_n²
        """
        self._check_index(n, N, 'n')
        value = self._prefactor_sq(n, N)
        if not (value > 0 and math.isfinite(value)):
            raise NumericalError(f"族 '{self.name}' 在 (n={n}, N={N}) 处前置因子平方非正: {value}")
        return value

    def weight(self, l, N, normalized=True):
        """
        权函数 w_l

        Args:
            l (int): 本征值下标
            N (int): 扇区层级
            normalized (bool): True 时乘以 h_0²，使 Σ_l w_l = 1

        Returns:
            float: 权重
        """
        value = self.raw_weight(l, N)
        if normalized:
            value *= self.prefactor_sq(0, N)
        return value

    def polynomial(self, n, l, N, normalized=True):
        """
        闭式多项式值 P_n(E_{l,N})

        Args:
            n (int): 次数
            l (int): 本征值下标
            N (int): 扇区层级
            normalized (bool): True 时除以 h_0，使 P_0 = 1

        Returns:
            float: 多项式值
        """
        self._check_index(n, N, 'n')
        self._check_index(l, N, 'l')
        scale = self.prefactor_sq(n, N)
        if normalized:
            scale /= self.prefactor_sq(0, N)
        return math.sqrt(scale) * self._series(n, l, N)

    # 精度上限

    def numeric_cap(self):
        """数值检查可靠的最大 N，None 表示不受限"""
        return None

    def closed_form_cap(self):
        """闭式权重与谱权重逐项比较可靠的最大 N，None 表示不受限"""
        return None

    def series_guard_digits(self, N):
        """闭式级数在基础精度之上追加的十进制位数，覆盖各项相对于和的放大"""
        return 3 * N

    def series_context(self, N):
        return series_context(self.series_guard_digits(N))

    def describe(self):
        return {'name': self.name, 'params': dict(self.params)}

    def __repr__(self):
        args = ', '.join(f"{key}={value:g}" for key, value in self.params.items())
        return f"{self.__class__.__name__}({args})"


class QFamily(BaseFamily):
    """q-族的公共基类，负责检查 0<q<1 和精度上限"""

    is_q = True

    def _validate(self):
        q = self.params['q']
        self._require(0 < q < 1, f"需要 0<q<1，实际 q={q}")
        self._validate_q()

    def _validate_q(self):
        raise NotImplementedError("子类必须实现_validate_q方法")

    def numeric_cap(self):
        q = self.params['q']
        return int(math.floor(math.log(NUMERIC_SCALE_LIMIT) / -math.log(q) + 1e-9))

    def closed_form_cap(self):
        q = self.params['q']
        return int(math.floor(math.sqrt(4 * math.log(CLOSED_FORM_SCALE_LIMIT) / -math.log(q)) + 1e-9))

    def series_guard_digits(self, N):
        # 3φ2 的单项可达 q^{−N²/2}
        q = self.params['q']
        return 3 * N + math.ceil(N * N * -math.log10(q) / 2)
