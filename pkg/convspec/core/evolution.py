"""
时间演化

|ψ(t)⟩ = e^{−iH0 t} e^{−iH_I t}|ψ(0)⟩ 在每个扇区上独立计算：
相互作用绘景传播子由谱分解的多项式求和给出，自由部分是对角相位。
"""
import logging

import numpy as np

from ..utils.errors import ConfigError, HermiticityError, NumericalError, SectorError
from .fock_sector import SectorIndex
from .hamiltonian import free_energy, jacobi_operator
from .oracle import expm_taylor
from .spectral import spectral_decomposition

logger = logging.getLogger(__name__)

# 初态范数与 1 的允许偏差
NORM_TOLERANCE = 1e-8
# 期望值虚部相对实部的允许量级
IMAGINARY_TOLERANCE = 1e-10


class SectoredState:
    """按扇区分块的态矢量，有限支撑"""

    def __init__(self, amplitudes=None):
        """
        初始化分块态

        Args:
            amplitudes (dict, optional): SectorIndex -> 复振幅数组
        """
        self.amplitudes = {}
        for mu, values in (amplitudes or {}).items():
            values = np.asarray(values, dtype=complex)
            if values.shape != (mu.N + 1,):
                raise SectorError(f"扇区 {mu} 的振幅长度应为 {mu.N + 1}，实际为 {values.size}")
            self.amplitudes[mu] = values

    @property
    def sectors(self):
        return sorted(self.amplitudes, key=lambda mu: mu.sort_key)

    def norm(self):
        return float(np.sqrt(sum(np.vdot(v, v).real for v in self.amplitudes.values())))

    def normalized(self):
        norm = self.norm()
        if norm == 0:
            raise ConfigError("态矢量的范数为零，无法归一化")
        return SectoredState({mu: v / norm for mu, v in self.amplitudes.items()})

    def inner(self, other):
        """⟨self|other⟩"""
        total = 0j
        for mu, v in self.amplitudes.items():
            if mu in other.amplitudes:
                total += np.vdot(v, other.amplitudes[mu])
        return complex(total)

    @classmethod
    def basis(cls, mu, n):
        """单个基矢 |n⟩_μ"""
        if not 0 <= n <= mu.N:
            raise SectorError(f"索引 n={n} 超出扇区 {mu} 的范围 [0,{mu.N}]")
        values = np.zeros(mu.N + 1, dtype=complex)
        values[n] = 1.0
        return cls({mu: values})

    @classmethod
    def from_records(cls, records, k0=1, k1=1):
        """
        从 JSON 记录构造态

        Args:
            records (list): [{"r0","r1","N","re","im"}, ...]
            k0 (int): 模型的转换重数
            k1 (int): 模型的转换重数

        Returns:
            SectoredState: 态
        """
        if not isinstance(records, list):
            raise ConfigError("态文件必须是扇区记录的 JSON 数组")
        amplitudes = {}
        for record in records:
            try:
                mu = SectorIndex(int(record['r0']), int(record['r1']), int(record['N']), k0, k1)
                re = np.asarray(record['re'], dtype=float)
                im = np.asarray(record.get('im', [0.0] * re.size), dtype=float)
            except KeyError as e:
                raise ConfigError(f"态记录缺少字段 {e}")
            except (TypeError, ValueError) as e:
                raise ConfigError(f"态记录格式错误: {e}")
            if re.shape != im.shape:
                raise ConfigError(f"扇区 {mu} 的 're' 与 'im' 长度不一致")
            if mu in amplitudes:
                raise ConfigError(f"态记录中扇区 {mu} 重复")
            amplitudes[mu] = re + 1j * im
        return cls(amplitudes)

    def to_records(self):
        return [dict(mu.to_dict(), re=self.amplitudes[mu].real.tolist(),
                     im=self.amplitudes[mu].imag.tolist())
                for mu in self.sectors]


class SectoredObservable:
    """按扇区对分块的可观测量 _μ⟨r|X|s⟩_ν，有限支撑"""

    def __init__(self, blocks=None):
        """
        初始化分块可观测量

        Args:
            blocks (dict, optional): (SectorIndex, SectorIndex) -> 复矩阵
        """
        self.blocks = {}
        for (mu, nu), block in (blocks or {}).items():
            block = np.asarray(block, dtype=complex)
            if block.shape != (mu.N + 1, nu.N + 1):
                raise SectorError(f"块 ({mu},{nu}) 的形状应为 {(mu.N + 1, nu.N + 1)}，实际为 {block.shape}")
            self.blocks[(mu, nu)] = block

    def block(self, mu, nu):
        block = self.blocks.get((mu, nu))
        if block is None:
            return np.zeros((mu.N + 1, nu.N + 1), dtype=complex)
        return block

    def check_hermitian(self, tol=1e-12):
        """检查 block(μ,ν) = block(ν,μ)†，否则抛出 HermiticityError"""
        for (mu, nu), block in self.blocks.items():
            mirror = self.block(nu, mu)
            scale = max(1.0, float(np.max(np.abs(block))) if block.size else 1.0)
            if np.max(np.abs(block - mirror.conj().T)) > tol * scale:
                raise HermiticityError(f"可观测量在块 ({mu},{nu}) 处不是厄米的")

    def bracket(self, psi, phi=None):
        """⟨ψ|X|φ⟩，φ 默认为 ψ"""
        phi = psi if phi is None else phi
        total = 0j
        for (mu, nu), block in self.blocks.items():
            if mu in psi.amplitudes and nu in phi.amplitudes:
                total += np.vdot(psi.amplitudes[mu], block @ phi.amplitudes[nu])
        return complex(total)

    @classmethod
    def identity(cls, sectors):
        return cls({(mu, mu): np.eye(mu.N + 1) for mu in sectors})

    @classmethod
    def number_operator(cls, mode, sectors):
        """光子数算符 n0 或 n1 在给定扇区上的对角块"""
        if mode not in (0, 1):
            raise ConfigError(f"模式编号必须是 0 或 1，实际为 {mode}")
        blocks = {}
        for mu in sectors:
            n = np.arange(mu.N + 1)
            counts = mu.r0 + mu.k0 * n if mode == 0 else mu.r1 + mu.k1 * (mu.N - n)
            blocks[(mu, mu)] = np.diag(counts.astype(float))
        return cls(blocks)

    @classmethod
    def from_records(cls, records, k0=1, k1=1):
        """
        从 JSON 块列表构造可观测量

        Args:
            records (list): [{"row":{r0,r1,N}, "col":{r0,r1,N}, "re":[[...]], "im":[[...]]}, ...]
            k0 (int): 模型的转换重数
            k1 (int): 模型的转换重数

        Returns:
            SectoredObservable: 可观测量
        """
        if not isinstance(records, list):
            raise ConfigError("可观测量文件必须是块记录的 JSON 数组")
        blocks = {}
        for record in records:
            try:
                row, col = record['row'], record['col']
                mu = SectorIndex(int(row['r0']), int(row['r1']), int(row['N']), k0, k1)
                nu = SectorIndex(int(col['r0']), int(col['r1']), int(col['N']), k0, k1)
                re = np.asarray(record['re'], dtype=float)
                im = np.asarray(record.get('im', np.zeros_like(re)), dtype=float)
            except KeyError as e:
                raise ConfigError(f"可观测量记录缺少字段 {e}")
            except (TypeError, ValueError) as e:
                raise ConfigError(f"可观测量记录格式错误: {e}")
            if re.shape != im.shape:
                raise ConfigError(f"块 ({mu},{nu}) 的 're' 与 'im' 形状不一致")
            blocks[(mu, nu)] = re + 1j * im
        return cls(blocks)

    def to_records(self):
        records = []
        for (mu, nu) in sorted(self.blocks, key=lambda key: (key[0].sort_key, key[1].sort_key)):
            block = self.blocks[(mu, nu)]
            records.append({'row': mu.to_dict(), 'col': nu.to_dict(),
                            're': block.real.tolist(), 'im': block.imag.tolist()})
        return records


def propagator(s, t):
    """
    相互作用绘景传播子 U(t)[m][n] = Σ_l P_m(E_l) P̄_n(E_l) w_l e^{−iE_l t}

    Args:
        s (SpectralData): 谱分解
        t (float): 时间

    Returns:
        numpy.ndarray: 复幺正矩阵
    """
    Q = s.complex_coeffs()
    phases = s.weights * np.exp(-1j * s.eigenvalues * t)
    return (Q * phases[None, :]) @ Q.conj().T


def free_phases(model, mu, t):
    """自由演化相位 t·(ω0r0+ω1r1+ω1k1N+(ω0k0−ω1k1)n)"""
    return t * free_energy(model, mu)


def evolve_state(model, psi, t):
    """
    薛定谔演化 e^{−iH0 t} e^{−iH_I t}|ψ⟩

    Args:
        model (ModelSpec): 模型
        psi (SectoredState): 初态
        t (float): 时间

    Returns:
        SectoredState: 末态
    """
    require_normalized(psi)
    if t == 0:
        return SectoredState({mu: values.copy() for mu, values in psi.amplitudes.items()})
    evolved = {}
    for mu, values in psi.amplitudes.items():
        s = spectral_decomposition(model, mu)
        evolved[mu] = np.exp(-1j * free_phases(model, mu, t)) * (propagator(s, t) @ values)
    return SectoredState(evolved)


def require_normalized(psi):
    """
    检查初态已归一化，演化与期望值都以 ⟨ψ|ψ⟩ = 1 为前提

    Args:
        psi (SectoredState): 态
    """
    norm = psi.norm()
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ConfigError(f"初态未归一化: ‖ψ‖ = {norm:.12g}")


def evolve_oracle(model, psi, t):
    """与 evolve_state 相同的演化，但使用稠密矩阵的 Taylor 矩阵指数"""
    require_normalized(psi)
    evolved = {}
    for mu, values in psi.amplitudes.items():
        H = jacobi_operator(model, mu).to_dense()
        U = expm_taylor(-1j * t * H)
        evolved[mu] = np.exp(-1j * free_phases(model, mu, t)) * (U @ values)
    return SectoredState(evolved)


def eigenstate(model, mu, l):
    """
    归一化本征态 |E_{l,μ}⟩√w_l，作为单扇区态

    Args:
        model (ModelSpec): 模型
        mu (SectorIndex): 扇区
        l (int): 本征值下标

    Returns:
        SectoredState: 本征态
    """
    s = spectral_decomposition(model, mu)
    if not 0 <= l <= s.N:
        raise SectorError(f"本征值下标 l={l} 超出扇区 {mu} 的范围 [0,{s.N}]")
    return SectoredState({mu: np.sqrt(s.weights[l]) * s.complex_coeffs()[:, l]})


def expectation(model, psi, X, t):
    """
    期望值 ⟨ψ(t)|X|ψ(t)⟩，先演化态再求括号

    Args:
        model (ModelSpec): 模型
        psi (SectoredState): 初态
        X (SectoredObservable): 厄米可观测量
        t (float): 时间

    Returns:
        float: 实数期望值
    """
    X.check_hermitian()
    value = X.bracket(evolve_state(model, psi, t))
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(1.0, abs(value.real)):
        raise NumericalError(f"厄米可观测量的期望值出现虚部 {value.imag:.3e}（实部 {value.real:.6g}）")
    return value.real


def _heisenberg_factors(model, mu, t):
    s = spectral_decomposition(model, mu)
    Q = s.complex_coeffs()
    free = np.exp(-1j * free_phases(model, mu, t))
    return s, Q, free


def heisenberg_block(model, mu, nu, X, t):
    """
    海森堡绘景矩阵元块 _μ⟨m|X(t)|n⟩_ν 的双重多项式求和

    Σ_{l,k} P_m(E_l) w_l [Σ_{r,s} P̄_r(E_l) e^{iθ_r t} X_rs e^{−iθ_s t} P_s(E_k)] w_k P̄_n(E_k) e^{−it(E_k−E_l)}

    Args:
        model (ModelSpec): 模型
        mu (SectorIndex): 行扇区
        nu (SectorIndex): 列扇区
        X (SectoredObservable): 可观测量
        t (float): 时间

    Returns:
        numpy.ndarray: (N_μ+1)×(N_ν+1) 复矩阵
    """
    s_mu, Q_mu, f_mu = _heisenberg_factors(model, mu, t)
    s_nu, Q_nu, f_nu = _heisenberg_factors(model, nu, t)
    core = Q_mu.conj().T @ (f_mu.conj()[:, None] * X.block(mu, nu) * f_nu[None, :]) @ Q_nu
    left = Q_mu * (s_mu.weights * np.exp(1j * s_mu.eigenvalues * t))[None, :]
    right = Q_nu.conj() * (s_nu.weights * np.exp(-1j * s_nu.eigenvalues * t))[None, :]
    return np.einsum('ml,lk,nk->mn', left, core, right)


def heisenberg_element(model, mu, m, nu, n, X, t):
    """单个海森堡绘景矩阵元 _μ⟨m|X(t)|n⟩_ν"""
    if not 0 <= m <= mu.N:
        raise SectorError(f"索引 m={m} 超出扇区 {mu} 的范围 [0,{mu.N}]")
    if not 0 <= n <= nu.N:
        raise SectorError(f"索引 n={n} 超出扇区 {nu} 的范围 [0,{nu.N}]")
    return complex(heisenberg_block(model, mu, nu, X, t)[m, n])


def expectation_spectral(model, psi, X, t):
    """用海森堡矩阵元求和计算 ⟨X(t)⟩，作为 expectation 的交叉校验"""
    X.check_hermitian()
    total = 0j
    for (mu, nu) in X.blocks:
        if mu in psi.amplitudes and nu in psi.amplitudes:
            block = heisenberg_block(model, mu, nu, X, t)
            total += np.vdot(psi.amplitudes[mu], block @ psi.amplitudes[nu])
    return complex(total)
