"""
不变量校验套件

在 (族, 参数点, N) 网格上逐点运行全部数值检查，汇总每项检查的最大残差，
按排序键确定性地输出结果，并可生成 Markdown 报告。
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd

from ..core.evolution import SectoredObservable, SectoredState, evolve_oracle, evolve_state, expectation, \
    expectation_spectral, propagator
from ..core.fock_sector import SectorIndex
from ..core.hamiltonian import cal_g, jacobi_operator, operator_matrices
from ..core.lifting import lift_model
from ..core.model import catalog_model
from ..core.spectral import decompose_jacobi, inversion_residual, reconstruction_residual, \
    verify_dual_orthogonality, verify_orthonormality
from ..families import DEFAULT_GRID, FAMILY_NAMES
from ..utils.errors import ConfigError, ConvSpecError

logger = logging.getLogger(__name__)

# 只在较小扇区上运行的检查
DENSE_N_MAX = 10
CLOSED_FORM_N_MAX = 12
LIFT_N_MAX = 6
LIFT_SHAPE = (2, 3)
EVOLUTION_TIMES = (0.5, 3.0, 10.0)

# 检查名称、说明和固定阈值；None 表示使用 --tol
CHECKS = [
    ('spectrum', '数值本征值与闭式谱之差 / max(1,|E|)', 1e-9),
    ('orthonormality', 'Σ_l P_n P_m w_l − δ_nm', None),
    ('dual_orthogonality', '√w 缩放系数矩阵的正交性', None),
    ('weight_sum', '|Σ_l w_l − 1|', None),
    ('weights_closed_form', '谱权重与闭式权重的相对差', 1e-8),
    ('closed_form_polynomials', '|闭式 P| 与 |谱分解 P| 之差 / 该列最大 |P|', 1e-9),
    ('hahn_chebyshev', 'Hahn(α=β=0) 与离散 Chebyshev 的差', 1e-10),
    ('inversion', '反演公式残差', None),
    ('reconstruction', 'Σ E w P Pᵀ 与雅可比矩阵之差', 1e-9),
    ('operator_identities', '[A0,A]=−A, A*A=𝓖(A0−1,K), AA*=𝓖(A0,K)', 1e-12),
    ('lift_independence', '提升系数在各 (r0,r1) 扇区间的差', 1e-12),
    ('lift_spectrum', '提升扇区谱与闭式谱之差', 1e-9),
    ('lift_operator_identities', '提升模型 (2,3) 的算符恒等式', 1e-12),
    ('unitarity', '|U U† − I|', 1e-10),
    ('group_law', '|U(t1)U(t2) − U(t1+t2)|', 1e-9),
    ('oracle', '谱演化与 Taylor 矩阵指数之差', 1e-8),
    ('expectation', '两种期望值计算之差', 1e-9),
    ('errors', '网格点计算中抛出的异常', 0.0),
]
CHECK_ORDER = {name: i for i, (name, _, _) in enumerate(CHECKS)}


def _record(check, residual, where):
    return {'check': check, 'residual': float(residual), 'where': where}


def _max_or_zero(values):
    values = list(values)
    return max(values) if values else 0.0


def _operator_residual(model, mu):
    """扇区上三条算符恒等式的最大相对残差"""
    ops = operator_matrices(model, mu)
    A, A_star, A0 = ops['A'], ops['A_star'], ops['A0']
    K = mu.K
    g_lower = np.array([cal_g(model, Fraction(mu.r0, mu.k0) + n - 1, K) for n in range(mu.N + 1)])
    g_upper = np.array([cal_g(model, Fraction(mu.r0, mu.k0) + n, K) for n in range(mu.N + 1)])
    scale = max(1.0, float(np.max(g_upper)), float(np.max(g_lower)))
    residuals = [
        np.max(np.abs(A0 @ A - A @ A0 + A)) / max(1.0, float(np.max(np.abs(A)))),
        np.max(np.abs(A_star @ A - np.diag(g_lower))) / scale,
        np.max(np.abs(A @ A_star - np.diag(g_upper))) / scale,
    ]
    return float(max(residuals))


def closed_form_residual(family, s):
    """
    闭式多项式与谱分解系数的最大模差

    |P_n(E_l)| 的闭式值与 s.coeffs 中对应列比较，差值除以该列最大 |P|（P_0 = 1，故不小于 1）。
    闭式谱按大小排序后与升序的数值本征值逐列对应。

    Args:
        family (BaseFamily): 族描述符
        s (SpectralData): 同一族在扇区 N 上的谱分解

    Returns:
        float: 残差
    """
    N = s.N
    closed = np.array([family.spectrum(l, N) for l in range(N + 1)])
    residual = 0.0
    for rank, l in enumerate(np.argsort(closed, kind='stable')):
        P_num = np.abs(s.coeffs[:, rank])
        P_closed = np.abs([family.polynomial(n, int(l), N) for n in range(N + 1)])
        residual = max(residual, float(np.max(np.abs(P_closed - P_num)) / np.max(P_num)))
    return residual


def _test_state(mu):
    n = np.arange(mu.N + 1)
    values = (1.0 + n) + 1j * n
    return SectoredState({mu: values}).normalized()


def check_grid_point(name, params, N, tol, inject_fault=False):
    """
    对单个网格点运行全部检查

    Args:
        name (str): 族名称
        params (dict): 族参数
        N (int): 扇区层级
        tol (float): 正交性类检查的阈值
        inject_fault (bool): 测试钩子，把 w_0 加倍

    Returns:
        list: 检查记录
    """
    where = f"{name}{params} N={N}"
    records = []
    try:
        model = catalog_model(name, **params)
        family = model.family
        mu = SectorIndex(0, 0, N)
        j = jacobi_operator(model, mu)
        s = decompose_jacobi(j, mu)
        if inject_fault:
            s.weights[0] *= 2.0

        closed = np.array([family.spectrum(l, N) for l in range(N + 1)])
        records.append(_record('spectrum', np.max(np.abs(s.eigenvalues - closed) / np.maximum(1.0, np.abs(closed))), where))
        records.append(_record('orthonormality', verify_orthonormality(s), where))
        records.append(_record('dual_orthogonality', verify_dual_orthogonality(s), where))
        records.append(_record('weight_sum', abs(np.sum(s.weights) - 1.0), where))
        records.append(_record('inversion', inversion_residual(s), where))
        records.append(_record('reconstruction', reconstruction_residual(j, s), where))

        closed_cap = family.closed_form_cap()
        if closed_cap is None or N <= closed_cap:
            w_closed = np.array([family.weight(l, N) for l in range(N + 1)])
            records.append(_record('weights_closed_form', np.max(np.abs(s.weights - w_closed) / w_closed), where))
        if N <= CLOSED_FORM_N_MAX:
            records.append(_record('closed_form_polynomials', closed_form_residual(family, s), where))

        if name == 'chebyshev' and N <= CLOSED_FORM_N_MAX:
            hahn = catalog_model('hahn', alpha=0.0, beta=0.0)
            s_hahn = decompose_jacobi(jacobi_operator(hahn, mu), mu)
            residual = max(np.max(np.abs(s_hahn.eigenvalues - s.eigenvalues)) / max(1.0, np.max(np.abs(closed))),
                           np.max(np.abs(s_hahn.coeffs - s.coeffs)) / max(1.0, np.max(np.abs(s.coeffs))))
            records.append(_record('hahn_chebyshev', residual, where))

        if N <= DENSE_N_MAX:
            records.append(_record('operator_identities', _operator_residual(model, mu), where))
            records.extend(_dynamics_records(model, mu, s, where))

        if N <= LIFT_N_MAX:
            records.extend(_lift_records(model, j, closed, N, where))
    except ConvSpecError as e:
        logger.error(f"网格点 {where} 计算失败: {e}")
        records.append(_record('errors', math.inf, f"{where}: {e}"))
    return records


def _dynamics_records(model, mu, s, where):
    records = []
    size = mu.N + 1
    unitarity = _max_or_zero(
        np.max(np.abs(U @ U.conj().T - np.eye(size)))
        for U in (propagator(s, t) for t in (0.1, 1.0, 10.0)))
    records.append(_record('unitarity', unitarity, where))

    t1, t2 = 0.3, 0.7
    group = np.max(np.abs(propagator(s, t1) @ propagator(s, t2) - propagator(s, t1 + t2)))
    records.append(_record('group_law', group, where))

    psi = _test_state(mu)
    oracle = 0.0
    for t in EVOLUTION_TIMES:
        spectral = evolve_state(model, psi, t).amplitudes[mu]
        dense = evolve_oracle(model, psi, t).amplitudes[mu]
        oracle = max(oracle, float(np.max(np.abs(spectral - dense))))
    records.append(_record('oracle', oracle, where))

    X = SectoredObservable.number_operator(0, [mu])
    scale = max(1.0, float(mu.r0 + mu.k0 * mu.N))
    diff = max(abs(expectation(model, psi, X, t) - expectation_spectral(model, psi, X, t)) for t in EVOLUTION_TIMES)
    records.append(_record('expectation', diff / scale, where))
    return records


def _lift_records(model, j_inner, closed, N, where):
    k0, k1 = LIFT_SHAPE
    lifted = lift_model(model, k0, k1)
    scale = max(1.0, j_inner.scale())
    independence = 0.0
    spectrum = 0.0
    identities = 0.0
    for r0 in range(k0):
        for r1 in range(k1):
            mu = SectorIndex(r0, r1, N, k0, k1)
            j = jacobi_operator(lifted, mu)
            independence = max(independence,
                               float(np.max(np.abs(j.diag - j_inner.diag))),
                               float(np.max(np.abs(j.offdiag_mag - j_inner.offdiag_mag), initial=0.0)))
            s = decompose_jacobi(j, mu)
            spectrum = max(spectrum, float(np.max(np.abs(s.eigenvalues - closed) / np.maximum(1.0, np.abs(closed)))))
            identities = max(identities, _operator_residual(lifted, mu))
    return [
        _record('lift_independence', independence / scale, where),
        _record('lift_spectrum', spectrum, where),
        _record('lift_operator_identities', identities, where),
    ]


def build_grid(families, N_max, config):
    """
    展开校验网格，超出精度上限的点跳过并记录警告

    Returns:
        list: [(排序键, 族名称, 参数, N)]
    """
    q_max_n = config['limits']['q_max_n']
    max_n = config['limits']['max_n']
    grid = []
    for fi, name in enumerate(families):
        for pi, params in enumerate(DEFAULT_GRID[name]):
            family = catalog_model(name, **params).family
            cap = min(N_max, max_n)
            if family.is_q:
                cap = min(cap, q_max_n, family.numeric_cap())
            if cap < N_max:
                logger.warning(f"{name}{params}: N > {cap} 超出精度上限，已跳过")
            for N in range(1, cap + 1):
                grid.append(((fi, pi, N), name, params, N))
    return grid


class InvariantSuite:
    """按网格运行不变量检查并汇总结果"""

    def __init__(self, config, tol=None, jobs=None, inject_fault=False):
        """
        初始化校验套件

        Args:
            config (dict): 配置字典
            tol (float, optional): 正交性类检查阈值，默认取配置
            jobs (int, optional): 并行线程数，默认取配置
            inject_fault (bool): 测试钩子，破坏一个权重
        """
        self.config = config
        self.tol = tol if tol is not None else config['tolerances']['verify']
        self.jobs = jobs if jobs is not None else config['cli']['jobs']
        if self.tol <= 0:
            raise ConfigError(f"'--tol' 必须为正，实际为 {self.tol}")
        if self.jobs < 1:
            raise ConfigError(f"'--jobs' 必须为正整数，实际为 {self.jobs}")
        self.inject_fault = inject_fault
        self.records = []

    def tolerance(self, check):
        fixed = CHECKS[CHECK_ORDER[check]][2]
        return self.tol if fixed is None else fixed

    def run(self, families, N_max):
        """
        运行套件

        Args:
            families (list): 族名称列表
            N_max (int): 最大扇区层级

        Returns:
            pandas.DataFrame: 每项检查的汇总
        """
        if N_max < 1:
            raise ConfigError(f"'--N-max' 必须至少为 1，实际为 {N_max}")
        grid = build_grid(families, N_max, self.config)
        logger.info(f"校验网格共 {len(grid)} 个点，并行线程数 {self.jobs}")

        def task(point):
            key, name, params, N = point
            return key, check_grid_point(name, params, N, self.tol, self.inject_fault)

        if self.jobs == 1:
            results = [task(point) for point in grid]
        else:
            with ThreadPoolExecutor(max_workers=self.jobs) as executor:
                results = list(executor.map(task, grid))

        self.records = []
        for key, records in sorted(results, key=lambda item: item[0]):
            for record in records:
                record['tolerance'] = self.tolerance(record['check'])
                record['passed'] = bool(record['residual'] <= record['tolerance'])
                self.records.append(record)
        return self.summary()

    def summary(self):
        """每项检查的最坏残差"""
        rows = []
        for check, description, _ in CHECKS:
            records = [r for r in self.records if r['check'] == check]
            if not records:
                continue
            worst = max(records, key=lambda r: r['residual'])
            rows.append({
                'check': check,
                'status': 'PASS' if all(r['passed'] for r in records) else 'FAIL',
                'points': len(records),
                'worst_residual': worst['residual'],
                'tolerance': worst['tolerance'],
                'where': worst['where'],
            })
        return pd.DataFrame(rows, columns=['check', 'status', 'points', 'worst_residual', 'tolerance', 'where'])

    @property
    def passed(self):
        return all(r['passed'] for r in self.records)

    def worst_offender(self):
        """超出阈值比例最大的失败记录"""
        failures = [r for r in self.records if not r['passed']]
        if not failures:
            return None

        def ratio(record):
            if record['tolerance'] == 0:
                return math.inf
            return record['residual'] / record['tolerance']

        return max(failures, key=ratio)

    def write_report(self, path):
        """
        生成 Markdown 报告

        Args:
            path (str): 报告路径
        """
        summary = self.summary()
        lines = ['# convspec 校验报告', '']
        lines.append(f"结果: {'通过' if self.passed else '失败'}，共 {len(self.records)} 条检查记录。")
        lines.append('')
        lines.append('| 检查 | 说明 | 状态 | 点数 | 最大残差 | 阈值 | 位置 |')
        lines.append('|---|---|---|---|---|---|---|')
        for row in summary.itertuples(index=False):
            description = CHECKS[CHECK_ORDER[row.check]][1]
            lines.append(f"| {row.check} | {description} | {row.status} | {row.points} | "
                         f"{row.worst_residual:.3e} | {row.tolerance:.0e} | {row.where} |")
        failures = [r for r in self.records if not r['passed']]
        if failures:
            lines += ['', '## 失败记录', '']
            for record in failures:
                lines.append(f"- {record['check']}: {record['residual']:.3e} > {record['tolerance']:.0e} ({record['where']})")
        lines.append('')
        path = Path(path)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write('\n'.join(lines))
        logger.info(f"校验报告已保存到: {path}")


def resolve_families(selection):
    """'all' 或逗号分隔的族名称列表"""
    if selection in (None, 'all'):
        return list(FAMILY_NAMES)
    names = [name.strip() for name in selection.split(',') if name.strip()]
    unknown = [name for name in names if name not in FAMILY_NAMES]
    if unknown:
        raise ConfigError(f"未知的多项式族 '--family': {', '.join(unknown)}，可选: all, {', '.join(FAMILY_NAMES)}")
    return names
