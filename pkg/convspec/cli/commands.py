"""
CLI 子命令的实现

每个命令接收解析后的参数和配置字典，返回 pandas.DataFrame 表格；
输出由 main 统一交给 output 模块。
"""
import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from ..core.evolution import SectoredObservable, SectoredState, evolve_state
from ..core.fock_sector import SectorIndex
from ..core.hamiltonian import jacobi_operator
from ..core.lifting import lift_model
from ..core.model import catalog_model, load_model
from ..core.spectral import decompose_jacobi
from ..families import FAMILIES, family_spectrum, family_weight
from ..utils.errors import ConfigError

logger = logging.getLogger(__name__)

# 族参数名到 CLI 参数属性名的映射
PARAM_FLAGS = ('p', 'gamma', 'delta', 'alpha', 'beta', 'q', 'c')


def family_params(args):
    """收集所选族需要的参数，缺失时抛出 ConfigError"""
    cls = FAMILIES.get(args.family)
    if cls is None:
        raise ConfigError(f"未知的多项式族 '--family': {args.family!r}，可选: {', '.join(FAMILIES)}")
    params = {}
    for name in cls.param_names:
        value = getattr(args, name, None)
        if value is None:
            raise ConfigError(f"族 {args.family} 缺少参数 '--{name}'")
        params[name] = value
    for name in PARAM_FLAGS:
        if name not in cls.param_names and getattr(args, name, None) is not None:
            logger.warning(f"族 {args.family} 不使用参数 '--{name}'，已忽略")
    return params


def build_model(args):
    """
    由 --model 文件或 --family 与参数构造模型

    --family 配合 k0/k1 ≠ 1 时构造以该族为内模型的提升模型。

    Args:
        args (argparse.Namespace): 解析后的参数

    Returns:
        ModelSpec: 模型
    """
    if args.model:
        if args.family:
            logger.warning("同时给出 '--model' 与 '--family'，以 '--model' 为准")
        return load_model(args.model)
    if not args.family:
        raise ConfigError("必须给出 '--family' 或 '--model'")
    inner = catalog_model(args.family, args.omega0, args.omega1, **family_params(args))
    if (args.k0, args.k1) == (1, 1):
        return inner
    return lift_model(inner, args.k0, args.k1)


def selected_sector(args, model):
    if args.N is None:
        raise ConfigError("缺少扇区层级 '--N'")
    return SectorIndex(args.r0, args.r1, args.N, model.k0, model.k1)


def run_spectrum(args, config):
    """本征值表 (l, E_numeric, E_closed_form, abs_diff)"""
    model = build_model(args)
    mu = selected_sector(args, model)
    s = decompose_jacobi(jacobi_operator(model, mu), mu)
    family = model.family
    if family is not None:
        closed = np.array([family_spectrum(family, l, mu.N) for l in range(mu.N + 1)])
    else:
        closed = np.full(mu.N + 1, np.nan)
    return pd.DataFrame({
        'l': np.arange(mu.N + 1),
        'E_numeric': s.eigenvalues,
        'E_closed_form': closed,
        'abs_diff': np.abs(s.eigenvalues - closed),
    })


def run_eigvec(args, config):
    """本征矢系数表：行 n，列 P(E_l)，实规范下 P_0 = 1"""
    model = build_model(args)
    mu = selected_sector(args, model)
    s = decompose_jacobi(jacobi_operator(model, mu), mu)
    frame = pd.DataFrame({'n': np.arange(mu.N + 1)})
    for l in range(mu.N + 1):
        frame[f'P_l{l}'] = s.coeffs[:, l]
    return frame


def run_weights(args, config):
    """权重表 (l, w)；目录族给出闭式权重，其余模型给出谱权重"""
    model = build_model(args)
    mu = selected_sector(args, model)
    family = model.family
    if family is not None:
        weights = np.array([family_weight(family, l, mu.N, normalized=False) for l in range(mu.N + 1)])
    else:
        weights = decompose_jacobi(jacobi_operator(model, mu), mu).weights
    if args.normalized:
        weights = weights / np.sum(weights)
    return pd.DataFrame({'l': np.arange(mu.N + 1), 'w': weights})


def _read_json(path, label):
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"{label}文件不存在: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{label}文件 {path} 不是合法的 JSON: {e}")


def time_grid(t_max, dt):
    if dt <= 0:
        raise ConfigError(f"'--dt' 必须为正，实际为 {dt}")
    if t_max < 0:
        raise ConfigError(f"'--t-max' 不能为负，实际为 {t_max}")
    steps = int(np.floor(t_max / dt + 1e-9))
    return [k * dt for k in range(steps + 1)]


def run_evolve(args, config):
    """期望值轨迹 (t, Re_X, Im_X, norm)"""
    model = build_model(args)
    if args.state:
        psi = SectoredState.from_records(_read_json(args.state, '态'), model.k0, model.k1)
    else:
        psi = SectoredState.basis(selected_sector(args, model), 0)
    if not psi.amplitudes:
        raise ConfigError("初态为空")
    if args.observable:
        X = SectoredObservable.from_records(_read_json(args.observable, '可观测量'), model.k0, model.k1)
    else:
        X = SectoredObservable.number_operator(0, psi.sectors)
    X.check_hermitian()

    rows = []
    for t in time_grid(args.t_max, args.dt):
        psi_t = evolve_state(model, psi, t)
        value = X.bracket(psi_t)
        rows.append((t, value.real, value.imag, psi_t.norm()))
    logger.info(f"演化完成，共 {len(rows)} 个时间点")
    return pd.DataFrame(rows, columns=['t', 'Re_X', 'Im_X', 'norm'])


def run_lift(args, config):
    """提升模型在层级 N 上每个 (r0,r1) 扇区的系数表"""
    model = build_model(args)
    if args.N is None:
        raise ConfigError("缺少扇区层级 '--N'")
    rows = []
    for r0 in range(model.k0):
        for r1 in range(model.k1):
            mu = SectorIndex(r0, r1, args.N, model.k0, model.k1)
            j = jacobi_operator(model, mu)
            for n in range(mu.N + 1):
                mag = j.offdiag_mag[n] if n < mu.N else np.nan
                phase = j.offdiag_phase[n] if n < mu.N else np.nan
                rows.append((r0, r1, n, j.diag[n], mag, phase))
    return pd.DataFrame(rows, columns=['r0', 'r1', 'n', 'a', 'b_mag', 'b_phase'])


COMMANDS = {
    'spectrum': run_spectrum,
    'eigvec': run_eigvec,
    'weights': run_weights,
    'evolve': run_evolve,
    'lift': run_lift,
}
