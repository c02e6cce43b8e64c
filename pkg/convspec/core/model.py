"""
哈密顿量模型定义 ModelSpec 及其 JSON 编解码

耦合来源有三种：目录族（family）、显式系数表（tables）、提升模型（lifted）。
"""
import json
import math
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..families import get_family
from ..utils.errors import ConfigError

logger = logging.getLogger(__name__)


def wrap_phase(phi):
    """把相位折叠到 (−π, π]"""
    wrapped = math.remainder(phi, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


@dataclass
class CatalogCoupling:
    """目录族耦合"""
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.family = get_family(self.name, self.params)
        self.params = dict(self.family.params)

    def to_dict(self):
        return {'type': 'family', 'name': self.name, 'params': dict(self.params)}


@dataclass
class TableSector:
    """单个扇区的显式系数"""
    N: int
    a: np.ndarray
    b_mag: np.ndarray
    b_phase: np.ndarray

    def __post_init__(self):
        if self.N < 0:
            raise ConfigError(f"系数表中的 'N' 必须非负，实际为 {self.N}")
        self.a = np.asarray(self.a, dtype=float)
        self.b_mag = np.asarray(self.b_mag, dtype=float)
        self.b_phase = np.asarray(self.b_phase, dtype=float)
        if self.a.shape != (self.N + 1,):
            raise ConfigError(f"扇区 N={self.N} 的 'a' 长度应为 {self.N + 1}，实际为 {self.a.size}")
        if self.b_mag.shape != (self.N,):
            raise ConfigError(f"扇区 N={self.N} 的 'b_mag' 长度应为 {self.N}，实际为 {self.b_mag.size}")
        if self.b_phase.shape != (self.N,):
            raise ConfigError(f"扇区 N={self.N} 的 'b_phase' 长度应为 {self.N}，实际为 {self.b_phase.size}")
        if np.any(self.b_mag < 0):
            raise ConfigError(f"扇区 N={self.N} 的 'b_mag' 必须非负")
        if not (np.all(np.isfinite(self.a)) and np.all(np.isfinite(self.b_mag))
                and np.all(np.isfinite(self.b_phase))):
            raise ConfigError(f"扇区 N={self.N} 的系数必须是有限实数")
        self.b_phase = np.array([wrap_phase(phi) for phi in self.b_phase])


@dataclass
class TablesCoupling:
    """按扇区层级 N 给出的显式系数表"""
    sectors: dict

    def sector(self, N):
        table = self.sectors.get(N)
        if table is None:
            available = sorted(self.sectors)
            raise ConfigError(f"系数表中没有扇区 N={N}，可用: {available}")
        return table

    def to_dict(self):
        return {
            'type': 'tables',
            'sectors': [
                {'N': N, 'a': t.a.tolist(), 'b_mag': t.b_mag.tolist(), 'b_phase': t.b_phase.tolist()}
                for N, t in sorted(self.sectors.items())
            ],
        }


@dataclass
class LiftedCoupling:
    """由 k0=k1=1 的内模型提升得到的耦合"""
    inner: 'ModelSpec'

    def __post_init__(self):
        if self.inner.k0 != 1 or self.inner.k1 != 1:
            raise ConfigError(
                f"提升模型的 'inner' 必须满足 k0=k1=1，实际为 k0={self.inner.k0}, k1={self.inner.k1}")

    def to_dict(self, k0, k1):
        return {'type': 'lifted', 'k0': k0, 'k1': k1, 'inner': self.inner.to_dict()}


@dataclass
class ModelSpec:
    """哈密顿量 H = H0 + H_I 的完整定义"""
    k0: int = 1
    k1: int = 1
    omega0: float = 0.0
    omega1: float = 0.0
    coupling: object = None

    def __post_init__(self):
        for key in ('k0', 'k1'):
            value = getattr(self, key)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ConfigError(f"'{key}' 必须是正整数，实际为 {value!r}")
        for key in ('omega0', 'omega1'):
            try:
                setattr(self, key, float(getattr(self, key)))
            except (TypeError, ValueError):
                raise ConfigError(f"'{key}' 必须是实数，实际为 {getattr(self, key)!r}")
        if self.coupling is None:
            raise ConfigError("模型缺少 'coupling'")
        if isinstance(self.coupling, CatalogCoupling) and (self.k0 != 1 or self.k1 != 1):
            raise ConfigError(
                f"目录族耦合要求 k0=k1=1，实际为 k0={self.k0}, k1={self.k1}；其他重数请使用 lifted 模型")

    @property
    def family(self):
        """目录族描述符；提升模型返回内模型的族，系数表返回 None"""
        if isinstance(self.coupling, CatalogCoupling):
            return self.coupling.family
        if isinstance(self.coupling, LiftedCoupling):
            return self.coupling.inner.family
        return None

    def to_dict(self):
        if isinstance(self.coupling, LiftedCoupling):
            coupling = self.coupling.to_dict(self.k0, self.k1)
        else:
            coupling = self.coupling.to_dict()
        return {'k0': self.k0, 'k1': self.k1, 'omega0': self.omega0,
                'omega1': self.omega1, 'coupling': coupling}

    @classmethod
    def from_dict(cls, data):
        """
        从 JSON 字典构造模型

        Args:
            data (dict): 模型字典

        Returns:
            ModelSpec: 模型
        """
        if not isinstance(data, dict):
            raise ConfigError("模型定义必须是 JSON 对象")
        coupling_data = data.get('coupling')
        if not isinstance(coupling_data, dict):
            raise ConfigError("模型缺少 'coupling' 对象")
        kind = coupling_data.get('type')
        k0 = data.get('k0', 1)
        k1 = data.get('k1', 1)

        if kind == 'family':
            if 'name' not in coupling_data:
                raise ConfigError("'coupling' 缺少字段 'name'")
            params = coupling_data.get('params', {})
            if not isinstance(params, dict):
                raise ConfigError("'coupling.params' 必须是 JSON 对象")
            coupling = CatalogCoupling(coupling_data['name'], params)
        elif kind == 'tables':
            sectors = {}
            for entry in coupling_data.get('sectors', []):
                try:
                    table = TableSector(int(entry['N']), entry['a'], entry.get('b_mag', []),
                                        entry.get('b_phase', [0.0] * int(entry['N'])))
                except KeyError as e:
                    raise ConfigError(f"系数表条目缺少字段 {e}")
                except (TypeError, ValueError) as e:
                    raise ConfigError(f"系数表条目格式错误: {e}")
                if table.N in sectors:
                    raise ConfigError(f"系数表中扇区 N={table.N} 重复")
                sectors[table.N] = table
            if not sectors:
                raise ConfigError("'coupling.sectors' 不能为空")
            coupling = TablesCoupling(sectors)
        elif kind == 'lifted':
            if 'inner' not in coupling_data:
                raise ConfigError("'coupling' 缺少字段 'inner'")
            inner = cls.from_dict(coupling_data['inner'])
            coupling = LiftedCoupling(inner)
            k0 = coupling_data.get('k0', k0)
            k1 = coupling_data.get('k1', k1)
        else:
            raise ConfigError(f"未知的耦合类型 'coupling.type': {kind!r}")

        return cls(k0=k0, k1=k1, omega0=data.get('omega0', 0.0),
                   omega1=data.get('omega1', 0.0), coupling=coupling)


def catalog_model(name, omega0=0.0, omega1=0.0, **params):
    """构造 k0=k1=1 的目录族模型"""
    return ModelSpec(1, 1, omega0, omega1, CatalogCoupling(name, params))


def load_model(path):
    """
    从 JSON 文件读取模型

    Args:
        path (str): 文件路径

    Returns:
        ModelSpec: 模型
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"模型文件不存在: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"模型文件 {path} 不是合法的 JSON: {e}")
    logger.info(f"已读取模型文件: {path}")
    return ModelSpec.from_dict(data)
