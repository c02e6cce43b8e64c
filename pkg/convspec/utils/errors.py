"""
convspec 异常层次

所有库内错误都继承自 ConvSpecError，CLI 根据异常类型映射退出码：
配置/参数/扇区错误返回 2，数值错误返回 3。
"""


class ConvSpecError(Exception):
    """所有 convspec 错误的基类"""

    exit_code = 2


class ConfigError(ConvSpecError, ValueError):
    """模型定义、参数或配置无效（JSON 格式错误、未知族、参数越界、超过上限）"""

    exit_code = 2


class SectorError(ConvSpecError, ValueError):
    """扇区索引无效（n 超出 [0,N]、μ 与 (k0,k1) 不一致等）"""

    exit_code = 2


class NumericalError(ConvSpecError, ArithmeticError):
    """数值计算失败（分母为零、根号下为负、扇区解耦等）"""

    exit_code = 3


class ConvergenceError(NumericalError):
    """迭代求解器在允许的迭代次数内未收敛"""


class DegeneracyError(NumericalError):
    """本征值间隔低于简并阈值，违反单谱假设"""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class HermiticityError(NumericalError):
    """可观测量不是厄米的"""
