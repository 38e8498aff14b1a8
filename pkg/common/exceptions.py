# 异常定义

from typing import Optional


class SimulationError(Exception):
    """
    所有模拟相关异常的基类
    """


class ConfigError(SimulationError):
    """
    配置文件错误：未知键、类型错误或取值越界
    """


class ScenarioError(SimulationError):
    """
    场景输入错误，携带出错的文件与行号
    """

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.line = line

    def __str__(self) -> str:
        if self.path is None:
            return self.message
        if self.line is None:
            return f"{self.path}: {self.message}"
        return f"{self.path}:{self.line}: {self.message}"


class InfeasibleError(SimulationError):
    """
    无可行解：例如目标值为正的类别在样本中没有支撑
    """


class UnknownCategoryError(SimulationError):
    """
    参数表中缺少某个(系数, 类别)组合，或属性取值不在类别集合内
    """
