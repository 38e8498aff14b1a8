# 阻抗矩阵

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Mapping, NamedTuple, Tuple

import numpy as np

from common.exceptions import ScenarioError


class Travel(NamedTuple):
    """一次OD查询的结果"""
    time: float
    cost: float
    distance: float


def freeze(matrix: np.ndarray) -> np.ndarray:
    """
    复制为只读的float64矩阵
    """
    frozen = np.array(matrix, dtype=np.float64, copy=True)
    frozen.setflags(write=False)
    return frozen


@dataclass(frozen=True)
class SkimMatrixSet:
    """
    按方式划分的出行时间、费用矩阵与道路距离矩阵

    矩阵按小区连续下标以行优先方式存储；方式映射与矩阵均只读
    """
    modes: Tuple[str, ...]
    time: Mapping[str, np.ndarray]
    cost: Mapping[str, np.ndarray]
    distance: np.ndarray

    @classmethod
    def build(cls, size: int, time: Dict[str, np.ndarray], cost: Dict[str, np.ndarray],
              distance: np.ndarray) -> "SkimMatrixSet":
        """
        校验并构建矩阵集

        Args:
            size: 小区数量
            time: 方式 -> 时间矩阵（分钟）
            cost: 方式 -> 费用矩阵
            distance: 距离矩阵（公里）

        Returns:
            SkimMatrixSet: 只读矩阵集
        """
        if set(time) != set(cost):
            raise ScenarioError(f"time and cost matrices cover different modes: {sorted(time)} vs {sorted(cost)}")
        checked = {}
        for kind, matrices in (("time", time), ("cost", cost)):
            checked[kind] = {mode: _check(f"{kind}[{mode}]", matrix, size) for mode, matrix in matrices.items()}
        return cls(
            modes=tuple(time),
            time=MappingProxyType(checked["time"]),
            cost=MappingProxyType(checked["cost"]),
            distance=_check("distance", distance, size),
        )


def _check(name: str, matrix: np.ndarray, size: int) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.shape != (size, size):
        raise ScenarioError(f"{name} matrix has shape {matrix.shape}, expected ({size}, {size})")
    if np.isnan(matrix).any():
        raise ScenarioError(f"{name} matrix has missing entries")
    if (matrix < 0).any():
        raise ScenarioError(f"{name} matrix has negative entries")
    return freeze(matrix)
