# 离散分布与抽样

from dataclasses import dataclass
from typing import Any, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class ChoiceDistribution:
    """
    选择集合上的离散概率分布
    """
    alternatives: Tuple[Any, ...]
    probabilities: np.ndarray

    def __post_init__(self):
        probabilities = np.asarray(self.probabilities, dtype=np.float64)
        if probabilities.shape != (len(self.alternatives),) or len(self.alternatives) == 0:
            raise ValueError("distribution needs one probability per alternative")
        if (probabilities < 0).any() or not np.isfinite(probabilities).all() or probabilities.sum() <= 0:
            raise ValueError(f"invalid probabilities {probabilities}")
        probabilities.setflags(write=False)
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "probabilities", probabilities)

    def probability(self, alternative: Any) -> float:
        try:
            return float(self.probabilities[self.alternatives.index(alternative)])
        except ValueError:
            return 0.0


def make_distribution(alternatives: Sequence[Any], probabilities) -> ChoiceDistribution:
    return ChoiceDistribution(tuple(alternatives), np.asarray(probabilities, dtype=np.float64))


def sample(distribution: ChoiceDistribution, rng: np.random.Generator) -> Any:
    """
    逆累积分布抽样：每次抽样恰好消耗一个均匀随机数

    Args:
        distribution: 离散分布
        rng: 随机数生成器

    Returns:
        Any: 抽中的选项
    """
    cdf = np.cumsum(distribution.probabilities)
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    u = rng.random()
    index = int(np.searchsorted(cdf, u, side="right"))
    return distribution.alternatives[min(index, len(cdf) - 1)]
