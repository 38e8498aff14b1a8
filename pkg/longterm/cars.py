# 车辆拥有

from dataclasses import dataclass
from typing import List

import numpy as np

MIDSIZE = "midsize"
COMBUSTION = "combustion"
ELECTRIC = "electric"


@dataclass(frozen=True)
class Car:
    household_id: int
    car_id: int
    segment: str = MIDSIZE
    engine: str = COMBUSTION


def assign_cars(household, rng: np.random.Generator, electric_share: float = 0.0) -> List[Car]:
    """
    为家庭分配 n_cars 辆中型车，每辆独立地以 electric_share 的概率为电动车

    Args:
        household: 合成家庭
        rng: 随机数流
        electric_share: 电动车比例

    Returns:
        List[Car]: 家庭车辆
    """
    if not 0.0 <= electric_share <= 1.0:
        raise ValueError("electric_share must lie in [0, 1]")
    draws = rng.random(household.n_cars)
    return [
        Car(household.id, k, MIDSIZE, ELECTRIC if draw < electric_share else COMBUSTION)
        for k, draw in enumerate(draws)
    ]
