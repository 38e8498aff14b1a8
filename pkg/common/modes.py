# 交通方式定义

from enum import Enum
from typing import FrozenSet


class Mode(str, Enum):
    """
    交通方式，顺序即选择集合的固定排列顺序
    """
    WALKING = "walking"
    CYCLING = "cycling"
    PUBLIC_TRANSPORT = "public_transport"
    CAR_DRIVER = "car_driver"
    CAR_PASSENGER = "car_passenger"
    CARSHARING_STATION = "carsharing_station"
    CARSHARING_FREEFLOAT = "carsharing_freefloat"

    def __str__(self) -> str:
        return self.value


MODE_ORDER = tuple(Mode)
BASE_MODES: FrozenSet[Mode] = frozenset({
    Mode.WALKING, Mode.CYCLING, Mode.PUBLIC_TRANSPORT, Mode.CAR_DRIVER, Mode.CAR_PASSENGER,
})
CARSHARING_MODES: FrozenSet[Mode] = frozenset({Mode.CARSHARING_STATION, Mode.CARSHARING_FREEFLOAT})
# 离家后锁定的方式：车辆随人移动
LOCKING_MODES: FrozenSet[Mode] = frozenset({Mode.CAR_DRIVER, Mode.CYCLING, Mode.CARSHARING_STATION})


def ordered(modes) -> tuple:
    """
    按固定顺序排列方式集合
    """
    members = set(modes)
    return tuple(mode for mode in MODE_ORDER if mode in members)
