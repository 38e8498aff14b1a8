# 交通小区

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional


@dataclass(frozen=True)
class Zone:
    """
    交通小区

    Attributes:
        id: 小区标识
        index: 矩阵中的连续下标
        attractivity: 活动目的 -> 机会量 A_{j,purpose}
        in_freefloating_area: 是否位于自由流动汽车共享运营区
        carsharing_station_count: 汽车共享站点数量
        district: 行政区，缺省为参照区
    """
    id: str
    index: int
    attractivity: Mapping[str, float] = field(default_factory=dict)
    in_freefloating_area: bool = False
    carsharing_station_count: int = 0
    district: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "attractivity", MappingProxyType(dict(self.attractivity)))

    def attractivity_for(self, purpose: str) -> float:
        return self.attractivity.get(purpose, 0.0)
