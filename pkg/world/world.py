# 静态场景

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from common.exceptions import ScenarioError
from world.skims import SkimMatrixSet, Travel, freeze
from world.zone import Zone

COMMUTING_KINDS = ("work", "education")


@dataclass(frozen=True)
class CommutingMatrix:
    """
    通勤矩阵：居住小区 -> 工作/学习小区的权重
    """
    kind: str
    counts: np.ndarray

    def __post_init__(self):
        if self.kind not in COMMUTING_KINDS:
            raise ScenarioError(f"unknown commuting matrix kind '{self.kind}'")
        counts = np.asarray(self.counts, dtype=np.float64)
        if (counts < 0).any():
            raise ScenarioError(f"{self.kind} commuting matrix has negative entries")
        object.__setattr__(self, "counts", freeze(counts))


class World:
    """
    加载后不可变的静态场景：小区、阻抗矩阵、通勤矩阵和汽车共享车队
    """

    def __init__(self, zones: Iterable[Zone], skims: SkimMatrixSet,
                 commuting: Mapping[str, CommutingMatrix] = None,
                 freefloating_fleet: Mapping[str, int] = None):
        """
        初始化场景

        Args:
            zones: 小区，下标须为 0..n-1 且与矩阵一致
            skims: 阻抗矩阵集
            commuting: 通勤矩阵，按类型
            freefloating_fleet: 各小区初始自由流动共享汽车数量
        """
        self._zones: Tuple[Zone, ...] = tuple(sorted(zones, key=lambda z: z.index))
        index: Dict[str, int] = {}
        for position, zone in enumerate(self._zones):
            if zone.id in index:
                raise ScenarioError(f"duplicate zone id '{zone.id}'")
            if zone.index != position:
                raise ScenarioError(f"zone '{zone.id}' has non-contiguous index {zone.index}")
            if any(value < 0 for value in zone.attractivity.values()):
                raise ScenarioError(f"zone '{zone.id}' has negative attractivity")
            if zone.carsharing_station_count < 0:
                raise ScenarioError(f"zone '{zone.id}' has negative station count")
            index[zone.id] = position
        self._index = MappingProxyType(index)
        size = len(self._zones)
        if skims.distance.shape != (size, size):
            raise ScenarioError(f"skim matrices have dimension {skims.distance.shape[0]}, expected {size} zones")
        self.skims = skims
        commuting = dict(commuting or {})
        for kind, matrix in commuting.items():
            if matrix.counts.shape != (size, size):
                raise ScenarioError(f"{kind} commuting matrix has shape {matrix.counts.shape}, expected ({size}, {size})")
        self.commuting: Mapping[str, CommutingMatrix] = MappingProxyType(commuting)
        fleet = {zone_id: int(count) for zone_id, count in (freefloating_fleet or {}).items()}
        for zone_id, count in fleet.items():
            self.index_of(zone_id)
            if count < 0:
                raise ScenarioError(f"negative free-floating fleet in zone '{zone_id}'")
        self.freefloating_fleet: Mapping[str, int] = MappingProxyType(fleet)
        purposes = sorted({purpose for zone in self._zones for purpose in zone.attractivity})
        self._attractivity = MappingProxyType({
            purpose: freeze([zone.attractivity_for(purpose) for zone in self._zones]) for purpose in purposes
        })

    @property
    def zones(self) -> Tuple[Zone, ...]:
        return self._zones

    @property
    def zone_ids(self) -> Tuple[str, ...]:
        return tuple(zone.id for zone in self._zones)

    @property
    def modes(self) -> Tuple[str, ...]:
        return self.skims.modes

    def __len__(self) -> int:
        return len(self._zones)

    def index_of(self, zone_id: str) -> int:
        try:
            return self._index[zone_id]
        except KeyError:
            raise ScenarioError(f"unknown zone '{zone_id}'") from None

    def zone(self, zone_id: str) -> Zone:
        return self._zones[self.index_of(zone_id)]

    def attractivities(self, purpose: str) -> np.ndarray:
        """
        各小区对某活动目的的吸引量向量，缺省为 0
        """
        vector = self._attractivity.get(purpose)
        if vector is None:
            vector = freeze(np.zeros(len(self._zones)))
        return vector

    def has_mode(self, mode: str) -> bool:
        return mode in self.skims.time

    def travel(self, mode: str, origin: str, destination: str) -> Travel:
        """
        查询一次出行的时间、费用与距离

        Args:
            mode: 交通方式标识
            origin: 出发小区
            destination: 到达小区

        Returns:
            Travel: (时间[分钟], 费用, 距离[公里])
        """
        mode_id = getattr(mode, "value", mode)
        if mode_id not in self.skims.time:
            raise ScenarioError(f"unknown mode '{mode_id}'")
        i = self.index_of(origin)
        j = self.index_of(destination)
        return Travel(
            time=float(self.skims.time[mode_id][i, j]),
            cost=float(self.skims.cost[mode_id][i, j]),
            distance=float(self.skims.distance[i, j]),
        )

    def distance(self, origin: str, destination: str) -> float:
        return float(self.skims.distance[self.index_of(origin), self.index_of(destination)])
