# 汽车共享扩展

from dataclasses import dataclass
from loguru import logger
from typing import Dict, FrozenSet, Mapping, NamedTuple, Optional

from common.exceptions import SimulationError
from common.modes import Mode


class ModeSetDelta(NamedTuple):
    """
    汽车共享规则对方式集合的修改：add 为新增方式，lock 不为空时选择集合只能是它
    """
    add: FrozenSet[Mode]
    lock: Optional[FrozenSet[Mode]] = None


@dataclass(frozen=True)
class CarsharingRules:
    """
    汽车共享的空间规则：各小区站点数、自由流动运营区和初始车队
    """
    station_counts: Mapping[str, int]
    operating_area: FrozenSet[str]
    fleet: Mapping[str, int]

    @classmethod
    def from_world(cls, world) -> "CarsharingRules":
        return cls(
            station_counts={zone.id: zone.carsharing_station_count for zone in world.zones},
            operating_area=frozenset(zone.id for zone in world.zones if zone.in_freefloating_area),
            fleet=dict(world.freefloating_fleet),
        )

    def has_station(self, zone_id: str) -> bool:
        return self.station_counts.get(zone_id, 0) > 0

    def in_area(self, zone_id: str) -> bool:
        return zone_id in self.operating_area


def carsharing_availability(context) -> ModeSetDelta:
    """
    依据汽车共享规则计算方式集合的修改

    站点式共享仅在家且居住小区有站点时可用（用过之后由锁定规则保留）；
    自由流动共享在运营区内且当前小区有空闲车辆时可用；
    持车停在运营区外的用户只能继续使用自由流动共享。

    Args:
        context: ChoiceContext，context.carsharing 为空表示扩展未启用

    Returns:
        ModeSetDelta: 方式集合的修改
    """
    snapshot = context.carsharing
    if snapshot is None:
        return ModeSetDelta(frozenset())
    if snapshot.holding_freefloat and not snapshot.in_operating_area:
        return ModeSetDelta(frozenset(), frozenset({Mode.CARSHARING_FREEFLOAT}))
    if not snapshot.customer or not context.person.has_license:
        return ModeSetDelta(frozenset())
    add = set()
    if context.at_home and snapshot.home_stations > 0:
        add.add(Mode.CARSHARING_STATION)
    if snapshot.in_operating_area and (snapshot.fleet_available or snapshot.holding_freefloat):
        add.add(Mode.CARSHARING_FREEFLOAT)
    return ModeSetDelta(frozenset(add))


class FreefloatFleet:
    """
    自由流动车队状态：各小区空闲车辆数，由模拟循环单线程修改
    """

    def __init__(self, rules: CarsharingRules):
        self.rules = rules
        self._available: Dict[str, int] = {zone_id: int(count) for zone_id, count in rules.fleet.items()}
        self.total = sum(self._available.values())
        self.pickups = 0
        self.dropoffs = 0

    def available(self, zone_id: str) -> int:
        return self._available.get(zone_id, 0)

    @property
    def in_use(self) -> int:
        return self.pickups - self.dropoffs

    def pickup(self, zone_id: str) -> None:
        if self.available(zone_id) <= 0:
            raise SimulationError(f"no free-floating car available in zone {zone_id}")
        self._available[zone_id] -= 1
        self.pickups += 1

    def dropoff(self, zone_id: str) -> None:
        if not self.rules.in_area(zone_id):
            raise SimulationError(f"free-floating car dropped outside the operating area in zone {zone_id}")
        self._available[zone_id] = self.available(zone_id) + 1
        self.dropoffs += 1

    def check(self) -> None:
        """
        车队守恒：空闲 + 在用 = 总量，且各小区不为负
        """
        parked = sum(self._available.values())
        if any(count < 0 for count in self._available.values()) or parked + self.in_use != self.total:
            raise SimulationError(f"free-floating fleet not conserved: parked {parked}, in use {self.in_use}, "
                                  f"total {self.total}")

    def summary(self) -> None:
        logger.info(f"Free-floating carsharing: {self.pickups} pickups, {self.dropoffs} dropoffs")
