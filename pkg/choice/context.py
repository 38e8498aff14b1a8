# 选择情境

from dataclasses import dataclass
from typing import FrozenSet, Optional

from common.activity import Activity, day_type
from common.modes import Mode
from population.model import Person

STUDENT_LEVELS = frozenset({"student_primary", "student_secondary", "student_tertiary"})


def mode_choice_employment(employment: str) -> str:
    """
    方式选择模型的就业类别：各级学生合并为 student
    """
    return "student" if employment in STUDENT_LEVELS else employment


def destination_time_employment(employment: str) -> str:
    """
    目的地选择 time×employment 的就业类别：学生合并，婴幼儿归入 other
    """
    if employment in STUDENT_LEVELS:
        return "student"
    if employment == "infant":
        return "other"
    return employment


def scaling_employment(employment: str) -> str:
    return "other" if employment == "infant" else employment


@dataclass(frozen=True)
class CarsharingSnapshot:
    """
    汽车共享相关的情境快照

    Attributes:
        customer: 是否为汽车共享会员
        home_stations: 居住小区的站点数量
        in_operating_area: 当前小区是否位于自由流动运营区
        fleet_available: 当前小区是否有空闲的自由流动车辆
        holding_freefloat: 是否正持有一辆自由流动车辆
    """
    customer: bool = False
    home_stations: int = 0
    in_operating_area: bool = False
    fleet_available: bool = False
    holding_freefloat: bool = False


@dataclass(frozen=True)
class ChoiceContext:
    """
    一次目的地或方式决策读取的全部信息
    """
    person: Person
    current_zone: str
    at_home: bool
    clock: int
    next_activity: Activity
    next_fixed_zone: str
    previous_mode: Optional[Mode] = None
    free_cars: int = 0
    has_transit_pass: bool = False
    carsharing: Optional[CarsharingSnapshot] = None
    excluded_modes: FrozenSet[str] = frozenset()

    @property
    def day_type(self) -> str:
        return day_type(self.clock)

    @property
    def purpose(self) -> str:
        return self.next_activity.purpose
