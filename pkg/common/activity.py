# 活动与周历定义

from dataclasses import dataclass
from typing import Sequence, Tuple

from common.exceptions import ScenarioError

MINUTES_PER_HOUR = 60
MINUTES_PER_DAY = 24 * MINUTES_PER_HOUR
DAYS_PER_WEEK = 7
MINUTES_PER_WEEK = DAYS_PER_WEEK * MINUTES_PER_DAY

DAY_NAMES: Tuple[str, ...] = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")

# 活动目的
HOME = "home"
WORK = "work"
EDUCATION = "education"
FIXED_PURPOSES = frozenset({HOME, WORK, EDUCATION})
FLEXIBLE_PURPOSES: Tuple[str, ...] = (
    "business",
    "service",
    "private_business",
    "private_visit",
    "shopping_daily",
    "shopping_other",
    "leisure_indoor",
    "leisure_outdoor",
    "leisure_other",
    "strolling",
    "other",
)
ALL_PURPOSES: Tuple[str, ...] = (HOME, WORK, EDUCATION) + FLEXIBLE_PURPOSES


def day_of(minute: int) -> int:
    """
    返回一周内的分钟对应的日序号（0=周一）
    """
    return minute // MINUTES_PER_DAY


def day_type(minute: int) -> str:
    """
    方式选择模型使用的日类型：工作日、周六、周日
    """
    day = day_of(minute)
    if day == 5:
        return "saturday"
    if day >= 6:
        return "sunday"
    return "workday"


def end_of_day(day: int) -> int:
    return (day + 1) * MINUTES_PER_DAY


@dataclass(frozen=True)
class Activity:
    """
    活动：目的、计划开始时间（周内分钟）、持续时间（分钟）
    """
    purpose: str
    planned_start: int
    duration: int

    @property
    def fixed_location(self) -> bool:
        return self.purpose in FIXED_PURPOSES

    @property
    def planned_end(self) -> int:
        return self.planned_start + self.duration

    @property
    def day(self) -> int:
        return day_of(self.planned_start)


def validate_program(activities: Sequence[Activity], owner: str = "", path: str = None) -> Tuple[Activity, ...]:
    """
    校验一周的活动计划

    Args:
        activities: 按开始时间排列的活动
        owner: 计划所属人员，用于错误信息
        path: 来源文件，用于错误信息

    Returns:
        Tuple[Activity, ...]: 校验后的不可变活动序列
    """
    if not activities:
        raise ScenarioError(f"empty activity program for person {owner}", path)
    previous_end = 0
    for index, activity in enumerate(activities):
        if activity.purpose not in ALL_PURPOSES:
            raise ScenarioError(f"unknown purpose '{activity.purpose}' for person {owner}", path)
        if not 0 <= activity.planned_start < MINUTES_PER_WEEK:
            raise ScenarioError(f"activity {index} of person {owner} starts outside the week", path)
        if activity.duration < 1:
            raise ScenarioError(f"activity {index} of person {owner} has duration < 1", path)
        if activity.planned_start < previous_end:
            raise ScenarioError(f"activity {index} of person {owner} overlaps its predecessor", path)
        previous_end = activity.planned_end
    first = activities[0]
    if first.purpose != HOME and first.planned_start == 0:
        # 无法在周一00:00之前出发
        raise ScenarioError(f"program of person {owner} starts mid-trip at minute 0", path)
    return tuple(activities)
