# 个体状态

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any, Deque, Optional

import numpy as np

from common.activity import Activity, HOME
from common.modes import Mode


class Phase(str, Enum):
    """
    个体状态机的状态
    """
    UNINITIALIZED = "uninitialized"
    ACTIVITY = "activity"
    TRIP = "trip"
    WAIT = "wait"
    FINISHED = "finished"


# 待处理事件
END_ACTIVITY = "end_activity"
DECIDE_EARLY = "decide_early"
DECIDE_PINNED = "decide_pinned"
DEPART = "depart"
ARRIVE = "arrive"
WAIT_CHECK = "wait_check"


@dataclass
class PendingTrip:
    """
    已决定、尚未出发的出行
    """
    activity: Activity
    destination: str
    mode: Mode
    depart_at: int
    decided_at: int
    travel_minutes: int = 1
    ride: Any = None
    pinned: bool = False


@dataclass
class TripInProgress:
    activity: Activity
    origin: str
    destination: str
    mode: Mode
    depart_min: int
    arrive_min: int
    distance_km: float


@dataclass
class Agent:
    """
    模拟中的个体：人员、随机数流、剩余活动计划与运行状态
    """
    person: Any
    household_id: int
    rng: np.random.Generator
    remaining: Deque[Activity]
    phase: Phase = Phase.UNINITIALIZED
    current: Optional[Activity] = None
    started_at: int = 0
    ends_at: int = 0
    current_zone: str = ""
    previous_mode: Optional[Mode] = None
    car_id: Optional[int] = None
    holding_freefloat: bool = False
    pending: Optional[PendingTrip] = None
    trip: Optional[TripInProgress] = None
    wait_until: int = 0
    next_event: Optional[str] = None
    version: int = 0

    @property
    def id(self) -> int:
        return self.person.id

    @property
    def at_home(self) -> bool:
        # 计划开始前视为在家
        return self.current is None or self.current.purpose == HOME

    @classmethod
    def create(cls, person, rng: np.random.Generator) -> "Agent":
        return cls(
            person=person,
            household_id=person.household_id,
            rng=rng,
            remaining=deque(person.program),
            current_zone=person.home_zone,
        )
