# 出行记录与出行文件

from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

from common.exceptions import ScenarioError
from common.utils import read_table, write_table

TRIP_COLUMNS = ["person_id", "household_id", "origin", "destination", "mode", "purpose",
                "depart_min", "arrive_min", "distance_km"]


@dataclass(frozen=True)
class TripRecord:
    """
    出行文件的一行
    """
    person_id: int
    household_id: int
    origin: str
    destination: str
    mode: str
    purpose: str
    depart_min: int
    arrive_min: int
    distance_km: float

    def __post_init__(self):
        if self.arrive_min < self.depart_min:
            raise ValueError(f"trip of person {self.person_id} arrives before it departs")


def sort_trips(trips: Iterable[TripRecord]) -> List[TripRecord]:
    return sorted(trips, key=lambda t: (t.depart_min, t.person_id))


def trips_frame(trips: Iterable[TripRecord]) -> pd.DataFrame:
    return pd.DataFrame([asdict(t) for t in sort_trips(trips)], columns=TRIP_COLUMNS)


def write_trips(trips: Iterable[TripRecord], path: str, metadata: Optional[Dict[str, Any]] = None) -> str:
    """
    写出行文件，按 (depart_min, person_id) 排序
    """
    return write_table(trips_frame(trips), path, metadata)


def read_trips(path: str) -> pd.DataFrame:
    """
    读取出行文件

    Returns:
        pd.DataFrame: 出行表，小区ID为字符串
    """
    frame = read_table(path, TRIP_COLUMNS, dtype={"origin": str, "destination": str, "mode": str, "purpose": str})
    if (frame["arrive_min"] < frame["depart_min"]).any():
        raise ScenarioError("trip arrives before it departs", path)
    return frame[TRIP_COLUMNS]
