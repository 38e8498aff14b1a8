# 出行文件统计分析

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from common.activity import DAY_NAMES, MINUTES_PER_DAY, MINUTES_PER_HOUR, MINUTES_PER_WEEK, day_of
from common.modes import MODE_ORDER

GROUPINGS = ("purpose", "day", "employment")
REPRESENTATIVE_WORKDAY = "tuesday"


@dataclass(frozen=True)
class OdMatrix:
    """
    某方式、某日、某小时出发的出行的OD矩阵
    """
    mode: str
    day: str
    hour: int
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _mode_columns(modes: Sequence[str]) -> List[str]:
    known = [mode.value for mode in MODE_ORDER]
    return [m for m in known if m in set(modes)] + sorted(set(modes) - set(known))


def _group_labels(trips: pd.DataFrame, by: str, employment: Optional[Mapping[int, str]]) -> pd.Series:
    if by == "purpose":
        return trips["purpose"].astype(str)
    if by == "day":
        return trips["depart_min"].map(lambda minute: DAY_NAMES[min(day_of(int(minute)), 6)])
    if by == "employment":
        if employment is None:
            raise ValueError("grouping by employment needs the persons' employment")
        labels = trips["person_id"].map(lambda pid: employment.get(int(pid)))
        if labels.isna().any():
            raise ValueError("trip file references persons without employment")
        return labels
    raise ValueError(f"unknown grouping '{by}', expected one of {GROUPINGS}")


def modal_split(trips: pd.DataFrame, by: str = "purpose",
                employment: Optional[Mapping[int, str]] = None) -> pd.DataFrame:
    """
    各分组内各方式的出行比例

    Args:
        trips: 出行表
        by: purpose、day 或 employment
        employment: 人员ID -> 就业状况，按 employment 分组时需要

    Returns:
        pd.DataFrame: 列为 group、trips 和各方式比例，每行比例之和为1；没有出行的分组不出现
    """
    labels = _group_labels(trips, by, employment)
    modes = _mode_columns(trips["mode"].unique())
    counts = pd.crosstab(labels.rename("group"), trips["mode"].rename("mode"))
    counts = counts.reindex(columns=modes, fill_value=0)
    if by == "day":
        counts = counts.reindex([d for d in DAY_NAMES if d in counts.index])
    totals = counts.sum(axis=1)
    shares = counts.div(totals, axis=0)
    shares.insert(0, "trips", totals)
    return shares.reset_index().rename_axis(columns=None)


def validate_bins(bins: Sequence[float]) -> np.ndarray:
    edges = np.asarray(bins, dtype=np.float64)
    if edges.ndim != 1 or len(edges) < 2 or (np.diff(edges) <= 0).any():
        raise ValueError("distance bin edges must be strictly increasing with at least two edges")
    return edges


def trip_length_distribution(trips: pd.DataFrame, bins: Sequence[float], by: str = "purpose",
                             employment: Optional[Mapping[int, str]] = None) -> pd.DataFrame:
    """
    按分组统计出行距离分布，区间左闭右开

    结果总含 group=all 的行，空出行表得到全零直方图。
    超出最外层区间的出行不计入。

    Args:
        trips: 出行表
        bins: 区间边界（公里），严格递增
        by: purpose 或 employment
        employment: 人员ID -> 就业状况

    Returns:
        pd.DataFrame: 列为 group, lower_km, upper_km, count
    """
    edges = validate_bins(bins)
    if by not in ("purpose", "employment"):
        raise ValueError(f"trip length distributions group by purpose or employment, not '{by}'")
    distance = trips["distance_km"].to_numpy(dtype=np.float64)
    labels = _group_labels(trips, by, employment) if len(trips) else pd.Series([], dtype=str)

    def histogram(values: np.ndarray) -> np.ndarray:
        slots = np.searchsorted(edges, values, side="right") - 1
        inside = (slots >= 0) & (slots < len(edges) - 1)
        return np.bincount(slots[inside], minlength=len(edges) - 1)

    frames = []
    groups = ["all"] + sorted(labels.unique())
    for group in groups:
        values = distance if group == "all" else distance[(labels == group).to_numpy()]
        frames.append(pd.DataFrame({
            "group": group,
            "lower_km": edges[:-1],
            "upper_km": edges[1:],
            "count": histogram(values),
        }))
    return pd.concat(frames, ignore_index=True)


def persons_en_route(trips: pd.DataFrame, horizon: int = MINUTES_PER_WEEK) -> np.ndarray:
    """
    每分钟在途人数：depart_min <= t < arrive_min 的出行数

    Args:
        trips: 出行表
        horizon: 统计的分钟数

    Returns:
        np.ndarray: 长度为 horizon 的计数
    """
    delta = np.zeros(horizon + 1, dtype=np.int64)
    depart = np.clip(trips["depart_min"].to_numpy(dtype=np.int64), 0, horizon)
    arrive = np.clip(trips["arrive_min"].to_numpy(dtype=np.int64), 0, horizon)
    np.add.at(delta, depart, 1)
    np.add.at(delta, arrive, -1)
    return np.cumsum(delta)[:horizon]


def en_route_frame(counts: np.ndarray) -> pd.DataFrame:
    minutes = np.arange(len(counts))
    return pd.DataFrame({
        "minute": minutes,
        "count": counts,
        "day": [DAY_NAMES[min(d, 6)] for d in minutes // MINUTES_PER_DAY],
    })


def en_route_by_day(counts: np.ndarray) -> pd.DataFrame:
    """
    按日叠加的在途人数：行为一天内的分钟，列为各日
    """
    days = len(counts) // MINUTES_PER_DAY
    table = np.asarray(counts[:days * MINUTES_PER_DAY]).reshape(days, MINUTES_PER_DAY).T
    frame = pd.DataFrame(table, columns=list(DAY_NAMES[:days]))
    frame.insert(0, "minute_of_day", np.arange(MINUTES_PER_DAY))
    return frame


def od_matrices(trips: pd.DataFrame, zone_ids: Sequence[str], day_types: bool = False) -> List[OdMatrix]:
    """
    按 (出发日, 出发小时, 方式) 汇总的OD矩阵，跨午夜的出行计入出发日

    Args:
        trips: 出行表
        zone_ids: 矩阵行列的小区顺序
        day_types: 为 True 时只输出 workday（以周二代表）、saturday、sunday

    Returns:
        List[OdMatrix]: 非空矩阵，按日、小时、方式排序
    """
    index: Dict[str, int] = {zone_id: k for k, zone_id in enumerate(zone_ids)}
    size = len(zone_ids)
    if len(trips) == 0:
        return []
    frame = pd.DataFrame({
        "day": trips["depart_min"].map(lambda minute: DAY_NAMES[min(day_of(int(minute)), 6)]),
        "hour": (trips["depart_min"].astype(np.int64) % MINUTES_PER_DAY) // MINUTES_PER_HOUR,
        "mode": trips["mode"].astype(str),
        "i": trips["origin"].astype(str).map(index),
        "j": trips["destination"].astype(str).map(index),
    })
    if frame[["i", "j"]].isna().any().any():
        raise ValueError("trip file references zones outside the scenario")
    if day_types:
        relabel = {REPRESENTATIVE_WORKDAY: "workday", "saturday": "saturday", "sunday": "sunday"}
        frame["day"] = frame["day"].map(relabel)
        frame = frame.dropna(subset=["day"])
        day_order = ["workday", "saturday", "sunday"]
    else:
        day_order = list(DAY_NAMES)
    mode_order = _mode_columns(frame["mode"].unique())

    matrices = []
    for (day, hour, mode), group in frame.groupby(["day", "hour", "mode"]):
        counts = np.zeros((size, size), dtype=np.int64)
        np.add.at(counts, (group["i"].to_numpy(dtype=np.int64), group["j"].to_numpy(dtype=np.int64)), 1)
        matrices.append(OdMatrix(mode=mode, day=day, hour=int(hour), counts=counts))
    matrices.sort(key=lambda m: (day_order.index(m.day), m.hour, mode_order.index(m.mode)))
    return matrices
