# 工作地与学校分配（排序匹配）

from collections import defaultdict
from loguru import logger
from typing import Dict, List, Sequence

import numpy as np

from common.activity import EDUCATION, WORK
from common.exceptions import InfeasibleError, ScenarioError


def expand_slots(row: np.ndarray, persons: int) -> np.ndarray:
    """
    将通勤矩阵的一行归一化为 persons 个名额，最大余数法取整

    Args:
        row: 非负权重
        persons: 需要分配的人数

    Returns:
        np.ndarray: 各目的小区的整数名额，合计恰为 persons
    """
    row = np.asarray(row, dtype=np.float64)
    total = row.sum()
    if persons == 0:
        return np.zeros(len(row), dtype=np.int64)
    if total <= 0:
        raise InfeasibleError("commuting matrix row is all zero")
    quotas = row * persons / total
    slots = np.floor(quotas).astype(np.int64)
    remainder = persons - int(slots.sum())
    if remainder > 0:
        # 余数相同时下标小者优先
        order = np.argsort(-(quotas - slots), kind="stable")
        slots[order[:remainder]] += 1
    return slots


def rank_match(commute_km: Sequence[float], person_ids: Sequence[int], slot_distances: Sequence[float],
               slot_zones: Sequence[int]) -> Dict[int, int]:
    """
    第 k 个通勤距离最短的人分配第 k 个最近的名额

    Args:
        commute_km: 报告的通勤距离
        person_ids: 人员ID（距离相同按ID排序）
        slot_distances: 各名额到居住小区的距离
        slot_zones: 各名额所在小区下标（距离相同按下标排序）

    Returns:
        Dict[int, int]: 人员ID -> 小区下标
    """
    persons = sorted(zip(commute_km, person_ids))
    slots = sorted(zip(slot_distances, slot_zones))
    return {person_id: zone for (_, person_id), (_, zone) in zip(persons, slots)}


def assign_fixed_places(world, population, commuting, kind: str) -> Dict[int, str]:
    """
    为有工作（或上学）活动的人员分配工作地（或学校）

    对每个居住小区：通勤矩阵行归一化为该小区相关人数，名额按与居住小区的道路距离排序，
    人员按报告的通勤距离排序，逐一配对。

    Args:
        world: 场景
        population: 合成人口
        commuting: 通勤矩阵
        kind: work 或 education

    Returns:
        Dict[int, str]: 人员ID -> 小区ID
    """
    if kind not in (WORK, EDUCATION):
        raise ValueError(f"unknown fixed place kind '{kind}'")
    if commuting is None:
        if any(person.needs_place(kind) for person in population.persons()):
            raise ScenarioError(f"persons need a {kind} place but the scenario has no {kind} commuting matrix")
        return {}
    if commuting.kind != kind:
        raise ValueError(f"commuting matrix kind '{commuting.kind}' does not match '{kind}'")

    by_zone: Dict[str, List] = defaultdict(list)
    for person in population.persons():
        if person.needs_place(kind):
            by_zone[person.home_zone].append(person)

    zone_ids = world.zone_ids
    assignments: Dict[int, str] = {}
    for home_zone in sorted(by_zone, key=world.index_of):
        persons = by_zone[home_zone]
        i = world.index_of(home_zone)
        try:
            slots = expand_slots(commuting.counts[i], len(persons))
        except InfeasibleError:
            raise InfeasibleError(
                f"zone {home_zone} has {len(persons)} persons needing a {kind} place but an all-zero commuting row"
            ) from None
        slot_zones = np.repeat(np.arange(len(slots)), slots)
        matched = rank_match(
            [p.commute_km for p in persons],
            [p.id for p in persons],
            world.skims.distance[i, slot_zones],
            slot_zones,
        )
        assignments.update({person_id: zone_ids[j] for person_id, j in matched.items()})
    logger.info(f"Assigned {len(assignments)} {kind} places")
    return assignments
