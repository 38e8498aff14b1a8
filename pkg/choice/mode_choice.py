# 方式选择模型

from typing import Tuple

import numpy as np
from scipy.special import softmax

from common.modes import Mode
from choice.availability import available_modes
from choice.context import ChoiceContext, mode_choice_employment
from choice.params import ModeChoiceParams
from choice.sampling import ChoiceDistribution

MIN_DISTANCE_KM = 0.1
INTRAZONAL_DISTANCE_KM = 1.0


def mode_utility(mode: Mode, context: ChoiceContext, world, origin: str, destination: str,
                 params: ModeChoiceParams) -> float:
    """
    方式 m 的系统效用

    V_m = 常数 + 距离 + 每公里时间 + 每公里费用 + 小区内出行 + 个人属性 + 目的 + 日类型。
    每公里时间与费用除以 max(距离, 0.1 km)；距离小于 1 km 视为小区内出行。

    Args:
        mode: 方式
        context: 选择情境
        world: 场景
        origin: 出发小区
        destination: 到达小区
        params: 方式选择参数

    Returns:
        float: 效用
    """
    mode_id = Mode(mode).value
    travel = world.travel(mode_id, origin, destination)
    per_km = max(travel.distance, MIN_DISTANCE_KM)
    intrazonal = origin == destination or travel.distance < INTRAZONAL_DISTANCE_KM
    person = context.person

    utility = params.specific("asc", mode_id)
    utility += params.specific("distance", mode_id) * travel.distance
    utility += params.generic("time_per_km") * travel.time / per_km
    utility += params.generic("cost_per_km") * travel.cost / per_km
    if intrazonal:
        utility += params.specific("intrazonal", mode_id)
    if person.sex == "female":
        utility += params.specific("female", mode_id)
    if context.has_transit_pass:
        utility += params.specific("transit_pass", mode_id)
    if not person.has_license:
        utility += params.specific("no_license", mode_id)
    utility += params.specific("employment", mode_id, mode_choice_employment(person.employment))
    utility += params.specific("age", mode_id, person.age_group)
    utility += params.specific("purpose", mode_id, context.purpose)
    utility += params.specific("day", mode_id, context.day_type)
    return utility


def mode_probabilities(context: ChoiceContext, world, origin: str, destination: str,
                       params: ModeChoiceParams, modes: Tuple[Mode, ...] = None) -> ChoiceDistribution:
    """
    在可用方式上做 softmax

    Args:
        context: 选择情境
        world: 场景
        origin: 出发小区
        destination: 到达小区
        params: 方式选择参数
        modes: 选择集合，默认由 available_modes 给出

    Returns:
        ChoiceDistribution: 方式分布
    """
    modes = tuple(modes) if modes is not None else available_modes(context)
    utilities = np.array([mode_utility(m, context, world, origin, destination, params) for m in modes])
    return ChoiceDistribution(modes, softmax(utilities))
