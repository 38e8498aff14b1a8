# 目的地选择模型

import numpy as np
from scipy.special import softmax

from choice.context import ChoiceContext, destination_time_employment, scaling_employment
from choice.params import DestinationChoiceParams
from choice.sampling import ChoiceDistribution


def destination_utilities(context: ChoiceContext, world, params: DestinationChoiceParams,
                          skim_mode: str = "car_driver") -> np.ndarray:
    """
    所有候选小区 j 的效用（向量化）

    V_ij = (β_time×purpose + β_time×employment)(t_ij + t_jn) + β_cost×purpose(c_ij + c_jn)
           + β_opportunities×purpose · log(1 + A_j)，n 为下一个固定地点所在小区

    Args:
        context: 选择情境
        world: 场景
        params: 目的地选择参数
        skim_mode: 提供 t 和 c 的方式矩阵

    Returns:
        np.ndarray: 按小区下标排列的效用
    """
    purpose = context.purpose
    if context.next_activity.fixed_location:
        raise ValueError(f"purpose '{purpose}' has a fixed location, no destination choice is made")
    i = world.index_of(context.current_zone)
    n = world.index_of(context.next_fixed_zone)
    time = world.skims.time[skim_mode]
    cost = world.skims.cost[skim_mode]
    t = time[i, :] + time[:, n]
    c = cost[i, :] + cost[:, n]
    beta_time = params.time(purpose) + params.time_employment(destination_time_employment(context.person.employment))
    return (beta_time * t
            + params.cost(purpose) * c
            + params.opportunities(purpose) * np.log1p(world.attractivities(purpose)))


def destination_utility(zone_id: str, context: ChoiceContext, world, params: DestinationChoiceParams,
                        skim_mode: str = "car_driver") -> float:
    return float(destination_utilities(context, world, params, skim_mode)[world.index_of(zone_id)])


def destination_probabilities(context: ChoiceContext, world, params: DestinationChoiceParams,
                              skim_mode: str = "car_driver") -> ChoiceDistribution:
    """
    P_ij ∝ exp(γ_purpose · γ_employment · V_ij)，候选集合为全部小区（含当前小区）

    Returns:
        ChoiceDistribution: 小区ID上的分布
    """
    utilities = destination_utilities(context, world, params, skim_mode)
    gamma = params.gamma(context.purpose, scaling_employment(context.person.employment))
    return ChoiceDistribution(world.zone_ids, softmax(gamma * utilities))
