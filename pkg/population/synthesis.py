# 人口合成：按小区拟合权重并抽取原型家庭

from concurrent.futures import ThreadPoolExecutor
from loguru import logger
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from common.exceptions import InfeasibleError, ScenarioError
from common.utils import derive_rng
from population.ipf import WeightedSurvey, ipf_fit
from population.model import Household, Person, Population, SurveyHousehold, ZoneMarginals


def household_targets(marginals: ZoneMarginals, sample_fraction: float = 1.0) -> Dict[str, int]:
    """
    每个家庭类型要抽取的户数：按抽样比例缩放后四舍五入
    """
    return {
        household_type: int(np.floor(target * sample_fraction + 0.5))
        for household_type, target in marginals.household_types.items()
    }


def draw_prototypes(weighted: WeightedSurvey, marginals: ZoneMarginals, rng: np.random.Generator,
                    sample_fraction: float = 1.0) -> List[SurveyHousehold]:
    """
    按家庭类型、依权重有放回地抽取原型家庭

    Args:
        weighted: 拟合后的样本
        marginals: 小区边际分布
        rng: 该小区的随机数流
        sample_fraction: 抽样比例

    Returns:
        List[SurveyHousehold]: 抽中的原型，按家庭类型分组排列
    """
    drawn = []
    for household_type, count in household_targets(marginals, sample_fraction).items():
        if count == 0:
            continue
        candidates, weights = weighted.of_type(household_type)
        if not candidates:
            raise InfeasibleError(f"zone {marginals.zone_id}: no survey household of type '{household_type}'")
        picks = rng.choice(len(candidates), size=count, replace=True, p=weights / weights.sum())
        drawn.extend(candidates[i] for i in picks)
    return drawn


def clone_households(prototypes: Sequence[SurveyHousehold], home_zone: str,
                     next_household_id: int = 1, next_person_id: int = 1) -> List[Household]:
    """
    复制原型家庭，分配连续的家庭和人员ID
    """
    households = []
    for prototype in prototypes:
        household_id = next_household_id
        next_household_id += 1
        members = []
        for member in prototype.members:
            members.append(Person.clone(member, next_person_id, household_id, home_zone))
            next_person_id += 1
        households.append(Household(
            id=household_id,
            home_zone=home_zone,
            prototype_id=prototype.id,
            household_type=prototype.household_type,
            n_cars=prototype.n_cars,
            members=tuple(members),
        ))
    return households


def draw_population(weighted: WeightedSurvey, marginals: ZoneMarginals, rng: np.random.Generator,
                    sample_fraction: float = 1.0, next_household_id: int = 1,
                    next_person_id: int = 1) -> List[Household]:
    """
    为一个小区生成家庭：每个家庭类型恰好抽取目标户数，居住小区为该小区

    Args:
        weighted: 拟合后的样本
        marginals: 小区边际分布
        rng: 随机数流
        sample_fraction: 抽样比例
        next_household_id: 第一个家庭ID
        next_person_id: 第一个人员ID

    Returns:
        List[Household]: 合成家庭
    """
    prototypes = draw_prototypes(weighted, marginals, rng, sample_fraction)
    return clone_households(prototypes, marginals.zone_id, next_household_id, next_person_id)


def synthesize_population(survey: Sequence[SurveyHousehold], marginals: Mapping[str, ZoneMarginals],
                          zone_ids: Sequence[str], seed: int, tolerance: float = 1.0e-4,
                          max_iterations: int = 1000, sample_fraction: float = 1.0,
                          jobs: int = 1) -> Population:
    """
    两阶段人口合成

    各小区使用由主种子和小区下标派生的独立随机数流，并行与串行结果一致；
    ID 在所有小区完成后按小区顺序统一分配。

    Args:
        survey: 原型家庭
        marginals: 小区ID -> 边际分布
        zone_ids: 场景的小区顺序
        seed: 人口合成种子
        tolerance: IPF 收敛阈值
        max_iterations: IPF 最大迭代轮数
        sample_fraction: 抽样比例
        jobs: 并行线程数

    Returns:
        Population: 合成人口
    """
    unknown = sorted(set(marginals) - set(zone_ids))
    if unknown:
        raise ScenarioError(f"marginals reference unknown zones {unknown}")
    zones = [(index, zone_id) for index, zone_id in enumerate(zone_ids) if zone_id in marginals]

    def synthesize_zone(item: Tuple[int, str]) -> List[SurveyHousehold]:
        index, zone_id = item
        zone_marginals = marginals[zone_id]
        if not any(household_targets(zone_marginals, sample_fraction).values()):
            return []
        result = ipf_fit(survey, zone_marginals, tolerance, max_iterations)
        return draw_prototypes(result.survey, zone_marginals, derive_rng(seed, index), sample_fraction)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            drawn = list(executor.map(synthesize_zone, zones))
    else:
        drawn = [synthesize_zone(item) for item in zones]

    households: List[Household] = []
    next_person_id = 1
    for (_, zone_id), prototypes in zip(zones, drawn):
        created = clone_households(prototypes, zone_id, len(households) + 1, next_person_id)
        next_person_id += sum(h.size for h in created)
        households.extend(created)
    population = Population(households)
    logger.info(f"Synthesized {len(population)} households with {population.person_count()} persons "
                f"in {len(zones)} zones")
    return population
