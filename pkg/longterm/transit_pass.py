# 公交月票模型（二项Logit）

from loguru import logger
from typing import Dict, Optional

import numpy as np
from scipy.special import expit

from choice.params import CoefficientTable
from common.exceptions import UnknownCategoryError

REFERENCE_DISTRICT = "S"

_EMPLOYMENT = {
    "fulltime": "fulltime",
    "parttime": "parttime",
    "unemployed": "unemployed",
    "homemaker": "homemaker",
    "retired": "retired",
    "vocational_education": "vocational_education",
    "student_primary": "fulltime",
    "infant": "fulltime",
    "student_secondary": "secondary_education",
    "student_tertiary": "tertiary_education",
    "other": "unknown",
}


def transit_pass_employment(employment: str) -> str:
    try:
        return _EMPLOYMENT[employment]
    except KeyError:
        raise UnknownCategoryError(f"transit pass model has no employment category for '{employment}'") from None


def transit_pass_utility(person, household, district: Optional[str], coefficients: CoefficientTable) -> float:
    """
    线性预测值：截距 + 女性 + 车辆数/家庭人数 + 用车情况 + 就业 + 行政区
    """
    utility = coefficients.value("intercept")
    if person.sex == "female":
        utility += coefficients.value("female")
    utility += coefficients.value("cars_per_size") * household.n_cars / household.size
    utility += coefficients.value("car_availability", person.car_availability)
    utility += coefficients.value("employment", transit_pass_employment(person.employment))
    utility += coefficients.value("district", district or REFERENCE_DISTRICT)
    return utility


def transit_pass_probability(person, household, district: Optional[str], coefficients: CoefficientTable) -> float:
    """
    拥有公交月票的概率

    Args:
        person: 人员
        household: 所在家庭
        district: 居住小区所在行政区，缺省为参照区
        coefficients: 月票模型系数

    Returns:
        float: 概率
    """
    return float(expit(transit_pass_utility(person, household, district, coefficients)))


def assign_transit_passes(world, population, coefficients: CoefficientTable,
                          rng: np.random.Generator) -> Dict[int, bool]:
    """
    按人员ID顺序对每个人做一次伯努利抽样

    Returns:
        Dict[int, bool]: 人员ID -> 是否持有月票
    """
    passes = {}
    for household in population.households:
        district = world.zone(household.home_zone).district
        for person in household.members:
            probability = transit_pass_probability(person, household, district, coefficients)
            passes[person.id] = bool(rng.random() < probability)
    logger.info(f"Transit passes: {sum(passes.values())} of {len(passes)} persons")
    return passes
