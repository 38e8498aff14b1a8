# 迭代比例拟合（家庭权重）

from dataclasses import dataclass
from loguru import logger
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from common.exceptions import InfeasibleError
from population.model import SurveyHousehold, ZoneMarginals


@dataclass(frozen=True)
class WeightedSurvey:
    """
    带权重的调查样本，仅由 ipf_fit 产生
    """
    households: Tuple[SurveyHousehold, ...]
    weights: np.ndarray

    def of_type(self, household_type: str) -> Tuple[List[SurveyHousehold], np.ndarray]:
        """
        返回某一家庭类型的原型家庭及其权重
        """
        positions = [i for i, h in enumerate(self.households) if h.household_type == household_type]
        return [self.households[i] for i in positions], self.weights[positions]


@dataclass(frozen=True)
class IpfResult:
    """
    拟合结果：未收敛时 converged 为 False，不抛异常
    """
    survey: WeightedSurvey
    converged: bool
    iterations: int
    max_deviation: float


@dataclass(frozen=True)
class _Constraint:
    name: str
    counts: np.ndarray
    target: float
    household_level: bool


def _constraints(survey: Sequence[SurveyHousehold], marginals: ZoneMarginals) -> List[_Constraint]:
    constraints = []
    types = np.array([h.household_type for h in survey])
    for household_type, target in marginals.household_types.items():
        counts = (types == household_type).astype(np.float64)
        constraints.append(_Constraint(f"hhtype:{household_type}", counts, float(target), True))
    for (attribute, category), target in marginals.person_totals.items():
        counts = np.array([h.count(attribute, category) for h in survey], dtype=np.float64)
        constraints.append(_Constraint(f"{attribute}:{category}", counts, float(target), False))

    active = []
    for constraint in constraints:
        support = constraint.counts.sum()
        if constraint.target > 0 and support == 0:
            raise InfeasibleError(
                f"zone {marginals.zone_id}: category {constraint.name} has target {constraint.target:g} "
                f"but no survey support"
            )
        if constraint.target <= 0:
            logger.debug(f"zone {marginals.zone_id}: category {constraint.name} has target 0, left out of the fit")
            continue
        active.append(constraint)
    return active


def _raking_factor(weights: np.ndarray, counts: np.ndarray, target: float) -> float:
    """
    求解 Σ w_h n_h x^n_h = target 中的 x
    """
    mask = counts > 0
    w, n = weights[mask], counts[mask]
    if np.all(n == 1):
        return target / w.sum()

    def excess(x: float) -> float:
        return float(np.sum(w * n * np.power(x, n))) - target

    upper = 1.0
    while excess(upper) < 0:
        upper *= 2.0
    return brentq(excess, 0.0, upper, xtol=1e-14, rtol=1e-15)


def _apply(weights: np.ndarray, constraint: _Constraint) -> np.ndarray:
    if constraint.household_level:
        mask = constraint.counts > 0
        weights = weights.copy()
        weights[mask] *= constraint.target / weights[mask].sum()
        return weights
    factor = _raking_factor(weights, constraint.counts, constraint.target)
    return weights * np.power(factor, constraint.counts)


def _max_deviation(weights: np.ndarray, constraints: Sequence[_Constraint]) -> float:
    if not constraints:
        return 0.0
    return max(abs(float(weights @ c.counts) - c.target) / c.target for c in constraints)


def ipf_fit(survey: Sequence[SurveyHousehold], marginals: ZoneMarginals,
            tolerance: float = 1.0e-4, max_iterations: int = 1000) -> IpfResult:
    """
    将调查家庭的权重拟合到小区边际分布

    家庭类型约束按 目标/当前合计 缩放该类型家庭；人员属性约束按家庭内该类别人数 n
    乘以 x^n，x 使加权人数等于目标。每轮依次施加全部约束，
    所有约束的最大相对偏差小于 tolerance 即收敛。

    Args:
        survey: 原型家庭
        marginals: 单个小区的边际分布
        tolerance: 相对偏差阈值
        max_iterations: 最大迭代轮数

    Returns:
        IpfResult: 拟合结果
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    households = tuple(survey)
    constraints = _constraints(households, marginals)
    weights = np.ones(len(households), dtype=np.float64)
    deviation = _max_deviation(weights, constraints)
    iterations = 0
    while deviation >= tolerance and iterations < max_iterations:
        for constraint in constraints:
            weights = _apply(weights, constraint)
        iterations += 1
        deviation = _max_deviation(weights, constraints)

    converged = deviation < tolerance
    if not converged:
        logger.warning(
            f"IPF for zone {marginals.zone_id} did not converge after {iterations} iterations "
            f"(max relative deviation {deviation:.3g})"
        )
    else:
        logger.debug(f"IPF for zone {marginals.zone_id} converged after {iterations} iterations")
    weights.setflags(write=False)
    return IpfResult(WeightedSurvey(households, weights), converged, iterations, deviation)
