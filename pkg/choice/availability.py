# 方式可用性规则

from typing import Tuple

from common.modes import LOCKING_MODES, Mode, ordered
from extensions.carsharing import carsharing_availability

HOME_MODES = frozenset({Mode.WALKING, Mode.CYCLING, Mode.PUBLIC_TRANSPORT, Mode.CAR_PASSENGER})
FLEXIBLE_MODES = frozenset({Mode.WALKING, Mode.PUBLIC_TRANSPORT, Mode.CAR_PASSENGER})


def available_modes(context) -> Tuple[Mode, ...]:
    """
    依据所处情境计算可用方式集合

    在家时：步行、自行车、公交、搭车，持驾照且家中有空闲车辆时加驾车；
    离家且上一方式为驾车、自行车或站点式共享时只能沿用该方式；
    其余离家情况：步行、公交、搭车。汽车共享方式按扩展规则加入。

    Args:
        context: ChoiceContext

    Returns:
        Tuple[Mode, ...]: 非空、按固定顺序排列的方式
    """
    delta = carsharing_availability(context)
    if delta.lock is not None:
        modes = set(delta.lock)
    elif context.at_home:
        modes = set(HOME_MODES)
        if context.person.has_license and context.free_cars > 0:
            modes.add(Mode.CAR_DRIVER)
        modes |= delta.add
    elif context.previous_mode in LOCKING_MODES:
        modes = {context.previous_mode}
    else:
        modes = set(FLEXIBLE_MODES) | (delta.add & {Mode.CARSHARING_FREEFLOAT})
    allowed = {mode for mode in modes if mode.value not in context.excluded_modes}
    # 锁定的方式不受排除项影响，集合永不为空
    return ordered(allowed or modes)
