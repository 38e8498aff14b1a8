# 重排策略

from abc import ABC, abstractmethod
from loguru import logger
from typing import Optional, Sequence, Tuple

from common.activity import Activity, end_of_day
from common.exceptions import ConfigError


class BaseRescheduling(ABC):
    """
    重排策略基础抽象类：决定计划与实际时间偏离后剩余活动如何调整
    """

    name = ""

    @abstractmethod
    def reschedule(self, remainder: Sequence[Activity], clock: int) -> Tuple[Activity, ...]:
        """
        在决策时刻调整剩余活动

        Args:
            remainder: 尚未开始的活动，remainder[0] 为下一个活动
            clock: 当前分钟

        Returns:
            Tuple[Activity, ...]: 调整后的剩余活动
        """
        pass

    def pinned_end(self, activity: Activity, following: Optional[Activity]) -> Optional[int]:
        """
        需要固定结束时间的活动返回计划结束时刻，否则返回 None
        """
        return None


class NoRescheduling(BaseRescheduling):
    """
    不重排：延误一直累积
    """

    name = "none"

    def reschedule(self, remainder: Sequence[Activity], clock: int) -> Tuple[Activity, ...]:
        return tuple(remainder)


class TruncateDay(BaseRescheduling):
    """
    计划日已结束的未开始活动被丢弃（整周最后一个活动保留）
    """

    name = "truncate_day"

    def reschedule(self, remainder: Sequence[Activity], clock: int) -> Tuple[Activity, ...]:
        remainder = list(remainder)
        while len(remainder) > 1 and clock >= end_of_day(remainder[0].day):
            remainder.pop(0)
        return tuple(remainder)


class SkipKeepLast(BaseRescheduling):
    """
    到达日界时丢弃当日剩余活动中除最后一个以外的活动；
    每日最后一个活动的结束时间固定，使次日第一个活动按计划开始
    """

    name = "skip_keep_last"

    def reschedule(self, remainder: Sequence[Activity], clock: int) -> Tuple[Activity, ...]:
        if not remainder or clock < end_of_day(remainder[0].day):
            return tuple(remainder)
        day = remainder[0].day
        same_day = [k for k, activity in enumerate(remainder) if activity.day == day]
        last = same_day[-1]
        return tuple(activity for k, activity in enumerate(remainder) if activity.day != day or k == last)

    def pinned_end(self, activity: Activity, following: Optional[Activity]) -> Optional[int]:
        if following is None or following.day <= activity.day:
            return None
        return activity.planned_end


class ReschedulingFactory:
    """
    重排策略工厂类
    """

    @staticmethod
    def create(name: str) -> BaseRescheduling:
        """
        根据名称创建重排策略

        Args:
            name: none、truncate_day 或 skip_keep_last

        Returns:
            BaseRescheduling: 策略实例
        """
        if name == NoRescheduling.name:
            return NoRescheduling()
        elif name == TruncateDay.name:
            return TruncateDay()
        elif name == SkipKeepLast.name:
            return SkipKeepLast()
        logger.error(f"Unsupported rescheduling strategy: {name}")
        raise ConfigError(f"unknown rescheduling strategy '{name}'")


def reschedule(remainder: Sequence[Activity], clock: int, strategy: str) -> Tuple[Activity, ...]:
    """
    按策略名称调整剩余活动
    """
    return ReschedulingFactory.create(strategy).reschedule(remainder, clock)
