# 拼车扩展

from dataclasses import dataclass
from loguru import logger
from typing import Iterable, List, Optional, Protocol

from common.modes import Mode


@dataclass
class RideOffer:
    """
    驾车者发布的拼车机会，出发时失效
    """
    driver_id: int
    origin: str
    destination: str
    departure: int
    seats: int
    travel_minutes: int
    initial_seats: int = 0

    def __post_init__(self):
        if self.seats < 0:
            raise ValueError("free seats must be non-negative")
        if not self.initial_seats:
            self.initial_seats = self.seats


@dataclass(frozen=True)
class RideRequest:
    """
    乘客的拼车请求，可接受的出发时间窗为 [earliest, latest]
    """
    passenger_id: int
    origin: str
    destination: str
    earliest: int
    latest: int

    def __post_init__(self):
        if self.latest < self.earliest:
            raise ValueError("latest departure precedes earliest departure")


def match(request: RideRequest, offers: Iterable[RideOffer]) -> Optional[RideOffer]:
    """
    在开放的拼车机会中寻找匹配：起讫小区相同、出发时间在请求窗内、至少一个空座；
    多个候选时最早出发者优先，同时出发按驾车者ID

    Args:
        request: 拼车请求
        offers: 当前开放的拼车机会

    Returns:
        Optional[RideOffer]: 匹配的拼车机会，不修改座位数
    """
    candidates = [
        offer for offer in offers
        if offer.origin == request.origin
        and offer.destination == request.destination
        and request.earliest <= offer.departure <= request.latest
        and offer.seats >= 1
    ]
    if not candidates:
        return None
    return min(candidates, key=lambda offer: (offer.departure, offer.driver_id))


class RideBook:
    """
    拼车机会簿，由模拟循环单线程修改
    """

    def __init__(self):
        self._offers: List[RideOffer] = []
        self.matches = 0

    def post(self, offer: RideOffer) -> None:
        self._offers.append(offer)

    def expire(self, clock: int) -> None:
        """
        移除出发时刻早于 clock 的拼车机会
        """
        self._offers = [offer for offer in self._offers if offer.departure >= clock]

    def withdraw(self, driver_id: int) -> None:
        self._offers = [offer for offer in self._offers if offer.driver_id != driver_id]

    def open_offers(self) -> List[RideOffer]:
        return list(self._offers)

    def accept(self, request: RideRequest) -> Optional[RideOffer]:
        """
        匹配并占用一个座位
        """
        offer = match(request, self._offers)
        if offer is not None:
            offer.seats -= 1
            self.matches += 1
        return offer


class TripDecider(Protocol):
    """
    拼车扩展回调模拟引擎做出行决策
    """

    def decide(self, agent, clock: int, planned_departure: int, exclude: Iterable[Mode] = (),
               activity=None, destination: Optional[str] = None):
        ...


class RidesharingExtension:
    """
    拼车扩展：提前决策、驾车者发布机会、乘客请求与等待状态
    """

    def __init__(self, lookahead_min: int = 30, max_wait_min: int = 30, check_interval_min: int = 5,
                 seats: int = 3):
        """
        初始化拼车扩展

        Args:
            lookahead_min: 提前决策的分钟数
            max_wait_min: 最长等待时间
            check_interval_min: 等待状态下检查的间隔
            seats: 每个驾车者提供的空座数
        """
        self.lookahead_min = lookahead_min
        self.max_wait_min = max_wait_min
        self.check_interval_min = check_interval_min
        self.seats = seats
        self.book = RideBook()
        self.fallbacks = 0

    def decision_time(self, started_at: int, ends_at: int) -> int:
        return max(started_at, ends_at - self.lookahead_min)

    def early_mode_choice_hook(self, agent, clock: int, decider: TripDecider):
        """
        提前 lookahead 分钟做目的地与方式选择；乘客找到匹配时活动结束时间移到匹配的出发时刻

        Args:
            agent: 处于活动状态的个体
            clock: 当前分钟
            decider: 引擎的出行决策回调

        Returns:
            待出发的出行，无需出行时为 None
        """
        pending = decider.decide(agent, clock, agent.ends_at)
        if pending is not None:
            self.on_decision(agent, pending, clock)
        return pending

    def on_decision(self, agent, pending, clock: int) -> None:
        """
        驾车者发布拼车机会，乘客在 ±lookahead 的时间窗内寻找匹配
        """
        if pending.mode == Mode.CAR_DRIVER:
            self.book.post(RideOffer(
                driver_id=agent.id,
                origin=agent.current_zone,
                destination=pending.destination,
                departure=pending.depart_at,
                seats=self.seats,
                travel_minutes=pending.travel_minutes,
            ))
        elif pending.mode == Mode.CAR_PASSENGER:
            request = RideRequest(
                passenger_id=agent.id,
                origin=agent.current_zone,
                destination=pending.destination,
                earliest=max(clock, pending.depart_at - self.lookahead_min),
                latest=pending.depart_at + self.lookahead_min,
            )
            offer = self.book.accept(request)
            if offer is not None:
                pending.ride = offer
                pending.depart_at = offer.departure
                logger.debug(f"person {agent.id} rides with driver {offer.driver_id} at minute {offer.departure}")

    def needs_wait(self, pending) -> bool:
        return pending.mode == Mode.CAR_PASSENGER and pending.ride is None

    def wait_state_step(self, agent, clock: int, decider: TripDecider) -> Optional[int]:
        """
        等待状态下检查一次拼车机会

        Args:
            agent: 处于等待状态的个体
            clock: 当前分钟
            decider: 引擎的出行决策回调

        Returns:
            Optional[int]: 下一次检查的分钟；None 表示等待结束，agent.pending 可以出发
        """
        pending = agent.pending
        offer = self.book.accept(RideRequest(agent.id, agent.current_zone, pending.destination,
                                             clock, max(clock, agent.wait_until)))
        if offer is not None:
            pending.ride = offer
            pending.depart_at = offer.departure
            return None
        if clock >= agent.wait_until:
            # 超时后在不含搭车的方式中重新选择
            self.fallbacks += 1
            agent.pending = decider.decide(agent, clock, clock, exclude=(Mode.CAR_PASSENGER,),
                                           activity=pending.activity, destination=pending.destination)
            return None
        return min(clock + self.check_interval_min, agent.wait_until)
