# 一周模拟引擎

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from loguru import logger
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from common.activity import Activity, HOME, MINUTES_PER_WEEK
from common.exceptions import ScenarioError, SimulationError
from common.modes import BASE_MODES, CARSHARING_MODES, Mode, ordered
from common.utils import derive_rng
from choice.context import CarsharingSnapshot, ChoiceContext
from choice.model import ChoiceModel
from choice.params import ChoiceParams
from engine.carpool import CarPool
from engine.rescheduling import ReschedulingFactory
from engine.state import (ARRIVE, DECIDE_EARLY, DECIDE_PINNED, DEPART, END_ACTIVITY, WAIT_CHECK, Agent,
                          PendingTrip, Phase, TripInProgress)
from engine.trip import TripRecord, sort_trips
from extensions.carsharing import CarsharingRules, FreefloatFleet
from extensions.ridesharing import RidesharingExtension


@dataclass(frozen=True)
class SimulationOptions:
    """
    一次模拟的运行选项
    """
    rescheduling: str = "skip_keep_last"
    extensions: FrozenSet[str] = frozenset()
    day_start_lead_min: int = 120
    check_invariants: bool = False
    lookahead_min: int = 30
    max_wait_min: int = 30
    check_interval_min: int = 5
    seats: int = 3

    @classmethod
    def from_manifest(cls, manifest) -> "SimulationOptions":
        rideshare = manifest.extensions.rideshare
        return cls(
            rescheduling=manifest.engine.rescheduling,
            extensions=frozenset(manifest.extensions.enabled),
            day_start_lead_min=manifest.engine.day_start_lead_min,
            check_invariants=manifest.engine.check_invariants,
            lookahead_min=rideshare.lookahead_min,
            max_wait_min=rideshare.max_wait_min,
            check_interval_min=rideshare.check_interval_min,
            seats=rideshare.seats,
        )


@dataclass(frozen=True)
class ActivityLogEntry:
    """
    已开始的活动：计划开始与实际开始时间
    """
    person_id: int
    purpose: str
    zone: str
    planned_start: int
    realized_start: int

    @property
    def delay(self) -> int:
        return self.realized_start - self.planned_start


@dataclass
class SimulationResult:
    """
    一周模拟的结果

    Attributes:
        trips: 按 (出发时刻, 人员ID) 排序的出行记录
        en_route: 每分钟结束时处于出行状态的人数
        activities: 已开始活动的日志
        counters: 车辆、共享、拼车与重排的计数
    """
    trips: List[TripRecord]
    en_route: np.ndarray
    activities: List[ActivityLogEntry] = field(default_factory=list)
    counters: Dict[str, int] = field(default_factory=dict)

    def summary(self) -> Dict[str, int]:
        return {"trips": len(self.trips), **self.counters}


class Simulator:
    """
    离散时间（分钟步长）的一周模拟

    所有个体在同一个时钟下推进；同一分钟内按个体ID处理事件。
    引擎自身是确定性的，随机性只来自每个个体独立的随机数流。
    """

    def __init__(self, world, population, assignment, params: ChoiceParams,
                 options: SimulationOptions = None, seed: int = 42):
        """
        初始化模拟引擎

        Args:
            world: 场景
            population: 合成人口
            assignment: 长期决策
            params: 选择模型参数
            options: 运行选项
            seed: 模拟随机种子
        """
        self.world = world
        self.population = population
        self.assignment = assignment
        self.options = options or SimulationOptions()
        self.seed = seed
        self.choice = ChoiceModel(world, params)
        self.strategy = ReschedulingFactory.create(self.options.rescheduling)
        self._check_modes(params)

        self.rideshare: Optional[RidesharingExtension] = None
        if "ridesharing" in self.options.extensions:
            self.rideshare = RidesharingExtension(self.options.lookahead_min, self.options.max_wait_min,
                                                  self.options.check_interval_min, self.options.seats)
        self.fleet: Optional[FreefloatFleet] = None
        if "carsharing" in self.options.extensions:
            self.fleet = FreefloatFleet(CarsharingRules.from_world(world))

        self.pools: Dict[int, CarPool] = {
            household.id: CarPool(household.id, [car.car_id for car in assignment.cars.get(household.id, ())])
            for household in population.households
        }
        agents = sorted((Agent.create(person, derive_rng(seed, person.id)) for person in population.persons()),
                        key=lambda agent: agent.id)
        self.agents: Dict[int, Agent] = {agent.id: agent for agent in agents}

        self._heap: List[Tuple[int, int, int]] = []
        self._in_trip = 0
        self._trips: List[TripRecord] = []
        self._activities: List[ActivityLogEntry] = []
        self.slips = 0
        self.dropped = 0
        self.car_conflicts = 0

    def _check_modes(self, params: ChoiceParams) -> None:
        required = [mode for mode in ordered(BASE_MODES) if mode.value not in params.excluded_modes]
        if "carsharing" in self.options.extensions:
            required += list(ordered(CARSHARING_MODES))
        missing = [mode.value for mode in required if not self.world.has_mode(mode.value)]
        if missing:
            raise ScenarioError(f"scenario has no skim matrices for modes {missing}")

    # ------------------------------------------------------------------
    # 主循环

    def run(self) -> SimulationResult:
        """
        从周一00:00模拟到周日24:00

        Returns:
            SimulationResult: 模拟结果
        """
        logger.info(f"Simulating {len(self.agents)} persons, rescheduling={self.strategy.name}, "
                    f"extensions={sorted(self.options.extensions)}")
        for agent in self.agents.values():
            self.initialize_agent(agent, 0)

        en_route = np.zeros(MINUTES_PER_WEEK, dtype=np.int64)
        for clock in range(MINUTES_PER_WEEK):
            if self.rideshare is not None:
                self.rideshare.book.expire(clock)
            while self._heap and self._heap[0][0] == clock:
                _, agent_id, version = heapq.heappop(self._heap)
                agent = self.agents[agent_id]
                if version == agent.version:
                    self._dispatch(agent, clock)
            en_route[clock] = self._in_trip
            if self.options.check_invariants:
                self.check_invariants()

        self._flush()
        result = SimulationResult(
            trips=sort_trips(self._trips),
            en_route=en_route,
            activities=self._activities,
            counters=self._counters(),
        )
        logger.info(f"Simulation finished: {result.summary()}")
        if self.fleet is not None:
            self.fleet.summary()
        return result

    def _dispatch(self, agent: Agent, clock: int) -> None:
        event = agent.next_event
        agent.next_event = None
        if event == END_ACTIVITY:
            self.end_activity_transition(agent, clock)
        elif event == DECIDE_PINNED:
            self._decide_pinned(agent, clock)
        elif event == DECIDE_EARLY:
            self._decide_early(agent, clock)
        elif event == DEPART:
            self._depart(agent, clock)
        elif event == ARRIVE:
            self.end_trip_transition(agent, clock)
        elif event == WAIT_CHECK:
            self._wait_step(agent, clock)
        else:
            raise SimulationError(f"person {agent.id} has no event to process at minute {clock}")

    def _schedule(self, agent: Agent, minute: int, event: str) -> None:
        if minute < 0:
            raise SimulationError(f"negative event time for person {agent.id}")
        agent.version += 1
        agent.next_event = event
        heapq.heappush(self._heap, (minute, agent.id, agent.version))

    def _flush(self) -> None:
        """
        周末仍在途中的出行照常写出
        """
        for agent in self.agents.values():
            if agent.phase == Phase.TRIP:
                self._record(agent, agent.trip)

    def _counters(self) -> Dict[str, int]:
        counters = {
            "car_takes": sum(pool.takes for pool in self.pools.values()),
            "car_returns": sum(pool.returns for pool in self.pools.values()),
            "car_conflicts": self.car_conflicts,
            "schedule_slips": self.slips,
            "dropped_activities": self.dropped,
        }
        if self.rideshare is not None:
            counters["ride_matches"] = self.rideshare.book.matches
            counters["ride_fallbacks"] = self.rideshare.fallbacks
        if self.fleet is not None:
            counters["freefloat_pickups"] = self.fleet.pickups
            counters["freefloat_dropoffs"] = self.fleet.dropoffs
        return counters

    def check_invariants(self) -> None:
        """
        检查车辆池与自由流动车队守恒
        """
        for pool in self.pools.values():
            pool.check()
        if self.fleet is not None:
            self.fleet.check()

    # ------------------------------------------------------------------
    # 状态转移

    def initialize_agent(self, agent: Agent, clock: int) -> None:
        """
        第一个活动为居住地活动时直接开始并按计划结束；
        否则视为在家，出发时间使得按计划到达（不早于周一00:00）
        """
        first = agent.remaining[0]
        if first.purpose == HOME:
            agent.remaining.popleft()
            self._start_activity(agent, first, clock, ends_at=first.planned_end)
            return
        agent.phase = Phase.ACTIVITY
        agent.started_at = clock
        pending = self.decide(agent, clock, clock, arrive_by=first.planned_start)
        self._await_departure(agent, pending, clock)

    def end_activity_transition(self, agent: Agent, clock: int) -> None:
        """
        活动结束：做出行决策并出发，或直接开始同地点的下一个活动
        """
        pending = self.decide(agent, clock, clock)
        if pending is None:
            self._continue_in_place(agent, clock)
            return
        self._await_departure(agent, pending, clock)

    def end_trip_transition(self, agent: Agent, clock: int) -> None:
        """
        到达：写出行记录，归还家庭车辆或停放自由流动车辆，开始活动
        """
        trip = agent.trip
        self._record(agent, trip)
        agent.trip = None
        self._in_trip -= 1
        agent.current_zone = trip.destination
        agent.previous_mode = trip.mode
        if trip.mode == Mode.CAR_DRIVER and trip.activity.purpose == HOME and agent.car_id is not None:
            self.pools[agent.household_id].give_back(agent.id)
            agent.car_id = None
        if trip.mode == Mode.CARSHARING_FREEFLOAT and self.fleet.rules.in_area(trip.destination):
            self.fleet.dropoff(trip.destination)
            agent.holding_freefloat = False
        self._start_activity(agent, trip.activity, clock)

    def _continue_in_place(self, agent: Agent, clock: int) -> None:
        if not agent.remaining:
            agent.phase = Phase.FINISHED
            return
        self._start_activity(agent, agent.remaining.popleft(), clock)

    def _start_activity(self, agent: Agent, activity: Activity, clock: int, ends_at: Optional[int] = None) -> None:
        agent.phase = Phase.ACTIVITY
        agent.current = activity
        agent.started_at = clock
        agent.ends_at = ends_at if ends_at is not None else clock + activity.duration
        self._activities.append(ActivityLogEntry(agent.id, activity.purpose, agent.current_zone,
                                                 activity.planned_start, clock))
        if not agent.remaining:
            self._schedule(agent, agent.ends_at, END_ACTIVITY)
            return

        pinned = self.strategy.pinned_end(activity, agent.remaining[0])
        if pinned is not None:
            agent.ends_at = max(pinned, clock + 1)
            decision = max(pinned - self.options.day_start_lead_min, clock)
            if decision <= clock:
                self._decide_pinned(agent, clock)
            else:
                self._schedule(agent, decision, DECIDE_PINNED)
        elif self.rideshare is not None and self.rideshare.lookahead_min > 0:
            decision = self.rideshare.decision_time(clock, agent.ends_at)
            if decision <= clock:
                self._decide_early(agent, clock)
            else:
                self._schedule(agent, decision, DECIDE_EARLY)
        else:
            self._schedule(agent, agent.ends_at, END_ACTIVITY)

    def _decide_pinned(self, agent: Agent, clock: int) -> None:
        """
        日末活动的提前决策：出发时间使得按计划开始次日第一个活动
        """
        following = agent.remaining[0]
        earliest = max(clock, agent.started_at + 1)
        pending = self.decide(agent, clock, earliest, arrive_by=following.planned_start, pinned=True)
        if pending is None:
            agent.ends_at = max(following.planned_start, agent.started_at + 1)
            self._schedule(agent, max(agent.ends_at, clock), END_ACTIVITY)
            return
        if pending.depart_at + pending.travel_minutes > pending.activity.planned_start:
            self.slips += 1
            logger.debug(f"person {agent.id} cannot reach {pending.activity.purpose} by minute "
                         f"{pending.activity.planned_start}")
        self._await_departure(agent, pending, clock)

    def _decide_early(self, agent: Agent, clock: int) -> None:
        pending = self.rideshare.early_mode_choice_hook(agent, clock, self)
        if pending is None:
            self._schedule(agent, max(agent.ends_at, clock), END_ACTIVITY)
            return
        self._await_departure(agent, pending, clock, notify=False)

    def _await_departure(self, agent: Agent, pending: PendingTrip, clock: int, notify: bool = True) -> None:
        agent.pending = pending
        if notify and self.rideshare is not None:
            self.rideshare.on_decision(agent, pending, clock)
        agent.ends_at = pending.depart_at
        if pending.depart_at <= clock:
            self._depart(agent, clock)
        else:
            self._schedule(agent, pending.depart_at, DEPART)

    def _depart(self, agent: Agent, clock: int) -> None:
        self._secure_car(agent, clock)
        if self.rideshare is not None and self.rideshare.needs_wait(agent.pending):
            agent.phase = Phase.WAIT
            agent.wait_until = clock + self.rideshare.max_wait_min
            self._wait_step(agent, clock)
            return
        self._begin_trip(agent, clock)

    def _secure_car(self, agent: Agent, clock: int, exclude: Iterable[Mode] = (Mode.CAR_DRIVER,)) -> None:
        """
        驾车出行在出发时才从家庭车辆池取车；车辆已被其他成员取走时，目的地不变，在其余方式中重新选择并立即出发
        """
        pending = agent.pending
        if pending.mode != Mode.CAR_DRIVER or agent.car_id is not None:
            return
        pool = self.pools[agent.household_id]
        if pool.free_count > 0:
            agent.car_id = pool.take(agent.id)
            return
        self.car_conflicts += 1
        if self.rideshare is not None:
            self.rideshare.book.withdraw(agent.id)
        logger.debug(f"person {agent.id} finds no free car at minute {clock}, choosing another mode")
        context = self._context(agent, clock, pending.activity)
        mode = self.choice.choose_mode(context, pending.destination, agent.rng, exclude)
        minutes = self.travel_minutes(mode, agent.current_zone, pending.destination)
        planned_start = pending.activity.planned_start
        if pending.pinned and clock + minutes > planned_start >= pending.depart_at + pending.travel_minutes:
            self.slips += 1
        self._reserve(agent, mode)
        agent.pending = PendingTrip(pending.activity, pending.destination, mode, clock, clock, minutes,
                                    pinned=pending.pinned)

    def _wait_step(self, agent: Agent, clock: int) -> None:
        next_check = self.rideshare.wait_state_step(agent, clock, self)
        if next_check is not None:
            self._schedule(agent, next_check, WAIT_CHECK)
            return
        pending = agent.pending
        if pending.depart_at > clock:
            self._schedule(agent, pending.depart_at, DEPART)
        else:
            self._secure_car(agent, clock, (Mode.CAR_DRIVER, Mode.CAR_PASSENGER))
            self._begin_trip(agent, clock)

    def _begin_trip(self, agent: Agent, clock: int) -> None:
        pending = agent.pending
        agent.pending = None
        minutes = pending.ride.travel_minutes if pending.ride is not None else pending.travel_minutes
        agent.trip = TripInProgress(
            activity=pending.activity,
            origin=agent.current_zone,
            destination=pending.destination,
            mode=pending.mode,
            depart_min=clock,
            arrive_min=clock + minutes,
            distance_km=self.world.distance(agent.current_zone, pending.destination),
        )
        agent.phase = Phase.TRIP
        self._in_trip += 1
        self._schedule(agent, clock + minutes, ARRIVE)

    def _record(self, agent: Agent, trip: TripInProgress) -> None:
        self._trips.append(TripRecord(
            person_id=agent.id,
            household_id=agent.household_id,
            origin=trip.origin,
            destination=trip.destination,
            mode=trip.mode.value,
            purpose=trip.activity.purpose,
            depart_min=trip.depart_min,
            arrive_min=trip.arrive_min,
            distance_km=trip.distance_km,
        ))

    # ------------------------------------------------------------------
    # 出行决策

    def decide(self, agent: Agent, clock: int, planned_departure: int, exclude: Iterable[Mode] = (),
               activity: Activity = None, destination: Optional[str] = None,
               arrive_by: Optional[int] = None, pinned: bool = False) -> Optional[PendingTrip]:
        """
        决定下一次出行：按策略调整剩余活动，选择目的地与方式并预留自由流动车辆

        Args:
            agent: 个体
            clock: 决策时刻
            planned_departure: 计划出发时刻
            exclude: 额外排除的方式
            activity: 已确定的目标活动（等车超时重选时），默认取剩余活动的第一个
            destination: 已确定的目的地
            arrive_by: 需要按时到达的时刻，出发时间取 max(planned_departure, arrive_by - 行程时间)
            pinned: 是否为日末活动的提前决策

        Returns:
            Optional[PendingTrip]: 待出发的出行；计划已结束或下一个活动在同一地点时为 None
        """
        if activity is None:
            before = len(agent.remaining)
            agent.remaining = deque(self.strategy.reschedule(tuple(agent.remaining), clock))
            if len(agent.remaining) < before:
                self.dropped += before - len(agent.remaining)
                logger.debug(f"person {agent.id} dropped {before - len(agent.remaining)} activities "
                             f"at minute {clock}")
            if not agent.remaining or self._stays_in_place(agent, agent.remaining[0]):
                return None
            activity = agent.remaining.popleft()

        if destination is None and activity.fixed_location:
            destination = self._fixed_zone(agent, activity)
        departure = self._departure_estimate(agent, planned_departure, destination, arrive_by)
        context = self._context(agent, departure, activity)
        if destination is None:
            destination = self.choice.choose_destination(context, agent.rng)
        mode = self.choice.choose_mode(context, destination, agent.rng, exclude)
        minutes = self.travel_minutes(mode, agent.current_zone, destination)
        depart = planned_departure if arrive_by is None else max(planned_departure, arrive_by - minutes)
        self._reserve(agent, mode)
        return PendingTrip(activity, destination, mode, depart, clock, minutes, pinned=pinned)

    def _departure_estimate(self, agent: Agent, planned_departure: int, destination: Optional[str],
                            arrive_by: Optional[int]) -> int:
        """
        选择情境所用的出发时刻：按时到达的出行用目的地选择矩阵的行程时间倒推，目的地未定时取到达时刻
        """
        if arrive_by is None:
            return planned_departure
        lead = 0
        if destination is not None:
            lead = math.ceil(self.world.travel(self.choice.params.destination_skim_mode, agent.current_zone,
                                               destination).time)
        return max(planned_departure, arrive_by - lead)

    def travel_minutes(self, mode: Mode, origin: str, destination: str) -> int:
        return max(1, math.ceil(self.world.travel(mode, origin, destination).time))

    def _stays_in_place(self, agent: Agent, following: Activity) -> bool:
        current_purpose = agent.current.purpose if agent.current is not None else HOME
        return (following.fixed_location and following.purpose == current_purpose
                and self._fixed_zone(agent, following) == agent.current_zone)

    def _fixed_zone(self, agent: Agent, activity: Activity) -> str:
        zone = self.assignment.fixed_zone(agent.person, activity.purpose)
        return zone if zone is not None else agent.person.home_zone

    def _next_fixed_zone(self, agent: Agent) -> str:
        for activity in agent.remaining:
            if activity.fixed_location:
                return self._fixed_zone(agent, activity)
        return agent.person.home_zone

    def _context(self, agent: Agent, clock: int, activity: Activity) -> ChoiceContext:
        person = agent.person
        carsharing = None
        if self.fleet is not None:
            rules = self.fleet.rules
            carsharing = CarsharingSnapshot(
                customer=self.assignment.carsharing_customer.get(person.id, False),
                home_stations=rules.station_counts.get(person.home_zone, 0),
                in_operating_area=rules.in_area(agent.current_zone),
                fleet_available=self.fleet.available(agent.current_zone) > 0,
                holding_freefloat=agent.holding_freefloat,
            )
        return ChoiceContext(
            person=person,
            current_zone=agent.current_zone,
            at_home=agent.at_home,
            clock=clock,
            next_activity=activity,
            next_fixed_zone=self._next_fixed_zone(agent),
            previous_mode=agent.previous_mode,
            free_cars=self.pools[agent.household_id].free_count,
            has_transit_pass=self.assignment.transit_pass.get(person.id, False),
            carsharing=carsharing,
            excluded_modes=self.choice.params.excluded_modes,
        )

    def _reserve(self, agent: Agent, mode: Mode) -> None:
        """
        决策时即占用自由流动车辆；家庭车辆在出发时才取出
        """
        if mode == Mode.CARSHARING_FREEFLOAT and not agent.holding_freefloat:
            self.fleet.pickup(agent.current_zone)
            agent.holding_freefloat = True


def simulate_week(world, population, assignment, params: ChoiceParams,
                  options: SimulationOptions = None, seed: int = 42) -> SimulationResult:
    """
    运行一次一周模拟

    Args:
        world: 场景
        population: 合成人口
        assignment: 长期决策
        params: 选择模型参数
        options: 运行选项
        seed: 模拟随机种子

    Returns:
        SimulationResult: 模拟结果
    """
    return Simulator(world, population, assignment, params, options, seed).run()
