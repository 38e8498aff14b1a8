# 测试用的小型场景与人口

import os
import sys
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np
from hypothesis import settings

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from common.activity import Activity, MINUTES_PER_DAY, MINUTES_PER_WEEK
from common.modes import MODE_ORDER
from choice.params import ChoiceParams, load_params
from config import ChoiceSection
from longterm.assignment import LongTermAssignment
from longterm.cars import Car
from population.model import Household, Person, Population
from world.skims import SkimMatrixSet
from world.world import World
from world.zone import Zone

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PARAMS_DIR = os.path.join(ROOT, "params")
TOY_DIR = os.path.join(ROOT, "data", "toy")
CONFIG_PATH = os.path.join(ROOT, "config.yaml")
ALL_MODES = tuple(mode.value for mode in MODE_ORDER)

# 随机性质测试的用例数量
settings.register_profile("quick", max_examples=25, deadline=None)
settings.register_profile("full", max_examples=1000, deadline=None)
settings.register_profile("invariants", max_examples=10_000, deadline=None)
INVARIANTS = settings.get_profile("invariants")


def clock(day: int, hour: int, minute: int = 0) -> int:
    return day * MINUTES_PER_DAY + hour * 60 + minute


def program(*activities: Tuple[str, int, int]) -> Tuple[Activity, ...]:
    return tuple(Activity(purpose, start, duration) for purpose, start, duration in activities)


def make_world(positions: Sequence[float] = (0.0, 10.0), minutes: float = None, modes: Iterable[str] = ALL_MODES,
               attractivity: Mapping[str, float] = None, freefloating: Iterable[str] = (),
               stations: Mapping[str, int] = None, fleet: Mapping[str, int] = None,
               commuting: Mapping[str, np.ndarray] = None) -> World:
    """
    构建直线上的小区场景

    小区ID为 "1".."n"，距离为坐标差（小区内0.8 km）；
    minutes 给定时所有方式的出行时间都取该值，否则按速度计算
    """
    from world.world import CommutingMatrix

    n = len(positions)
    x = np.asarray(positions, dtype=np.float64)
    distance = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(distance, 0.8)
    speeds = {"walking": 12.0, "cycling": 4.0, "public_transport": 2.0, "car_driver": 1.0, "car_passenger": 1.0,
              "carsharing_station": 1.0, "carsharing_freefloat": 1.0}
    time, cost = {}, {}
    for mode in modes:
        if minutes is not None:
            time[mode] = np.full((n, n), float(minutes))
        else:
            time[mode] = 3.0 + speeds[mode] * distance
        cost[mode] = 0.2 * distance if mode.startswith("car") and mode != "car_passenger" else np.zeros((n, n))
    skims = SkimMatrixSet.build(n, time, cost, distance)
    attractivity = dict(attractivity or {"shopping_daily": 100.0, "leisure_outdoor": 50.0})
    stations = dict(stations or {})
    freefloating = set(freefloating)
    zones = [
        Zone(id=str(k + 1), index=k, attractivity=attractivity, in_freefloating_area=str(k + 1) in freefloating,
             carsharing_station_count=stations.get(str(k + 1), 0))
        for k in range(n)
    ]
    commuting = {kind: CommutingMatrix(kind, counts) for kind, counts in (commuting or {}).items()}
    return World(zones, skims, commuting, fleet)


def make_person(person_id: int, household_id: int, activities: Tuple[Activity, ...], home_zone: str = "1",
                employment: str = "fulltime", sex: str = "male", age_group: str = "36-50",
                has_license: bool = True, car_availability: str = "personal_car", commute_km: float = 10.0) -> Person:
    return Person(
        id=person_id,
        household_id=household_id,
        home_zone=home_zone,
        prototype_id=f"P{person_id}",
        sex=sex,
        age_group=age_group,
        employment=employment,
        has_license=has_license,
        car_availability=car_availability,
        commute_km=commute_km,
        program=activities,
    )


def make_population(households: Mapping[int, Sequence[Person]], household_type: str = "family",
                    n_cars: Mapping[int, int] = None) -> Population:
    n_cars = dict(n_cars or {})
    return Population([
        Household(id=hid, home_zone=members[0].home_zone, prototype_id=f"H{hid}", household_type=household_type,
                  n_cars=n_cars.get(hid, 0), members=tuple(members))
        for hid, members in households.items()
    ])


def make_assignment(population: Population, work_zone: Mapping[int, str] = None,
                    school_zone: Mapping[int, str] = None, cars: Mapping[int, int] = None,
                    transit_pass: Iterable[int] = (), customers: Iterable[int] = ()) -> LongTermAssignment:
    cars = dict(cars or {})
    transit_pass = set(transit_pass)
    customers = set(customers)
    return LongTermAssignment(
        work_zone=dict(work_zone or {}),
        school_zone=dict(school_zone or {}),
        transit_pass={p.id: p.id in transit_pass for p in population.persons()},
        carsharing_customer={p.id: p.id in customers for p in population.persons()},
        cars={h.id: [Car(h.id, k, "midsize", "combustion") for k in range(1, cars.get(h.id, 0) + 1)]
              for h in population.households},
    )


def default_section(**overrides) -> ChoiceSection:
    values = dict(
        mode_choice=os.path.join(PARAMS_DIR, "mode_choice.csv"),
        dest_choice=os.path.join(PARAMS_DIR, "dest_choice.csv"),
        dest_scaling=os.path.join(PARAMS_DIR, "dest_scaling.csv"),
        transit_pass=os.path.join(PARAMS_DIR, "transit_pass.csv"),
    )
    values.update(overrides)
    return ChoiceSection(**values)


def default_params(**overrides) -> ChoiceParams:
    return load_params(default_section(**overrides))


def with_mode_constants(params: ChoiceParams, constants: Dict[str, float]) -> ChoiceParams:
    """
    替换方式常数，用于强制某些方式被选中
    """
    from dataclasses import replace as dc_replace
    from choice.params import ModeChoiceParams

    table = params.mode.coefficients.replace({("asc", mode, ""): value for mode, value in constants.items()})
    return dc_replace(params, mode=ModeChoiceParams(table))


def commute_week(home_zone: str = "1", days: int = 5, leave_home: int = 390, work_start: int = 420,
                 work_minutes: int = 480, back_home: int = 930) -> Tuple[Activity, ...]:
    """
    工作日通勤计划：每日 居住地 -> 工作 -> 居住地，最后一个居住地活动持续到周末
    """
    activities = [Activity("home", 0, leave_home)]
    for day in range(days):
        start = day * MINUTES_PER_DAY
        activities.append(Activity("work", start + work_start, work_minutes))
        home_start = start + back_home
        if day < days - 1:
            next_leave = (day + 1) * MINUTES_PER_DAY + leave_home
            activities.append(Activity("home", home_start, next_leave - home_start))
        else:
            activities.append(Activity("home", home_start, MINUTES_PER_WEEK - home_start))
    return tuple(activities)
