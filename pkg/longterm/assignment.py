# 长期决策汇总与文件读写

import os
from dataclasses import dataclass, field
from loguru import logger
from typing import Any, Dict, List, Optional

import pandas as pd

from common.activity import EDUCATION, WORK
from common.exceptions import ScenarioError
from common.utils import derive_rng, read_table, row_line, write_table
from longterm.cars import Car, assign_cars
from longterm.fixed_places import assign_fixed_places
from longterm.transit_pass import assign_transit_passes

PERSONS_FILE = "longterm_persons.csv"
CARS_FILE = "cars.csv"

# 长期决策各步骤的派生子流
_CARS_STREAM = 1
_TRANSIT_STREAM = 2
_CARSHARING_STREAM = 3


@dataclass
class LongTermAssignment:
    """
    模拟前固定的长期决策

    Attributes:
        work_zone: 人员ID -> 工作地小区
        school_zone: 人员ID -> 学校小区
        transit_pass: 人员ID -> 是否持有公交月票
        carsharing_customer: 人员ID -> 是否为汽车共享会员
        cars: 家庭ID -> 车辆
    """
    work_zone: Dict[int, str] = field(default_factory=dict)
    school_zone: Dict[int, str] = field(default_factory=dict)
    transit_pass: Dict[int, bool] = field(default_factory=dict)
    carsharing_customer: Dict[int, bool] = field(default_factory=dict)
    cars: Dict[int, List[Car]] = field(default_factory=dict)

    def fixed_zone(self, person, purpose: str) -> Optional[str]:
        """
        固定地点活动的小区：居住地、工作地或学校
        """
        if purpose == WORK:
            return self.work_zone.get(person.id)
        if purpose == EDUCATION:
            return self.school_zone.get(person.id)
        return person.home_zone

    def car_count(self, household_id: int) -> int:
        return len(self.cars.get(household_id, ()))


def assign_carsharing_customers(population, rng, share: float) -> Dict[int, bool]:
    """
    持驾照者以 share 的概率成为汽车共享会员
    """
    customers = {}
    for person in population.persons():
        draw = rng.random()
        customers[person.id] = bool(person.has_license and draw < share)
    return customers


def run_longterm(world, population, transit_coefficients, section) -> LongTermAssignment:
    """
    执行全部长期决策

    Args:
        world: 场景
        population: 合成人口
        transit_coefficients: 公交月票模型系数
        section: LongtermSection

    Returns:
        LongTermAssignment: 长期决策结果
    """
    cars_rng = derive_rng(section.seed, _CARS_STREAM)
    assignment = LongTermAssignment(
        work_zone=assign_fixed_places(world, population, world.commuting.get(WORK), WORK),
        school_zone=assign_fixed_places(world, population, world.commuting.get(EDUCATION), EDUCATION),
        transit_pass=assign_transit_passes(world, population, transit_coefficients,
                                           derive_rng(section.seed, _TRANSIT_STREAM)),
        carsharing_customer=assign_carsharing_customers(population, derive_rng(section.seed, _CARSHARING_STREAM),
                                                        section.carsharing_membership_share),
        cars={h.id: assign_cars(h, cars_rng, section.electric_share) for h in population.households},
    )
    logger.info(f"Long-term decisions: {len(assignment.work_zone)} workplaces, "
                f"{len(assignment.school_zone)} school places, "
                f"{sum(len(c) for c in assignment.cars.values())} cars")
    return assignment


def write_assignments(assignment: LongTermAssignment, population, directory: str,
                      metadata: Optional[Dict[str, Any]] = None) -> None:
    """
    写出 longterm_persons.csv 与 cars.csv
    """
    persons = pd.DataFrame([
        {
            "person_id": p.id,
            "work_zone": assignment.work_zone.get(p.id, ""),
            "school_zone": assignment.school_zone.get(p.id, ""),
            "has_transit_pass": int(assignment.transit_pass.get(p.id, False)),
            "carsharing_customer": int(assignment.carsharing_customer.get(p.id, False)),
        }
        for p in population.persons()
    ], columns=["person_id", "work_zone", "school_zone", "has_transit_pass", "carsharing_customer"])
    cars = pd.DataFrame([
        {"household_id": car.household_id, "car_id": car.car_id, "segment": car.segment, "engine": car.engine}
        for household in population.households
        for car in assignment.cars.get(household.id, ())
    ], columns=["household_id", "car_id", "segment", "engine"])
    write_table(persons, os.path.join(directory, PERSONS_FILE), metadata)
    write_table(cars, os.path.join(directory, CARS_FILE), metadata)


def read_assignments(directory: str, population) -> LongTermAssignment:
    """
    读取 write_assignments 写出的长期决策，并校验工作地/学校与活动计划一致
    """
    persons_path = os.path.join(directory, PERSONS_FILE)
    frame = read_table(persons_path, ["person_id", "work_zone", "school_zone", "has_transit_pass",
                                      "carsharing_customer"],
                       dtype={"work_zone": str, "school_zone": str})
    assignment = LongTermAssignment(cars={h.id: [] for h in population.households})
    for row_index, row in frame.iterrows():
        person_id = int(row["person_id"])
        line = row_line(row_index)
        try:
            person = population.person(person_id)
        except KeyError:
            raise ScenarioError(f"unknown person {person_id}", persons_path, line) from None
        for column, target, kind in (("work_zone", assignment.work_zone, WORK),
                                     ("school_zone", assignment.school_zone, EDUCATION)):
            zone = row[column]
            present = isinstance(zone, str) and zone != ""
            if present != person.needs_place(kind):
                raise ScenarioError(f"{column} of person {person_id} does not match its program", persons_path, line)
            if present:
                target[person_id] = zone
        assignment.transit_pass[person_id] = bool(int(row["has_transit_pass"]))
        assignment.carsharing_customer[person_id] = bool(int(row["carsharing_customer"]))
    missing = [p.id for p in population.persons() if p.id not in assignment.transit_pass]
    if missing:
        raise ScenarioError(f"no long-term decisions for persons {missing[:5]}", persons_path)

    cars_path = os.path.join(directory, CARS_FILE)
    cars = read_table(cars_path, ["household_id", "car_id", "segment", "engine"],
                      dtype={"segment": str, "engine": str})
    for _, row in cars.iterrows():
        household_id = int(row["household_id"])
        assignment.cars.setdefault(household_id, []).append(
            Car(household_id, int(row["car_id"]), str(row["segment"]), str(row["engine"]))
        )
    return assignment
