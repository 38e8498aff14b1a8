# 合成人口文件读写

import os
from collections import defaultdict
from typing import Any, Dict, Optional

import pandas as pd

from common.exceptions import ScenarioError
from common.utils import read_table, row_line, write_table
from population.model import Household, Person, Population
from population.survey import ACTIVITY_COLUMNS, PERSON_COLUMNS, parse_person_row, read_programs

HOUSEHOLDS_FILE = "households.csv"
PERSONS_FILE = "persons.csv"
ACTIVITIES_FILE = "activities.csv"


def write_population(population: Population, directory: str, metadata: Optional[Dict[str, Any]] = None) -> None:
    """
    写出合成人口：家庭、人员、活动三张表，列与调查样本一致，另加 home_zone 和 prototype_id

    Args:
        population: 合成人口
        directory: 输出目录
        metadata: 运行元数据
    """
    households = pd.DataFrame([
        {
            "household_id": h.id,
            "household_type": h.household_type,
            "n_cars": h.n_cars,
            "home_zone": h.home_zone,
            "prototype_id": h.prototype_id,
        }
        for h in population.households
    ], columns=["household_id", "household_type", "n_cars", "home_zone", "prototype_id"])
    persons = pd.DataFrame([
        {
            "person_id": p.id,
            "household_id": p.household_id,
            "sex": p.sex,
            "age_group": p.age_group,
            "employment": p.employment,
            "has_license": int(p.has_license),
            "car_availability": p.car_availability,
            "commute_km": p.commute_km,
            "home_zone": p.home_zone,
            "prototype_id": p.prototype_id,
        }
        for p in population.persons()
    ], columns=PERSON_COLUMNS + ["home_zone", "prototype_id"])
    activities = pd.DataFrame([
        {"person_id": p.id, "purpose": a.purpose, "start": a.planned_start, "duration": a.duration}
        for p in population.persons()
        for a in p.program
    ], columns=ACTIVITY_COLUMNS)
    write_table(households, os.path.join(directory, HOUSEHOLDS_FILE), metadata)
    write_table(persons, os.path.join(directory, PERSONS_FILE), metadata)
    write_table(activities, os.path.join(directory, ACTIVITIES_FILE), metadata)


def read_population(directory: str) -> Population:
    """
    读取 write_population 写出的合成人口

    Args:
        directory: 人口文件所在目录

    Returns:
        Population: 合成人口
    """
    households_path = os.path.join(directory, HOUSEHOLDS_FILE)
    persons_path = os.path.join(directory, PERSONS_FILE)
    programs = read_programs(os.path.join(directory, ACTIVITIES_FILE))
    persons_frame = read_table(persons_path, PERSON_COLUMNS + ["home_zone", "prototype_id"],
                               dtype={"home_zone": str, "prototype_id": str})
    members = defaultdict(list)
    for row_index, row in persons_frame.iterrows():
        line = row_line(row_index)
        person_id = int(row["person_id"])
        program = programs.get(str(person_id))
        if program is None:
            raise ScenarioError(f"person {person_id} has no activity program", persons_path, line)
        members[int(row["household_id"])].append(Person(
            id=person_id,
            household_id=int(row["household_id"]),
            home_zone=str(row["home_zone"]),
            prototype_id=str(row["prototype_id"]),
            program=program,
            **parse_person_row(row, persons_path, line),
        ))
    households_frame = read_table(households_path, ["household_id", "household_type", "n_cars", "home_zone",
                                                     "prototype_id"],
                                  dtype={"household_type": str, "home_zone": str, "prototype_id": str})
    households = []
    for row_index, row in households_frame.iterrows():
        household_id = int(row["household_id"])
        if not members.get(household_id):
            raise ScenarioError(f"household {household_id} has no members", households_path, row_line(row_index))
        households.append(Household(
            id=household_id,
            home_zone=str(row["home_zone"]),
            prototype_id=str(row["prototype_id"]),
            household_type=str(row["household_type"]),
            n_cars=int(row["n_cars"]),
            members=tuple(members.pop(household_id)),
        ))
    if members:
        raise ScenarioError(f"persons reference unknown households {sorted(members)[:5]}", persons_path)
    return Population(households)
