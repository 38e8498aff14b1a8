# 调查样本与边际分布读取

from collections import defaultdict
from loguru import logger
from typing import Dict, List, Mapping, Tuple

import pandas as pd

from common.activity import Activity, validate_program
from common.exceptions import ScenarioError
from common.utils import read_table, row_line
from population.model import PERSON_ATTRIBUTES, SurveyHousehold, SurveyPerson, ZoneMarginals

HOUSEHOLD_COLUMNS = ["household_id", "household_type", "n_cars"]
PERSON_COLUMNS = ["person_id", "household_id", "sex", "age_group", "employment",
                  "has_license", "car_availability", "commute_km"]
ACTIVITY_COLUMNS = ["person_id", "purpose", "start", "duration"]

HOUSEHOLD_TYPE_PREFIX = "hhtype:"
_TRUE = {"1", "true", "yes"}
_FALSE = {"0", "false", "no"}


def parse_flag(value, path: str, line: int) -> bool:
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ScenarioError(f"expected a boolean flag, got '{value}'", path, line)


def read_programs(path: str) -> Dict[str, Tuple[Activity, ...]]:
    """
    读取活动文件，按人员分组并校验一周计划

    Args:
        path: 活动文件路径

    Returns:
        Dict[str, Tuple[Activity, ...]]: 人员ID -> 活动计划
    """
    frame = read_table(path, ACTIVITY_COLUMNS, dtype={"person_id": str, "purpose": str})
    programs: Dict[str, List[Activity]] = defaultdict(list)
    first_line: Dict[str, int] = {}
    for row_index, row in frame.iterrows():
        line = row_line(row_index)
        try:
            activity = Activity(str(row["purpose"]).strip(), int(row["start"]), int(row["duration"]))
        except (TypeError, ValueError) as e:
            raise ScenarioError(f"malformed activity row: {e}", path, line) from e
        person_id = str(row["person_id"]).strip()
        first_line.setdefault(person_id, line)
        programs[person_id].append(activity)
    validated = {}
    for person_id, activities in programs.items():
        activities.sort(key=lambda a: a.planned_start)
        try:
            validated[person_id] = validate_program(activities, person_id, path)
        except ScenarioError as e:
            raise ScenarioError(e.message, path, first_line[person_id]) from None
    return validated


def parse_person_row(row: Mapping, path: str, line: int) -> dict:
    """
    解析并校验一行人员属性
    """
    values = {
        "sex": str(row["sex"]).strip(),
        "age_group": str(row["age_group"]).strip(),
        "employment": str(row["employment"]).strip(),
        "car_availability": str(row["car_availability"]).strip(),
    }
    for attribute, value in values.items():
        if value not in PERSON_ATTRIBUTES[attribute]:
            raise ScenarioError(f"unknown {attribute} category '{value}'", path, line)
    try:
        commute_km = float(row["commute_km"])
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"malformed commute_km: {e}", path, line) from e
    if pd.isna(commute_km) or commute_km < 0:
        raise ScenarioError("commute_km must be a non-negative number", path, line)
    values["has_license"] = parse_flag(row["has_license"], path, line)
    values["commute_km"] = commute_km
    return values


def read_survey(households_path: str, persons_path: str, activities_path: str) -> Tuple[SurveyHousehold, ...]:
    """
    读取调查样本的家庭、人员和活动三张表

    Args:
        households_path: 家庭表
        persons_path: 人员表
        activities_path: 活动表

    Returns:
        Tuple[SurveyHousehold, ...]: 按文件顺序排列的原型家庭
    """
    programs = read_programs(activities_path)
    persons_frame = read_table(persons_path, PERSON_COLUMNS, dtype={"person_id": str, "household_id": str})
    members: Dict[str, List[SurveyPerson]] = defaultdict(list)
    seen = set()
    for row_index, row in persons_frame.iterrows():
        line = row_line(row_index)
        person_id = str(row["person_id"]).strip()
        if person_id in seen:
            raise ScenarioError(f"duplicate person id '{person_id}'", persons_path, line)
        seen.add(person_id)
        if person_id not in programs:
            raise ScenarioError(f"person '{person_id}' has no activity program", persons_path, line)
        household_id = str(row["household_id"]).strip()
        members[household_id].append(SurveyPerson(
            id=person_id,
            household_id=household_id,
            program=programs[person_id],
            **parse_person_row(row, persons_path, line),
        ))
    orphans = sorted(set(programs) - seen)
    if orphans:
        raise ScenarioError(f"activities for unknown persons {orphans[:5]}", activities_path)

    households_frame = read_table(households_path, HOUSEHOLD_COLUMNS,
                                  dtype={"household_id": str, "household_type": str})
    households = []
    for row_index, row in households_frame.iterrows():
        line = row_line(row_index)
        household_id = str(row["household_id"]).strip()
        if not members.get(household_id):
            raise ScenarioError(f"household '{household_id}' has no members", households_path, line)
        try:
            n_cars = int(row["n_cars"])
        except (TypeError, ValueError) as e:
            raise ScenarioError(f"malformed n_cars: {e}", households_path, line) from e
        if n_cars < 0:
            raise ScenarioError("n_cars must be non-negative", households_path, line)
        households.append(SurveyHousehold(
            id=household_id,
            household_type=str(row["household_type"]).strip(),
            n_cars=n_cars,
            members=tuple(members.pop(household_id)),
        ))
    if members:
        raise ScenarioError(f"persons reference unknown households {sorted(members)[:5]}", persons_path)
    logger.info(f"Loaded survey: {len(households)} households, {len(seen)} persons")
    return tuple(households)


def read_marginals(path: str) -> Dict[str, ZoneMarginals]:
    """
    读取各小区的边际分布

    列名为 zone_id、hhtype:<家庭类型> 以及 <属性>:<类别>

    Args:
        path: 边际分布文件

    Returns:
        Dict[str, ZoneMarginals]: 小区ID -> 边际分布（文件顺序）
    """
    frame = read_table(path, ["zone_id"], dtype={"zone_id": str})
    type_columns = {}
    person_columns = {}
    for column in frame.columns:
        if column == "zone_id":
            continue
        if column.startswith(HOUSEHOLD_TYPE_PREFIX):
            type_columns[column] = column[len(HOUSEHOLD_TYPE_PREFIX):]
            continue
        attribute, _, category = column.partition(":")
        if attribute not in PERSON_ATTRIBUTES or category not in PERSON_ATTRIBUTES[attribute]:
            raise ScenarioError(f"unknown marginal column '{column}'", path, 1)
        person_columns[column] = (attribute, category)
    if not type_columns:
        raise ScenarioError("no household type columns (hhtype:<type>)", path, 1)

    marginals: Dict[str, ZoneMarginals] = {}
    for row_index, row in frame.iterrows():
        line = row_line(row_index)
        zone_id = str(row["zone_id"]).strip()
        if zone_id in marginals:
            raise ScenarioError(f"duplicate zone '{zone_id}'", path, line)
        values = {}
        for column in list(type_columns) + list(person_columns):
            value = pd.to_numeric(row[column], errors="coerce")
            if pd.isna(value) or value < 0:
                raise ScenarioError(f"column '{column}' must be a non-negative number", path, line)
            values[column] = float(value)
        households = {t: values[c] for c, t in type_columns.items()}
        if sum(households.values()) <= 0 and any(values[c] > 0 for c in person_columns):
            raise ScenarioError("populated zone without positive household type count", path, line)
        marginals[zone_id] = ZoneMarginals(
            zone_id=zone_id,
            household_types=households,
            person_totals={key: values[c] for c, key in person_columns.items()},
        )
    return marginals

