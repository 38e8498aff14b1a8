# 人口数据类型

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple

from common.activity import Activity, EDUCATION, WORK

SEXES = ("female", "male")
AGE_GROUPS = ("0-9", "10-17", "18-25", "26-35", "36-50", "51-60", "61-70", "71+")
EMPLOYMENTS = (
    "fulltime",
    "parttime",
    "unemployed",
    "homemaker",
    "retired",
    "student_primary",
    "student_secondary",
    "student_tertiary",
    "vocational_education",
    "infant",
    "other",
)
CAR_AVAILABILITY = ("none", "personal_car", "after_consultation")

# 边际分布可约束的人员属性
PERSON_ATTRIBUTES: Mapping[str, Tuple[str, ...]] = MappingProxyType({
    "sex": SEXES,
    "age_group": AGE_GROUPS,
    "employment": EMPLOYMENTS,
    "car_availability": CAR_AVAILABILITY,
})


@dataclass(frozen=True)
class SurveyPerson:
    """
    调查样本中的人员（原型）
    """
    id: str
    household_id: str
    sex: str
    age_group: str
    employment: str
    has_license: bool
    car_availability: str
    commute_km: float
    program: Tuple[Activity, ...]

    def category(self, attribute: str) -> str:
        return getattr(self, attribute)


@dataclass(frozen=True)
class SurveyHousehold:
    """
    调查样本中的家庭（原型）
    """
    id: str
    household_type: str
    n_cars: int
    members: Tuple[SurveyPerson, ...]

    def count(self, attribute: str, category: str) -> int:
        """
        统计家庭中某属性取某类别的人数
        """
        return sum(1 for person in self.members if person.category(attribute) == category)


@dataclass(frozen=True)
class ZoneMarginals:
    """
    单个小区的边际分布

    Attributes:
        zone_id: 小区标识
        household_types: 家庭类型 -> 目标户数
        person_totals: (属性, 类别) -> 目标人数
    """
    zone_id: str
    household_types: Mapping[str, float]
    person_totals: Mapping[Tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "household_types", MappingProxyType(dict(self.household_types)))
        object.__setattr__(self, "person_totals", MappingProxyType(dict(self.person_totals)))


@dataclass(frozen=True)
class Person:
    """
    合成人口中的人员，属性和活动计划复制自原型
    """
    id: int
    household_id: int
    home_zone: str
    prototype_id: str
    sex: str
    age_group: str
    employment: str
    has_license: bool
    car_availability: str
    commute_km: float
    program: Tuple[Activity, ...]

    @property
    def works(self) -> bool:
        return any(activity.purpose == WORK for activity in self.program)

    @property
    def studies(self) -> bool:
        return any(activity.purpose == EDUCATION for activity in self.program)

    def needs_place(self, kind: str) -> bool:
        return self.works if kind == WORK else self.studies

    @classmethod
    def clone(cls, prototype: SurveyPerson, person_id: int, household_id: int, home_zone: str) -> "Person":
        return cls(
            id=person_id,
            household_id=household_id,
            home_zone=home_zone,
            prototype_id=prototype.id,
            sex=prototype.sex,
            age_group=prototype.age_group,
            employment=prototype.employment,
            has_license=prototype.has_license,
            car_availability=prototype.car_availability,
            commute_km=prototype.commute_km,
            program=prototype.program,
        )


@dataclass(frozen=True)
class Household:
    """
    合成家庭
    """
    id: int
    home_zone: str
    prototype_id: str
    household_type: str
    n_cars: int
    members: Tuple[Person, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class Population:
    """
    合成人口：按家庭ID排列的家庭及其成员
    """

    def __init__(self, households):
        self._households: Tuple[Household, ...] = tuple(sorted(households, key=lambda h: h.id))
        self._persons: Dict[int, Person] = {}
        self._household_index: Dict[int, Household] = {}
        for household in self._households:
            self._household_index[household.id] = household
            for person in household.members:
                self._persons[person.id] = person

    @property
    def households(self) -> Tuple[Household, ...]:
        return self._households

    def persons(self) -> Iterator[Person]:
        for household in self._households:
            yield from household.members

    def person(self, person_id: int) -> Person:
        return self._persons[person_id]

    def household(self, household_id: int) -> Household:
        return self._household_index[household_id]

    def person_count(self) -> int:
        return len(self._persons)

    def __len__(self) -> int:
        return len(self._households)
