# 选择模型参数表

from dataclasses import dataclass
from loguru import logger
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Tuple

import pandas as pd

from common.exceptions import ScenarioError, UnknownCategoryError
from common.utils import read_table, row_line

PARAM_COLUMNS = ["coefficient", "category", "subcategory", "estimate", "calibration"]

Key = Tuple[str, str, str]


class CoefficientTable:
    """
    系数表：(coefficient, category, subcategory) -> estimate + calibration
    """

    def __init__(self, name: str, entries: Mapping[Key, float]):
        """
        初始化系数表

        Args:
            name: 表名，用于错误信息
            entries: 键 -> 有效值（估计值加校准值）
        """
        self.name = name
        self._entries: Mapping[Key, float] = MappingProxyType(dict(entries))

    @classmethod
    def read_csv(cls, path: str, name: str = None) -> "CoefficientTable":
        """
        读取参数文件，列为 coefficient, category, subcategory, estimate, calibration；
        校准值缺省为 0

        Args:
            path: 参数文件路径
            name: 表名，默认为文件路径

        Returns:
            CoefficientTable: 系数表
        """
        frame = read_table(path, PARAM_COLUMNS, dtype={"coefficient": str, "category": str, "subcategory": str})
        entries: Dict[Key, float] = {}
        for row_index, row in frame.iterrows():
            line = row_line(row_index)
            key = tuple("" if pd.isna(row[c]) else str(row[c]).strip() for c in ("coefficient", "category", "subcategory"))
            if not key[0]:
                raise ScenarioError("empty coefficient name", path, line)
            if key in entries:
                raise ScenarioError(f"duplicate coefficient {'/'.join(key)}", path, line)
            estimate = pd.to_numeric(row["estimate"], errors="coerce")
            calibration = pd.to_numeric(row["calibration"], errors="coerce")
            if pd.isna(estimate):
                estimate = 0.0
            if pd.isna(calibration):
                calibration = 0.0
            entries[key] = float(estimate) + float(calibration)
        logger.debug(f"Loaded {len(entries)} coefficients from {path}")
        return cls(name or path, entries)

    def value(self, coefficient: str, category: str = "", subcategory: str = "") -> float:
        try:
            return self._entries[(coefficient, category, subcategory)]
        except KeyError:
            raise UnknownCategoryError(
                f"{self.name}: no coefficient for ({coefficient}, {category}, {subcategory})"
            ) from None

    def value_or(self, coefficient: str, category: str = "", subcategory: str = "", default: float = 0.0) -> float:
        return self._entries.get((coefficient, category, subcategory), default)

    def covers(self, category: str) -> bool:
        """
        表中是否有以该类别为 category 的行
        """
        return any(key[1] == category for key in self._entries)

    def replace(self, updates: Mapping[Key, float]) -> "CoefficientTable":
        """
        返回替换若干系数后的新表
        """
        entries = dict(self._entries)
        entries.update(updates)
        return CoefficientTable(self.name, entries)

    def __contains__(self, key: Key) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def items(self) -> Iterable[Tuple[Key, float]]:
        return self._entries.items()


@dataclass(frozen=True)
class ModeChoiceParams:
    """
    方式选择模型参数

    步行为参照方式：表中没有的步行项取 0。汽车共享方式没有专属行时沿用 car_driver 的行。
    """
    coefficients: CoefficientTable

    def alternative(self, mode: str) -> str:
        if mode in ("carsharing_station", "carsharing_freefloat") and not self.coefficients.covers(mode):
            return "car_driver"
        return mode

    def specific(self, coefficient: str, mode: str, subcategory: str = "") -> float:
        """
        方式专属系数
        """
        if mode == "walking":
            return self.coefficients.value_or(coefficient, mode, subcategory)
        return self.coefficients.value(coefficient, self.alternative(mode), subcategory)

    def generic(self, coefficient: str) -> float:
        return self.coefficients.value(coefficient)


@dataclass(frozen=True)
class DestinationChoiceParams:
    """
    目的地选择模型参数与 γ 缩放参数
    """
    coefficients: CoefficientTable
    scaling: CoefficientTable

    def time(self, purpose: str) -> float:
        return self.coefficients.value("time", "purpose", purpose)

    def time_employment(self, employment: str) -> float:
        return self.coefficients.value("time", "employment", employment)

    def cost(self, purpose: str) -> float:
        return self.coefficients.value("cost", "purpose", purpose)

    def opportunities(self, purpose: str) -> float:
        return self.coefficients.value("opportunities", "purpose", purpose)

    def gamma(self, purpose: str, employment: str) -> float:
        """
        γ = γ_purpose · γ_employment
        """
        return self.scaling.value("gamma", "purpose", purpose) * self.scaling.value("gamma", "employment", employment)


@dataclass(frozen=True)
class ChoiceParams:
    """
    选择模型使用的全部参数
    """
    mode: ModeChoiceParams
    destination: DestinationChoiceParams
    transit_pass: CoefficientTable
    destination_skim_mode: str = "car_driver"
    excluded_modes: frozenset = frozenset()


def load_params(section) -> ChoiceParams:
    """
    读取 [choice] 节引用的四个参数文件

    Args:
        section: ChoiceSection，路径已解析

    Returns:
        ChoiceParams: 选择模型参数
    """
    return ChoiceParams(
        mode=ModeChoiceParams(CoefficientTable.read_csv(section.mode_choice, "mode_choice")),
        destination=DestinationChoiceParams(
            CoefficientTable.read_csv(section.dest_choice, "dest_choice"),
            CoefficientTable.read_csv(section.dest_scaling, "dest_scaling"),
        ),
        transit_pass=CoefficientTable.read_csv(section.transit_pass, "transit_pass"),
        destination_skim_mode=section.destination_skim_mode,
        excluded_modes=frozenset(section.excluded_modes),
    )
