# 配置模块

import math
import os
import yaml
from loguru import logger
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from common.exceptions import ConfigError
from common.utils import resolve_path

ModeName = Literal[
    "walking",
    "cycling",
    "public_transport",
    "car_driver",
    "car_passenger",
    "carsharing_station",
    "carsharing_freefloat",
]
ReschedulingName = Literal["none", "truncate_day", "skip_keep_last"]
ExtensionName = Literal["ridesharing", "carsharing"]

DEFAULT_DISTANCE_BINS = [float(k) for k in range(0, 11)] + [25.0, 50.0, math.inf]


class StrictModel(BaseModel):
    """严格配置模型：未知键视为错误"""
    model_config = ConfigDict(extra="forbid")


class WorldSection(StrictModel):
    """[world] 场景文件"""
    zones: str = Field(..., description="小区文件")
    modes: List[ModeName] = Field(..., min_length=1, description="场景包含的交通方式")
    purposes: List[str] = Field(default_factory=list, description="活动目的")
    time: Dict[str, str] = Field(..., description="方式 -> 出行时间矩阵文件")
    cost: Dict[str, str] = Field(..., description="方式 -> 出行费用矩阵文件")
    distance: str = Field(..., description="道路距离矩阵文件")
    commuting: Dict[Literal["work", "education"], str] = Field(default_factory=dict, description="通勤矩阵")

    @model_validator(mode="after")
    def _matrices_cover_modes(self) -> "WorldSection":
        for kind, files in (("time", self.time), ("cost", self.cost)):
            unknown = sorted(set(files) - set(self.modes))
            if unknown:
                raise ValueError(f"{kind} matrices for unknown modes {unknown}")
            missing = sorted(set(self.modes) - set(files))
            if missing:
                raise ValueError(f"{kind} matrices missing for modes {missing}")
        return self


class PopulationSection(StrictModel):
    """[population] 人口合成"""
    households: str
    persons: str
    activities: str
    marginals: str
    seed: int = 1
    ipf_tolerance: float = Field(1.0e-4, gt=0)
    ipf_max_iterations: int = Field(1000, ge=1)
    sample_fraction: float = Field(1.0, gt=0, le=1)
    jobs: int = Field(1, ge=1)


class LongtermSection(StrictModel):
    """[longterm] 长期决策"""
    seed: int = 2
    electric_share: float = Field(0.0, ge=0, le=1)
    carsharing_membership_share: float = Field(0.0, ge=0, le=1)


class ChoiceSection(StrictModel):
    """[choice] 选择模型参数"""
    mode_choice: str
    dest_choice: str
    dest_scaling: str
    transit_pass: str
    destination_skim_mode: ModeName = "car_driver"
    excluded_modes: List[ModeName] = Field(default_factory=list)


class EngineSection(StrictModel):
    """[engine] 一周模拟"""
    rescheduling: ReschedulingName = "skip_keep_last"
    seed: int = 42
    day_start_lead_min: int = Field(120, ge=0)
    check_invariants: bool = False


class RideshareSection(StrictModel):
    lookahead_min: int = Field(30, ge=0)
    max_wait_min: int = Field(30, ge=0)
    check_interval_min: int = Field(5, ge=1)
    seats: int = Field(3, ge=0)


class CarsharingSection(StrictModel):
    fleet: Optional[str] = None


class ExtensionsSection(StrictModel):
    """[extensions] 拼车与汽车共享扩展"""
    enabled: List[ExtensionName] = Field(default_factory=list)
    rideshare: RideshareSection = Field(default_factory=RideshareSection)
    carsharing: CarsharingSection = Field(default_factory=CarsharingSection)


class OutputSection(StrictModel):
    """[output] 结果输出"""
    directory: str = "results"
    distance_bins: List[float] = Field(default_factory=lambda: list(DEFAULT_DISTANCE_BINS))
    od_day_types: bool = False

    @field_validator("distance_bins")
    @classmethod
    def _monotonic(cls, bins: List[float]) -> List[float]:
        if len(bins) < 2 or any(b >= a for a, b in zip(bins[1:], bins[:-1])):
            raise ValueError("distance_bins must be strictly increasing with at least two edges")
        return bins


class LoggingSection(StrictModel):
    level: str = "INFO"
    file: str = "logs/simulation.log"
    max_size: int = 10485760
    backup_count: int = 5
    format: Optional[str] = None


class ScenarioManifest(StrictModel):
    """场景清单：所有配置节"""
    world: WorldSection
    population: PopulationSection
    longterm: LongtermSection = Field(default_factory=LongtermSection)
    choice: ChoiceSection
    engine: EngineSection = Field(default_factory=EngineSection)
    extensions: ExtensionsSection = Field(default_factory=ExtensionsSection)
    output: OutputSection = Field(default_factory=OutputSection)
    logging: LoggingSection = Field(default_factory=LoggingSection)

    def run_metadata(self) -> Dict[str, Any]:
        """
        写在每个输出文件首行的运行元数据
        """
        return {
            "seed": self.engine.seed,
            "population_seed": self.population.seed,
            "rescheduling": self.engine.rescheduling,
            "extensions": sorted(self.extensions.enabled),
        }


def _resolve(manifest: ScenarioManifest, base_dir: str) -> ScenarioManifest:
    """
    将清单中的相对路径解析为相对于清单目录的路径
    """
    world = manifest.world.model_copy(update={
        "zones": resolve_path(manifest.world.zones, base_dir),
        "time": {m: resolve_path(p, base_dir) for m, p in manifest.world.time.items()},
        "cost": {m: resolve_path(p, base_dir) for m, p in manifest.world.cost.items()},
        "distance": resolve_path(manifest.world.distance, base_dir),
        "commuting": {k: resolve_path(p, base_dir) for k, p in manifest.world.commuting.items()},
    })
    population = manifest.population.model_copy(update={
        name: resolve_path(getattr(manifest.population, name), base_dir)
        for name in ("households", "persons", "activities", "marginals")
    })
    choice = manifest.choice.model_copy(update={
        name: resolve_path(getattr(manifest.choice, name), base_dir)
        for name in ("mode_choice", "dest_choice", "dest_scaling", "transit_pass")
    })
    fleet = manifest.extensions.carsharing.fleet
    extensions = manifest.extensions.model_copy(update={
        "carsharing": CarsharingSection(fleet=resolve_path(fleet, base_dir) if fleet else None)
    })
    output = manifest.output.model_copy(update={"directory": resolve_path(manifest.output.directory, base_dir)})
    return manifest.model_copy(update={
        "world": world,
        "population": population,
        "choice": choice,
        "extensions": extensions,
        "output": output,
    })


class Config:
    """
    配置管理类，用于加载和管理场景清单
    """

    def __init__(self, config_path: str = None):
        """
        初始化配置管理器

        Args:
            config_path: 配置文件路径，默认为None，将使用默认路径
        """
        self.config_path = config_path or os.path.join(os.path.dirname(__file__), "config.yaml")
        self.config: Dict[str, Any] = {}
        self.load_config()

    @property
    def base_dir(self) -> str:
        return os.path.dirname(os.path.abspath(self.config_path))

    def load_config(self) -> bool:
        """
        加载配置文件

        Returns:
            bool: 加载是否成功
        """
        try:
            if not os.path.exists(self.config_path):
                logger.warning(f"Config file not found: {self.config_path}")
                return False

            with open(self.config_path, "r", encoding="utf-8") as f:
                self.config = yaml.safe_load(f) or {}

            logger.info(f"Config loaded from {self.config_path}")
            return True
        except BaseException as e:
            logger.error(f"Failed to load config: {str(e)}")
            return False

    def save_config(self, path: Optional[str] = None, resolved: bool = False) -> bool:
        """
        保存配置到文件

        Args:
            path: 目标路径，默认写回 config_path
            resolved: 为 True 时写出校验后的清单（路径已解析为绝对路径）

        Returns:
            bool: 保存是否成功
        """
        path = path or self.config_path
        try:
            data = self.manifest().model_dump() if resolved else self.config
            with open(path, "w", encoding="utf-8") as f:
                yaml.dump(data, f, default_flow_style=False, allow_unicode=True)

            logger.info(f"Config saved to {path}")
            return True
        except BaseException as e:
            logger.error(f"Failed to save config: {str(e)}")
            return False

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置项

        Args:
            key: 配置项键名
            default: 默认值，如果配置项不存在则返回此值

        Returns:
            Any: 配置项值
        """
        return self.config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """
        设置配置项

        Args:
            key: 配置项键名
            value: 配置项值
        """
        self.config[key] = value

    def apply_overrides(self, seed: Optional[int] = None, rescheduling: Optional[str] = None,
                        extensions: Optional[List[str]] = None) -> None:
        """
        应用命令行覆盖项

        Args:
            seed: 模拟随机种子
            rescheduling: 重排策略
            extensions: 启用的扩展列表
        """
        if seed is not None or rescheduling is not None:
            engine = dict(self.get("engine") or {})
            if seed is not None:
                engine["seed"] = seed
            if rescheduling is not None:
                engine["rescheduling"] = rescheduling
            self.set("engine", engine)
        if extensions is not None:
            self.set("extensions", dict(self.get("extensions") or {}, enabled=list(extensions)))

    def manifest(self) -> ScenarioManifest:
        """
        严格校验配置并返回场景清单，相对路径已解析

        Returns:
            ScenarioManifest: 校验后的清单
        """
        if not self.config and not os.path.exists(self.config_path):
            raise ConfigError(f"{self.config_path}: file not found")
        try:
            manifest = ScenarioManifest.model_validate(self.config)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(part) for part in error['loc']) or '<root>'}: {error['msg']}"
                for error in e.errors()
            )
            raise ConfigError(f"{self.config_path}: {problems}") from e
        return _resolve(manifest, self.base_dir)

    def get_population_config(self) -> Dict[str, Any]:
        return self.get("population", {})

    def get_logger_config(self) -> Dict[str, Any]:
        """
        获取日志配置

        Returns:
            Dict[str, Any]: 日志配置
        """
        return self.get("logging", {})
