# 流程编排

import os
from concurrent.futures import ProcessPoolExecutor
from loguru import logger
from typing import Any, Dict, List, Optional, Sequence

from config import Config, ScenarioManifest
from common.activity import EDUCATION, FLEXIBLE_PURPOSES, WORK
from common.exceptions import ScenarioError, UnknownCategoryError
from common.json_utils import dumps
from common.utils import ensure_dir
from choice.params import ChoiceParams, load_params
from engine.simulator import SimulationOptions, SimulationResult, simulate_week
from engine.trip import read_trips, write_trips
from longterm.assignment import LongTermAssignment, read_assignments, run_longterm, write_assignments
from output.writer import write_analysis
from population.io import read_population, write_population
from population.model import Population
from population.survey import read_marginals, read_survey
from population.synthesis import synthesize_population
from world.loader import load_scenario
from world.world import World

POPULATION_DIR = "population"
LONGTERM_DIR = "longterm"
ANALYSIS_DIR = "analysis"
TRIPS_FILE = "trips.csv"
SUMMARY_FILE = "summary.json"
MANIFEST_FILE = "manifest.yaml"


class Pipeline:
    """
    流程编排类：校验、人口合成、长期决策、模拟和统计各阶段共享同一份场景清单
    """

    def __init__(self, config: Config, output_dir: Optional[str] = None):
        """
        初始化流程

        Args:
            config: 已应用命令行覆盖项的配置
            output_dir: 输出目录，默认取清单 [output] 节
        """
        self.config = config
        self.manifest: ScenarioManifest = config.manifest()
        self.output_dir = output_dir or self.manifest.output.directory
        self._world: Optional[World] = None
        self._params: Optional[ChoiceParams] = None

    @property
    def metadata(self) -> Dict[str, Any]:
        return self.manifest.run_metadata()

    @property
    def world(self) -> World:
        if self._world is None:
            self._world = load_scenario(self.manifest.world, self.manifest.extensions.carsharing.fleet)
        return self._world

    @property
    def params(self) -> ChoiceParams:
        if self._params is None:
            self._params = load_params(self.manifest.choice)
        return self._params

    def path(self, *parts: str) -> str:
        return os.path.join(self.output_dir, *parts)

    def validate(self) -> Dict[str, int]:
        """
        读取并校验全部输入，不写任何文件

        Returns:
            Dict[str, int]: 输入概况
        """
        world = self.world
        params = self.params
        section = self.manifest.population
        survey = read_survey(section.households, section.persons, section.activities)
        marginals = read_marginals(section.marginals)
        unknown = sorted(set(marginals) - set(world.zone_ids))
        if unknown:
            raise ScenarioError(f"marginals reference unknown zones {unknown}", section.marginals)

        purposes = {a.purpose for h in survey for p in h.members for a in p.program}
        for kind in (WORK, EDUCATION):
            if kind in purposes and kind not in world.commuting:
                raise ScenarioError(f"survey programs contain {kind} activities but no {kind} commuting matrix "
                                    f"is configured", section.activities)
        for purpose in sorted(purposes & set(FLEXIBLE_PURPOSES)):
            try:
                params.destination.time(purpose)
                params.destination.gamma(purpose, "other")
            except UnknownCategoryError as e:
                raise ScenarioError(f"no destination choice parameters for purpose '{purpose}': {e}",
                                    section.activities) from e
        summary = {
            "zones": len(world),
            "modes": len(world.modes),
            "survey_households": len(survey),
            "survey_persons": sum(len(h.members) for h in survey),
            "marginal_zones": len(marginals),
        }
        logger.info(f"Scenario is valid: {summary}")
        return summary

    def synthesize(self) -> Population:
        """
        合成人口并写出到 <output>/population
        """
        section = self.manifest.population
        survey = read_survey(section.households, section.persons, section.activities)
        marginals = read_marginals(section.marginals)
        population = synthesize_population(
            survey, marginals, self.world.zone_ids, section.seed,
            tolerance=section.ipf_tolerance,
            max_iterations=section.ipf_max_iterations,
            sample_fraction=section.sample_fraction,
            jobs=section.jobs,
        )
        write_population(population, self.path(POPULATION_DIR), self.metadata)
        return population

    def load_population(self) -> Population:
        directory = self.path(POPULATION_DIR)
        if not os.path.isdir(directory):
            raise ScenarioError("population not found, run 'synthesize' first", directory)
        return read_population(directory)

    def longterm(self, population: Optional[Population] = None) -> LongTermAssignment:
        """
        执行长期决策并写出到 <output>/longterm
        """
        population = population if population is not None else self.load_population()
        assignment = run_longterm(self.world, population, self.params.transit_pass, self.manifest.longterm)
        write_assignments(assignment, population, self.path(LONGTERM_DIR), self.metadata)
        return assignment

    def load_assignment(self, population: Population) -> LongTermAssignment:
        directory = self.path(LONGTERM_DIR)
        if not os.path.isdir(directory):
            raise ScenarioError("long-term decisions not found, run 'longterm' first", directory)
        return read_assignments(directory, population)

    def simulate(self, population: Optional[Population] = None,
                 assignment: Optional[LongTermAssignment] = None) -> SimulationResult:
        """
        模拟一周并写出出行文件、运行概况与本次运行所用的清单（覆盖项已应用）
        """
        population = population if population is not None else self.load_population()
        assignment = assignment if assignment is not None else self.load_assignment(population)
        result = simulate_week(self.world, population, assignment, self.params,
                               SimulationOptions.from_manifest(self.manifest), self.manifest.engine.seed)
        write_trips(result.trips, self.path(TRIPS_FILE), self.metadata)
        with open(self.path(SUMMARY_FILE), "w", encoding="utf-8") as f:
            f.write(dumps({**self.metadata, **result.summary()}, indent=2) + "\n")
        self.config.save_config(self.path(MANIFEST_FILE), resolved=True)
        return result

    def analyze(self, population: Optional[Population] = None) -> List[str]:
        """
        由出行文件计算统计并写出到 <output>/analysis；有合成人口时另按就业状况统计
        """
        trips = read_trips(self.path(TRIPS_FILE))
        population_dir = self.path(POPULATION_DIR)
        if population is None and os.path.isdir(population_dir):
            population = read_population(population_dir)
        employment = {p.id: p.employment for p in population.persons()} if population is not None else None
        return write_analysis(trips, self.world.zone_ids, self.path(ANALYSIS_DIR),
                              self.manifest.output.distance_bins, employment,
                              self.manifest.output.od_day_types, self.metadata)

    def run_all(self) -> SimulationResult:
        """
        依次执行全部阶段
        """
        self.validate()
        population = self.synthesize()
        assignment = self.longterm(population)
        result = self.simulate(population, assignment)
        self.analyze(population)
        return result


def _simulate_seed(config_path: str, overrides: Dict[str, Any], seed: int, output_dir: str) -> Dict[str, int]:
    config = Config(config_path)
    config.apply_overrides(seed=seed, **overrides)
    base = Pipeline(config, output_dir)
    target = Pipeline(config, os.path.join(output_dir, f"seed_{seed}"))
    population = base.load_population()
    result = target.simulate(population, base.load_assignment(population))
    target.analyze(population)
    return result.summary()


def run_seeds(config_path: str, overrides: Dict[str, Any], seeds: Sequence[int], jobs: int = 1) -> Dict[int, Dict[str, int]]:
    """
    以多个模拟种子独立运行，每个种子一个输出目录 <output>/seed_<n>；
    人口与长期决策读自 <output>

    Args:
        config_path: 清单路径
        overrides: 除种子外的命令行覆盖项
        seeds: 模拟种子
        jobs: 并行进程数

    Returns:
        Dict[int, Dict[str, int]]: 种子 -> 运行概况
    """
    config = Config(config_path)
    config.apply_overrides(**overrides)
    output_dir = Pipeline(config).output_dir
    ensure_dir(output_dir)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {seed: executor.submit(_simulate_seed, config_path, overrides, seed, output_dir) for seed in seeds}
            return {seed: future.result() for seed, future in futures.items()}
    return {seed: _simulate_seed(config_path, overrides, seed, output_dir) for seed in seeds}
