# 选择模型入口

from typing import Iterable

import numpy as np

from common.modes import Mode, ordered
from choice.availability import available_modes
from choice.context import ChoiceContext
from choice.destination_choice import destination_probabilities
from choice.mode_choice import mode_probabilities
from choice.params import ChoiceParams
from choice.sampling import sample


class ChoiceModel:
    """
    目的地选择与方式选择，供模拟引擎调用
    """

    def __init__(self, world, params: ChoiceParams):
        """
        初始化选择模型

        Args:
            world: 场景
            params: 选择模型参数
        """
        self.world = world
        self.params = params

    def choose_destination(self, context: ChoiceContext, rng: np.random.Generator) -> str:
        distribution = destination_probabilities(
            context, self.world, self.params.destination, self.params.destination_skim_mode
        )
        return sample(distribution, rng)

    def choose_mode(self, context: ChoiceContext, destination: str, rng: np.random.Generator,
                    exclude: Iterable[Mode] = ()) -> Mode:
        """
        在可用方式上抽取方式

        Args:
            context: 选择情境
            destination: 目的地小区
            rng: 该人员的随机数流
            exclude: 额外排除的方式（如等车超时后的搭车）

        Returns:
            Mode: 抽中的方式
        """
        modes = available_modes(context)
        remaining = ordered(set(modes) - set(exclude))
        distribution = mode_probabilities(
            context, self.world, context.current_zone, destination, self.params.mode, remaining or modes
        )
        return sample(distribution, rng)
