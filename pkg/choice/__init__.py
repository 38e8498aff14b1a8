# 选择模型层初始化文件

"""
选择模型层模块

离散选择核心：
- available_modes: 方式可用性规则
- mode_utility / mode_probabilities: 方式选择多项Logit
- destination_utility / destination_probabilities: 带 γ 缩放的目的地选择多项Logit
- sample: 逆累积分布抽样
- ChoiceModel: 供模拟引擎调用的选择入口
"""

from common.modes import Mode
from .context import ChoiceContext, CarsharingSnapshot
from .params import CoefficientTable, ModeChoiceParams, DestinationChoiceParams, ChoiceParams, load_params
from .availability import available_modes
from .sampling import ChoiceDistribution, sample
from .mode_choice import mode_utility, mode_probabilities
from .destination_choice import destination_utility, destination_utilities, destination_probabilities
from .model import ChoiceModel

__all__ = [
    'Mode',
    'ChoiceContext',
    'CarsharingSnapshot',
    'CoefficientTable',
    'ModeChoiceParams',
    'DestinationChoiceParams',
    'ChoiceParams',
    'load_params',
    'available_modes',
    'ChoiceDistribution',
    'sample',
    'mode_utility',
    'mode_probabilities',
    'destination_utility',
    'destination_utilities',
    'destination_probabilities',
    'ChoiceModel'
]
