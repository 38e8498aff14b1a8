# 场景层初始化文件

"""
场景层模块

该模块负责加载并保存不可变的静态场景：
- Zone: 交通小区及其吸引量、汽车共享属性
- SkimMatrixSet: 按方式划分的时间、费用矩阵和道路距离矩阵
- CommutingMatrix: 通勤矩阵
- World: 场景整体，提供 travel() 查询
- load_scenario / save_scenario: 场景文件读写
"""

from .zone import Zone
from .skims import SkimMatrixSet, Travel
from .world import World, CommutingMatrix
from .loader import load_scenario, save_scenario

__all__ = [
    'Zone',
    'SkimMatrixSet',
    'Travel',
    'World',
    'CommutingMatrix',
    'load_scenario',
    'save_scenario'
]
