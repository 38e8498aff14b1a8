# 长期决策层初始化文件

"""
长期决策层模块

模拟开始前固定的决策：
- assign_fixed_places: 基于通勤矩阵的工作地/学校排序匹配
- assign_cars: 车辆拥有（中型车，可选电动车比例）
- transit_pass_probability / assign_transit_passes: 公交月票二项Logit
- run_longterm: 执行全部长期决策
- write_assignments / read_assignments: 长期决策文件读写
"""

from .fixed_places import assign_fixed_places, expand_slots, rank_match
from .cars import Car, assign_cars
from .transit_pass import transit_pass_probability, transit_pass_utility, assign_transit_passes
from .assignment import LongTermAssignment, run_longterm, write_assignments, read_assignments

__all__ = [
    'assign_fixed_places',
    'expand_slots',
    'rank_match',
    'Car',
    'assign_cars',
    'transit_pass_probability',
    'transit_pass_utility',
    'assign_transit_passes',
    'LongTermAssignment',
    'run_longterm',
    'write_assignments',
    'read_assignments'
]
