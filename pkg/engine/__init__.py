# 模拟引擎层初始化文件

"""
模拟引擎模块

该模块实现一周的分钟步长模拟：
- state: 个体状态机与待出发出行
- carpool: 家庭车辆池
- rescheduling: 计划与实际时间偏离后的重排策略
- trip: 出行记录与出行文件
- simulator: 主循环与状态转移
"""

from .carpool import CarPool
from .rescheduling import BaseRescheduling, NoRescheduling, TruncateDay, SkipKeepLast, ReschedulingFactory, reschedule
from .simulator import ActivityLogEntry, SimulationOptions, SimulationResult, Simulator, simulate_week
from .state import Agent, PendingTrip, Phase
from .trip import TripRecord, TRIP_COLUMNS, read_trips, write_trips

__all__ = [
    'CarPool',
    'BaseRescheduling',
    'NoRescheduling',
    'TruncateDay',
    'SkipKeepLast',
    'ReschedulingFactory',
    'reschedule',
    'ActivityLogEntry',
    'SimulationOptions',
    'SimulationResult',
    'Simulator',
    'simulate_week',
    'Agent',
    'PendingTrip',
    'Phase',
    'TripRecord',
    'TRIP_COLUMNS',
    'read_trips',
    'write_trips'
]
