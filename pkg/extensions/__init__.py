# 扩展层初始化文件

"""
扩展层模块

叠加在基础模型上的两个扩展：
- carsharing: 站点式与自由流动汽车共享的可用性规则和车队状态
- ridesharing: 驾车者发布拼车机会、乘客请求与等待状态
"""

from .carsharing import CarsharingRules, FreefloatFleet, ModeSetDelta, carsharing_availability
from .ridesharing import RideOffer, RideRequest, RideBook, RidesharingExtension, match

__all__ = [
    'CarsharingRules',
    'FreefloatFleet',
    'ModeSetDelta',
    'carsharing_availability',
    'RideOffer',
    'RideRequest',
    'RideBook',
    'RidesharingExtension',
    'match'
]
