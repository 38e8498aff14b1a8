# 输出层初始化文件

"""
输出层模块

由出行文件计算的统计，均为出行文件的纯函数：
- analysis: 方式划分、出行距离分布、在途人数、分小时OD矩阵
- writer: 将统计写为分隔文本文件
"""

from .analysis import (OdMatrix, en_route_by_day, en_route_frame, modal_split, od_matrices, persons_en_route,
                       trip_length_distribution, validate_bins)
from .writer import write_analysis

__all__ = [
    'OdMatrix',
    'modal_split',
    'trip_length_distribution',
    'validate_bins',
    'persons_en_route',
    'en_route_frame',
    'en_route_by_day',
    'od_matrices',
    'write_analysis'
]
