# 通用层初始化文件

"""
通用层模块

该模块提供了各个层共用的基础组件，包括：
- utils: 目录、路径、随机数派生、分隔文本读写等工具函数
- activity: 活动、活动目的与周历
- modes: 交通方式
- exceptions: 异常定义
- json_utils: 运行元数据行与汇总文件的JSON序列化
"""

from . import utils
from . import activity
from . import modes
from . import exceptions

__all__ = ['utils', 'activity', 'modes', 'exceptions']
