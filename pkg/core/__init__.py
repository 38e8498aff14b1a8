# 核心层初始化文件

"""
核心层模块

该模块提供流程编排：
- Pipeline: 依次执行校验、人口合成、长期决策、一周模拟与统计，各阶段读写 <output> 下的中间文件
- run_seeds: 以多个模拟种子在进程池中独立运行
"""

from .pipeline import Pipeline, run_seeds

__all__ = ['Pipeline', 'run_seeds']
