# 人口合成层初始化文件

"""
人口合成层模块

两阶段人口合成：
- ipf_fit: 按小区边际分布拟合调查家庭权重
- draw_population: 按家庭类型依权重有放回地抽取原型家庭并复制
- synthesize_population: 对所有小区执行上述两步
- read_survey / read_marginals: 调查样本与边际分布读取
- write_population / read_population: 合成人口文件读写
"""

from .model import SurveyPerson, SurveyHousehold, ZoneMarginals, Person, Household, Population
from .ipf import WeightedSurvey, IpfResult, ipf_fit
from .synthesis import draw_population, synthesize_population
from .survey import read_survey, read_marginals
from .io import write_population, read_population

__all__ = [
    'SurveyPerson',
    'SurveyHousehold',
    'ZoneMarginals',
    'Person',
    'Household',
    'Population',
    'WeightedSurvey',
    'IpfResult',
    'ipf_fit',
    'draw_population',
    'synthesize_population',
    'read_survey',
    'read_marginals',
    'write_population',
    'read_population'
]
