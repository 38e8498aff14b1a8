# 使用示例

import sys

from config import Config
from loguru import logger
from core.pipeline import Pipeline
from output.analysis import modal_split, persons_en_route
from engine.trip import trips_frame


def main():
    """
    示例主函数
    """
    # 加载配置，缩小示例人口
    config = Config()
    config.get_population_config()["sample_fraction"] = 0.2

    try:
        pipeline = Pipeline(config)

        # 示例1：校验场景
        print("\n示例1：校验场景")
        print(f"场景概况: {pipeline.validate()}")

        # 示例2：人口合成与长期决策
        print("\n示例2：人口合成与长期决策")
        population = pipeline.synthesize()
        assignment = pipeline.longterm(population)
        print(f"家庭数: {len(population)}, 人数: {population.person_count()}, "
              f"车辆数: {sum(assignment.car_count(h.id) for h in population.households)}")

        # 示例3：模拟一周并查看方式划分
        print("\n示例3：模拟一周")
        result = pipeline.simulate(population, assignment)
        trips = trips_frame(result.trips)
        print(f"运行概况: {result.summary()}")
        print(modal_split(trips, "purpose").round(3).to_string(index=False))
        print(f"在途人数峰值: {persons_en_route(trips).max()}")

        return 0
    except KeyboardInterrupt:
        print("\n操作被中断")
        return 0
    except BaseException as e:
        logger.error(f"Error: {str(e)}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
