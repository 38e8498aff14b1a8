#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
运行出行需求模拟单元测试的脚本
"""

import os
import sys
import unittest
import argparse

from hypothesis import settings
from loguru import logger

ROOT = os.path.dirname(os.path.abspath(__file__))


def run_tests(modules=None, verbose=False, profile=None):
    """
    运行单元测试

    Args:
        modules: 测试模块名列表，例如 ["world", "engine"]；为空时运行全部
        verbose: 是否显示详细信息
        profile: hypothesis 配置名（quick、full 或 invariants）

    Returns:
        测试结果
    """
    sys.path.insert(0, ROOT)
    test_dir = os.path.join(ROOT, "tests")

    if profile:
        # 测试用的 hypothesis 配置在 tests/helpers.py 中注册
        import tests.helpers  # noqa: F401
        settings.load_profile(profile)

    # 测试期间只保留警告以上的日志
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")

    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for pattern in [f"test_{name}.py" for name in modules] if modules else ["test_*.py"]:
        suite.addTests(loader.discover(test_dir, pattern=pattern))

    runner = unittest.TextTestRunner(verbosity=2 if verbose else 1)
    return runner.run(suite)


def main():
    """
    主函数
    """
    parser = argparse.ArgumentParser(description="运行出行需求模拟的单元测试")
    parser.add_argument("-t", "--test", action="append",
                        help="指定要运行的测试模块，可重复（例如：-t world -t engine）")
    parser.add_argument("-v", "--verbose", action="store_true", help="显示详细测试信息")
    parser.add_argument("--profile", choices=["quick", "full", "invariants"], help="随机性质测试的规模")
    args = parser.parse_args()

    result = run_tests(args.test, args.verbose, args.profile)

    print("\n测试结果摘要:")
    print(f"运行测试: {result.testsRun}")
    print(f"成功: {result.testsRun - len(result.failures) - len(result.errors) - len(result.skipped)}")
    print(f"失败: {len(result.failures)}")
    print(f"错误: {len(result.errors)}")
    print(f"跳过: {len(result.skipped)}")

    sys.exit(0 if result.wasSuccessful() else 1)


if __name__ == "__main__":
    main()
