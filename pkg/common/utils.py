# 通用工具函数

import os
from loguru import logger
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd

from common.exceptions import ScenarioError
from common.json_utils import metadata_line, parse_metadata_line


def ensure_dir(path: str) -> None:
    """
    确保目录存在，如果不存在则创建

    Args:
        path: 目录路径

    Raises:
        OSError: 目录无法创建（例如路径上已有同名文件）
    """
    if not path:
        return
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        logger.error(f"Failed to create directory {path}: {str(e)}")
        raise


def resolve_path(path: str, base_dir: str) -> str:
    """
    将相对路径解析为相对于清单目录的绝对路径
    """
    if os.path.isabs(path):
        return path
    return os.path.normpath(os.path.join(base_dir, path))


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    由主种子和若干键派生出独立的随机数流

    Args:
        seed: 主种子
        *keys: 派生键，例如小区序号或人员ID

    Returns:
        np.random.Generator: 随机数生成器
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), *[int(k) for k in keys]]))


def read_table(path: str, required: Sequence[str], dtype: Optional[Dict[str, Any]] = None) -> pd.DataFrame:
    """
    读取带表头的分隔文本文件，并检查必需列

    Args:
        path: 文件路径
        required: 必需的列名
        dtype: 列类型

    Returns:
        pd.DataFrame: 读取到的数据
    """
    if not os.path.exists(path):
        raise ScenarioError("file not found", path)
    try:
        frame = pd.read_csv(path, comment="#", dtype=dtype, skipinitialspace=True)
    except (ValueError, pd.errors.ParserError) as e:
        raise ScenarioError(f"cannot parse: {e}", path) from e
    missing = [column for column in required if column not in frame.columns]
    if missing:
        raise ScenarioError(f"missing columns {missing}", path, 1)
    return frame


def row_line(index: int) -> int:
    """
    DataFrame行号转换为文件行号（表头占第1行）
    """
    return int(index) + 2


def write_table(frame: pd.DataFrame, path: str, metadata: Optional[Dict[str, Any]] = None) -> str:
    """
    写出分隔文本文件，首行为运行元数据

    Args:
        frame: 要写出的数据
        path: 目标路径
        metadata: 元数据，写为 "# {json}" 注释行

    Returns:
        str: 写出的路径
    """
    ensure_dir(os.path.dirname(path))
    with open(path, "w", encoding="utf-8", newline="") as f:
        if metadata is not None:
            f.write(metadata_line(metadata))
        frame.to_csv(f, index=False, lineterminator="\n")
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def read_metadata(path: str) -> Dict[str, Any]:
    """
    读取文件首行的运行元数据，没有则返回空字典
    """
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline()
    return parse_metadata_line(first) or {}
