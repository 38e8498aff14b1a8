# 统计结果输出

import os
from loguru import logger
from typing import Any, Dict, List, Mapping, Optional, Sequence

import pandas as pd

from common.utils import ensure_dir, write_table
from output.analysis import (en_route_by_day, en_route_frame, modal_split, od_matrices, persons_en_route,
                             trip_length_distribution)

OD_DIRECTORY = "od"


def write_analysis(trips: pd.DataFrame, zone_ids: Sequence[str], directory: str,
                   bins: Sequence[float], employment: Optional[Mapping[int, str]] = None,
                   od_day_types: bool = False, metadata: Optional[Dict[str, Any]] = None) -> List[str]:
    """
    由出行表计算全部统计并写出

    输出文件：modal_split_<group>.csv、tld_<purpose>.csv、tld_employment_<employment>.csv、
    en_route.csv、en_route_by_day.csv、od/<day>_<hour>_<mode>.csv（仅非空矩阵）

    Args:
        trips: 出行表
        zone_ids: 小区顺序
        directory: 输出目录
        bins: 距离区间边界
        employment: 人员ID -> 就业状况，为空时不输出按就业状况的统计
        od_day_types: OD矩阵是否按日类型汇总
        metadata: 写在每个文件首行的运行元数据

    Returns:
        List[str]: 写出的文件
    """
    ensure_dir(directory)
    written = []

    groupings = ["purpose", "day"] + (["employment"] if employment is not None else [])
    for by in groupings:
        path = os.path.join(directory, f"modal_split_{by}.csv")
        written.append(write_table(modal_split(trips, by, employment), path, metadata))

    tld = trip_length_distribution(trips, bins, "purpose")
    for group, frame in tld.groupby("group", sort=True):
        path = os.path.join(directory, f"tld_{group}.csv")
        written.append(write_table(frame.drop(columns="group"), path, metadata))
    if employment is not None:
        tld = trip_length_distribution(trips, bins, "employment", employment)
        for group, frame in tld[tld["group"] != "all"].groupby("group", sort=True):
            path = os.path.join(directory, f"tld_employment_{group}.csv")
            written.append(write_table(frame.drop(columns="group"), path, metadata))

    counts = persons_en_route(trips)
    written.append(write_table(en_route_frame(counts), os.path.join(directory, "en_route.csv"), metadata))
    written.append(write_table(en_route_by_day(counts), os.path.join(directory, "en_route_by_day.csv"), metadata))

    od_dir = os.path.join(directory, OD_DIRECTORY)
    ensure_dir(od_dir)
    matrices = od_matrices(trips, zone_ids, od_day_types)
    for matrix in matrices:
        frame = pd.DataFrame(matrix.counts, index=list(zone_ids), columns=list(zone_ids))
        frame.insert(0, "zone_id", list(zone_ids))
        path = os.path.join(od_dir, f"{matrix.day}_{matrix.hour:02d}_{matrix.mode}.csv")
        written.append(write_table(frame, path, metadata))

    logger.info(f"Wrote {len(written)} analysis files ({len(matrices)} OD matrices) to {directory}")
    return written
