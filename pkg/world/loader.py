# 场景加载与保存

import os
from loguru import logger
from typing import Dict, Optional

import numpy as np
import pandas as pd

from common.exceptions import ScenarioError
from common.utils import ensure_dir, read_table, row_line, write_table
from config import WorldSection
from world.skims import SkimMatrixSet
from world.world import CommutingMatrix, World
from world.zone import Zone

ATTRACTIVITY_PREFIX = "attr_"


def read_zones(path: str, purposes=()) -> list:
    """
    读取小区文件

    Args:
        path: 小区文件路径
        purposes: 清单中声明的活动目的，缺少吸引量列时记录警告

    Returns:
        list: Zone 列表，下标按文件顺序
    """
    frame = read_table(path, ["zone_id", "freefloating", "stations"], dtype={"zone_id": str, "district": str})
    attr_columns = [c for c in frame.columns if c.startswith(ATTRACTIVITY_PREFIX)]
    for purpose in purposes:
        if ATTRACTIVITY_PREFIX + purpose not in attr_columns:
            logger.warning(f"{path}: no attractivity column for purpose '{purpose}', using 0")
    zones = []
    for position, (row_index, row) in enumerate(frame.iterrows()):
        line = row_line(row_index)
        try:
            attractivity = {c[len(ATTRACTIVITY_PREFIX):]: float(row[c]) for c in attr_columns}
            stations = int(row["stations"])
            freefloating = int(row["freefloating"])
        except (TypeError, ValueError) as e:
            raise ScenarioError(f"malformed zone row: {e}", path, line) from e
        if any(np.isnan(v) or v < 0 for v in attractivity.values()):
            raise ScenarioError("attractivity must be a non-negative number", path, line)
        if stations < 0:
            raise ScenarioError("stations must be non-negative", path, line)
        if freefloating not in (0, 1):
            raise ScenarioError("freefloating must be 0 or 1", path, line)
        district = row.get("district") if "district" in frame.columns else None
        if district is not None and pd.isna(district):
            district = None
        zones.append(Zone(
            id=str(row["zone_id"]).strip(),
            index=position,
            attractivity=attractivity,
            in_freefloating_area=bool(freefloating),
            carsharing_station_count=stations,
            district=district,
        ))
    ids = [zone.id for zone in zones]
    if len(set(ids)) != len(ids):
        duplicate = next(i for i in ids if ids.count(i) > 1)
        raise ScenarioError(f"duplicate zone id '{duplicate}'", path, row_line(ids.index(duplicate)))
    return zones


def read_matrix(path: str, zone_ids) -> np.ndarray:
    """
    读取稠密矩阵文件，首行与首列为小区标识

    Args:
        path: 矩阵文件路径
        zone_ids: 小区标识（内部下标顺序）

    Returns:
        np.ndarray: 按内部下标排列的矩阵
    """
    if not os.path.exists(path):
        raise ScenarioError("file not found", path)
    try:
        frame = pd.read_csv(path, index_col=0, comment="#", skipinitialspace=True)
    except (ValueError, pd.errors.ParserError) as e:
        raise ScenarioError(f"cannot parse: {e}", path) from e
    size = len(zone_ids)
    if frame.shape != (size, size):
        raise ScenarioError(f"dimension mismatch: matrix is {frame.shape[0]}x{frame.shape[1]}, scenario has {size} zones", path)
    frame.index = [str(i).strip() for i in frame.index]
    frame.columns = [str(c).strip() for c in frame.columns]
    for label, found in (("row", frame.index), ("column", frame.columns)):
        unknown = sorted(set(found) - set(zone_ids))
        if unknown:
            raise ScenarioError(f"unknown zone ids in {label} labels: {unknown}", path)
    if not frame.index.is_unique or not frame.columns.is_unique:
        raise ScenarioError("duplicate zone ids in matrix labels", path)
    values = frame.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad_rows = np.where(np.isnan(values).any(axis=1) | (values < 0).any(axis=1))[0]
    if len(bad_rows):
        raise ScenarioError("missing or negative entry", path, row_line(bad_rows[0]))
    ordered = frame.loc[list(zone_ids), list(zone_ids)]
    return ordered.apply(pd.to_numeric).to_numpy(dtype=np.float64)


def read_fleet(path: str, zone_ids) -> Dict[str, int]:
    """
    读取自由流动共享汽车的车队分布 (zone_id, count)
    """
    frame = read_table(path, ["zone_id", "count"], dtype={"zone_id": str})
    fleet = {}
    for row_index, row in frame.iterrows():
        zone_id = str(row["zone_id"]).strip()
        if zone_id not in zone_ids:
            raise ScenarioError(f"unknown zone '{zone_id}'", path, row_line(row_index))
        count = int(row["count"])
        if count < 0:
            raise ScenarioError("fleet count must be non-negative", path, row_line(row_index))
        fleet[zone_id] = count
    return fleet


def load_scenario(section: WorldSection, fleet_path: Optional[str] = None) -> World:
    """
    加载静态场景

    Args:
        section: 清单的 [world] 节，路径已解析
        fleet_path: 可选的自由流动车队文件

    Returns:
        World: 不可变场景
    """
    zones = read_zones(section.zones, section.purposes)
    zone_ids = [zone.id for zone in zones]
    time = {mode: read_matrix(section.time[mode], zone_ids) for mode in section.modes}
    cost = {mode: read_matrix(section.cost[mode], zone_ids) for mode in section.modes}
    distance = read_matrix(section.distance, zone_ids)
    if (np.diag(distance) <= 0).any():
        # 小区内距离决定 <1 km 的小区内出行规则，不可缺省
        raise ScenarioError("distance matrix diagonal must hold intrazonal distances > 0", section.distance)
    skims = SkimMatrixSet.build(len(zones), time, cost, distance)
    commuting = {
        kind: CommutingMatrix(kind, read_matrix(path, zone_ids))
        for kind, path in section.commuting.items()
    }
    fleet = read_fleet(fleet_path, zone_ids) if fleet_path else {}
    world = World(zones, skims, commuting, fleet)
    logger.info(f"Loaded scenario with {len(zones)} zones and modes {list(section.modes)}")
    return world


def _matrix_frame(matrix: np.ndarray, zone_ids) -> pd.DataFrame:
    frame = pd.DataFrame(matrix, index=list(zone_ids), columns=list(zone_ids))
    frame.index.name = "zone_id"
    return frame.reset_index()


def save_scenario(world: World, directory: str) -> WorldSection:
    """
    以加载时的格式写出场景，用于往返校验和场景交换

    Args:
        world: 场景
        directory: 目标目录

    Returns:
        WorldSection: 指向写出文件的 [world] 节
    """
    ensure_dir(directory)
    purposes = sorted({p for zone in world.zones for p in zone.attractivity})
    rows = []
    for zone in world.zones:
        row = {
            "zone_id": zone.id,
            "freefloating": int(zone.in_freefloating_area),
            "stations": zone.carsharing_station_count,
            "district": zone.district if zone.district is not None else "",
        }
        row.update({ATTRACTIVITY_PREFIX + p: zone.attractivity_for(p) for p in purposes})
        rows.append(row)
    zones_path = write_table(pd.DataFrame(rows), os.path.join(directory, "zones.csv"))
    zone_ids = world.zone_ids
    time, cost = {}, {}
    for mode in world.modes:
        time[mode] = write_table(_matrix_frame(world.skims.time[mode], zone_ids), os.path.join(directory, f"time_{mode}.csv"))
        cost[mode] = write_table(_matrix_frame(world.skims.cost[mode], zone_ids), os.path.join(directory, f"cost_{mode}.csv"))
    distance = write_table(_matrix_frame(world.skims.distance, zone_ids), os.path.join(directory, "distance.csv"))
    commuting = {
        kind: write_table(_matrix_frame(matrix.counts, zone_ids), os.path.join(directory, f"commuting_{kind}.csv"))
        for kind, matrix in world.commuting.items()
    }
    return WorldSection(
        zones=zones_path,
        modes=list(world.modes),
        purposes=purposes,
        time=time,
        cost=cost,
        distance=distance,
        commuting=commuting,
    )
