# JSON工具函数：运行元数据与汇总文件

import json
import numpy as np
from typing import Any, Dict, Optional

METADATA_PREFIX = "# "


class NumpyJSONEncoder(json.JSONEncoder):
    """
    支持numpy标量、数组和集合的JSON编码器
    """
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, (set, frozenset)):
            return sorted(obj)
        return super().default(obj)


def dumps(obj: Any, **kwargs) -> str:
    """
    序列化为JSON字符串，键按字母排序

    同样的输入得到逐字节相同的输出，因此不写时间戳之类的易变字段
    """
    kwargs.setdefault("sort_keys", True)
    kwargs.setdefault("ensure_ascii", False)
    return json.dumps(obj, cls=NumpyJSONEncoder, **kwargs)


def metadata_line(metadata: Dict[str, Any]) -> str:
    """
    输出文件首行：'# ' 加单行JSON
    """
    return METADATA_PREFIX + dumps(metadata) + "\n"


def parse_metadata_line(line: str) -> Optional[Dict[str, Any]]:
    """
    解析首行元数据，不是元数据行时返回None
    """
    if not line.startswith(METADATA_PREFIX):
        return None
    try:
        value = json.loads(line[len(METADATA_PREFIX):])
    except json.JSONDecodeError:
        return None
    return value if isinstance(value, dict) else None
