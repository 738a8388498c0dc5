"""
转换为 JSON/YAML 可写的原生数据
"""

import collections.abc
import dataclasses
import enum

primary_type = (int, float, bool, str, type(None))


def serialize(obj):
    """serialize object"""

    if isinstance(obj, primary_type):
        return obj
    elif hasattr(obj.__class__, "__serialize__"):
        return obj.__serialize__()
    elif isinstance(obj, enum.Enum):
        return obj.name
    elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: serialize(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    elif isinstance(obj, collections.abc.Mapping):
        return {str(k): serialize(v) for k, v in obj.items()}
    elif isinstance(obj, (set, frozenset)):
        return sorted((serialize(v) for v in obj), key=repr)
    elif isinstance(obj, collections.abc.Iterable):
        return [serialize(v) for v in obj]
    else:
        raise TypeError(f"{obj.__class__} is not serialzable!")
