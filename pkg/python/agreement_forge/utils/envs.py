import os

FORGE_DEBUG = os.environ.get("AGREEMENT_FORGE_DEBUG", False)

FORGE_VERBOSE = os.environ.get("AGREEMENT_FORGE_VERBOSE", "warning")

if FORGE_DEBUG in (True, "true", "on", "1"):
    FORGE_VERBOSE = "debug"

FORGE_LABEL = os.environ.get("AGREEMENT_FORGE_LABEL", __package__[: __package__.find(".")])


def _int_env(name: str, default: int) -> int:
    value = os.environ.get(name, None)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError as error:
        raise ValueError(f"Environment variable {name} must be an integer, got {value!r}") from error


# 状态空间上限 (global semantics / local universe)
FORGE_STATE_BOUND = _int_env("AGREEMENT_FORGE_STATE_BOUND", 5_000_000)

# reaches() 简单路径上限, 超出后退回到构造时记录的路径
FORGE_PATH_BOUND = _int_env("AGREEMENT_FORGE_PATH_BOUND", 10_000)

FORGE_PRODUCT_BOUND = _int_env("AGREEMENT_FORGE_PRODUCT_BOUND", 5_000_000)

FORGE_CUBE_BOUND = _int_env("AGREEMENT_FORGE_CUBE_BOUND", 256)

FORGE_MAX_CARDINALITY = _int_env("AGREEMENT_FORGE_MAX_CARDINALITY", 8)

FORGE_STRICT_DOMAINS = os.environ.get("AGREEMENT_FORGE_STRICT_DOMAINS", "off") in ("true", "on", "1")

try:
    from ..__version__ import __version__
except ImportError:
    FORGE_VERSION = "develop"
else:
    FORGE_VERSION = __version__
