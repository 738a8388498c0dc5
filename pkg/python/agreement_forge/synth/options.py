import dataclasses
import enum

from ..utils.envs import (
    FORGE_CUBE_BOUND,
    FORGE_PATH_BOUND,
    FORGE_PRODUCT_BOUND,
    FORGE_STATE_BOUND,
    FORGE_STRICT_DOMAINS,
)


class Stage(enum.Enum):
    PHASE_COMPATIBILITY = "phase_compatibility"
    AMENABILITY = "amenability"
    CUTOFF = "cutoff"
    SAFETY = "safety"
    DEADLOCK = "deadlock"
    LIVENESS = "liveness"


@dataclasses.dataclass
class SynthOptions:
    """单次运行的设置; 资源上限缺省取环境变量"""

    max_iterations: int | None = None
    timeout: float | None = None  # seconds
    cutoff: int | None = None
    learner: str = "solver"
    seed: int | None = None
    deterministic: bool = False
    liveness: bool = True  # deadlock + liveness lines
    strict_independence: bool = False
    strict_domains: bool = FORGE_STRICT_DOMAINS
    cutoff_plus_one: bool = False
    check_progress: bool = True
    trace_cex: bool = False
    jobs: int = 1
    state_bound: int = FORGE_STATE_BOUND
    path_bound: int = FORGE_PATH_BOUND
    product_bound: int = FORGE_PRODUCT_BOUND
    cube_bound: int = FORGE_CUBE_BOUND
