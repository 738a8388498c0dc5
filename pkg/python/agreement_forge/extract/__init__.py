from .cube import (
    Cube,
    Has,
    HasPartial,
    Lacks,
    NoReactingPath,
    PartialTransition,
    SemanticsView,
    SubsetView,
    Transitions,
    Trapped,
    Witness,
)
from .extractor import (
    GlobalCex,
    LocalCex,
    extract_amenability_cex,
    extract_local_cex,
    package_global_cex,
    replays,
    resatisfies,
    witness_literal,
)
