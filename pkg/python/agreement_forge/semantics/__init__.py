from .executor import Case, Outcome, SymbolicExecutor
from .local import (
    ConcreteProcess,
    DisabledTransition,
    LocalSemantics,
    LocalTransition,
    SketchSemantics,
    build_local_semantics,
    complete,
    is_internal,
    sketch_semantics,
)
from .state import LocalState, StateSpace
from .system import (
    GlobalDisabled,
    GlobalSemantics,
    GlobalState,
    GlobalTransition,
    build_global_semantics,
    format_global,
    global_successors,
    successors_at,
)
