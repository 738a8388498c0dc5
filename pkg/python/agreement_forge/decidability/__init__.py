from .amenability import check_amenability, independent, satisfying_states
from .compatibility import ConditionReport, check_phase_compatibility
from .cutoff import compute_cutoff
from .phases import (
    MergedPhase,
    Phase,
    PhaseIndex,
    PhaseWitness,
    compute_core_phases,
    global_events,
    is_internal,
    same_phase_witness,
)
