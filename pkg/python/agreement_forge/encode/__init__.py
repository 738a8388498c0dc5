from .encoder import (
    PredicateCache,
    encode_cex,
    encode_global_transition,
    encode_local_transition,
    goes_to,
    has_action,
    has_no_action,
    reaches,
)
