from ..lang.ast import EventKind, ProcessSketch
from ..lang.expression import HoleRef
from ..lang.spec import SpecSuite
from ..learner.interpretation import Interpretation
from ..semantics.local import ConcreteProcess, LocalSemantics
from ..utils.exceptions import ForgeError
from ..utils.logger import logger


def _round_size(sketch: ProcessSketch, cardinality, interpretation: Interpretation | None) -> int:
    if isinstance(cardinality, HoleRef):
        if interpretation is not None:
            return interpretation.value(cardinality.hole_id, ())
        return max(sketch.hole_map[cardinality.hole_id].domain.values)
    return cardinality or 1


def compute_cutoff(
    process: ProcessSketch | ConcreteProcess | LocalSemantics, spec: SpecSuite, override: int | None = None
) -> int:
    """
    c = max(Σ m over each safety line, k + 1 over agreement rounds, 2 with inter-process rendezvous, 1)

    An override may only raise the computed value.
    """
    match process:
        case LocalSemantics():
            sketch, interpretation = process.sketch, process.interpretation
        case ConcreteProcess():
            sketch, interpretation = process.sketch, process.interpretation
        case _:
            sketch, interpretation = process, None

    candidates = [1]
    candidates.extend(line.weight for line in spec.safety)
    for event in sketch.events:
        if event.kind.is_agreement:
            candidates.append(_round_size(sketch, event.cardinality, interpretation) + 1)
        elif event.kind is EventKind.RENDEZVOUS and not event.env:
            candidates.append(2)
    cutoff = max(candidates)

    if override is not None:
        if override < cutoff:
            raise ForgeError(f"Cutoff override {override} is below the computed cutoff {cutoff}")
        logger.info(f"Cutoff {cutoff} overridden to {override}")
        return override
    return cutoff
