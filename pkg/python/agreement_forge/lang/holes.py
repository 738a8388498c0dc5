"""Hole occurrences and signature inference from syntactic position."""

import dataclasses
import typing

from ..utils.envs import FORGE_MAX_CARDINALITY
from .ast import Assign, Goto, Handler, HolePosition, HoleSignature, If, ProcessSketch, Send
from .domain import Domain
from .expression import Expression, HoleRef


@dataclasses.dataclass(frozen=True)
class HoleOccurrence:
    ref: HoleRef
    position: HolePosition | None  # None: 不支持的位置
    handler: Handler
    whole: bool = True
    assigned: str | None = None


def _scan(expr: Expression, position: HolePosition | None, handler: Handler, assigned: str | None = None):
    for ref in expr.holes():
        yield HoleOccurrence(ref, position, handler, ref is expr, assigned)


def hole_occurrences(sketch: ProcessSketch) -> typing.List[HoleOccurrence]:
    """All hole references in source order."""
    found = []
    for handler in sketch.handlers():
        if isinstance(handler.cardinality, HoleRef):
            found.append(HoleOccurrence(handler.cardinality, HolePosition.CARDINALITY, handler))
        if handler.guard is not None:
            found.extend(_scan(handler.guard, HolePosition.GUARD_CONDITION, handler))
        for stmt in handler.statements():
            match stmt:
                case Assign(var=var, expr=expr):
                    found.extend(_scan(expr, HolePosition.ASSIGN_RHS, handler, var))
                case Goto(target=HoleRef() as ref):
                    found.append(HoleOccurrence(ref, HolePosition.GOTO_TARGET, handler))
                case If(cond=cond):
                    found.extend(_scan(cond, HolePosition.IF_CONDITION, handler))
                case Send():
                    for expr in stmt.expressions():
                        found.extend(_scan(expr, None, handler))
    return found


def signature_of(
    occurrence: HoleOccurrence, sketch: ProcessSketch, max_cardinality: int | None = None
) -> HoleSignature | None:
    """None when the occurrence admits no signature (unsupported position, missing annotation)."""
    ref = occurrence.ref
    position = occurrence.position
    if position is None:
        return None

    params = tuple(v.name for v in sketch.variables) if ref.params is None else ref.params

    match position:
        case HolePosition.CARDINALITY:
            domain = ref.annotation
            if domain is None:
                domain = Domain.int_range(1, max_cardinality or FORGE_MAX_CARDINALITY)
            params = ()
        case HolePosition.GOTO_TARGET:
            domain = sketch.location_domain
        case _ if ref.annotation is not None:
            domain = ref.annotation
        case _ if not occurrence.whole:
            return None
        case HolePosition.ASSIGN_RHS:
            var = sketch.variable_map.get(occurrence.assigned, None)
            if var is None:
                return None
            domain = var.domain
        case _:
            domain = Domain.boolean()

    if any(p not in sketch.variable_map for p in params):
        return None
    param_domains = tuple(sketch.variable_map[p].domain for p in params)

    return HoleSignature(ref.hole_id, position, params, domain, occurrence.handler.id, param_domains, span=ref.span)


def hole_sort_key(hole_id: str):
    return (0, int(hole_id), "") if hole_id.isdigit() else (1, 0, hole_id)


def infer_signatures(sketch: ProcessSketch, max_cardinality: int | None = None) -> typing.Tuple[HoleSignature, ...]:
    signatures = {}
    for occurrence in hole_occurrences(sketch):
        if occurrence.ref.hole_id in signatures:
            continue
        signature = signature_of(occurrence, sketch, max_cardinality)
        if signature is not None:
            signatures[signature.id] = signature
    return tuple(signatures[k] for k in sorted(signatures, key=hole_sort_key))
