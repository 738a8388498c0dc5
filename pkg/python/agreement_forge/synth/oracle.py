"""
Brute-force oracles for small sketches.

Nothing here extracts or encodes: interpretations are enumerated one by one and
counterexamples are looked up directly in freshly built semantics.
"""

import typing

from ..extract.extractor import GlobalCex, LocalCex
from ..lang.ast import ProcessSketch
from ..lang.spec import SpecSuite
from ..learner.interpretation import Interpretation, count_interpretations, enumerate_interpretations
from ..semantics.local import build_local_semantics, complete
from ..semantics.system import successors_at
from ..utils.exceptions import ResourceLimit
from .options import SynthOptions
from .stages import run_stages

ORACLE_BOUND = 100_000


def brute_force_synth(
    sketch: ProcessSketch, spec: SpecSuite, opts: SynthOptions | None = None, bound: int = ORACLE_BOUND
) -> Interpretation | None:
    """First interpretation, in enumeration order, passing every stage."""
    count = count_interpretations(sketch.holes)
    if count > bound:
        raise ResourceLimit("interpretations", bound, f"'{sketch.name}' has {count}")
    for interpretation in enumerate_interpretations(sketch.holes):
        if run_stages(sketch, interpretation, spec, opts).ok:
            return interpretation
    return None


def passing_interpretations(
    sketch: ProcessSketch, spec: SpecSuite, opts: SynthOptions | None = None, bound: int = ORACLE_BOUND
) -> typing.List[Interpretation]:
    count = count_interpretations(sketch.holes)
    if count > bound:
        raise ResourceLimit("interpretations", bound, f"'{sketch.name}' has {count}")
    return [i for i in enumerate_interpretations(sketch.holes) if run_stages(sketch, i, spec, opts).ok]


def exhibits(sketch: ProcessSketch, interpretation: Interpretation, cex: LocalCex | GlobalCex) -> bool:
    """Does the semantics under ``interpretation`` contain every transition of ``cex``?"""
    ls = build_local_semantics(complete(sketch, interpretation), strict=False)
    match cex:
        case LocalCex():
            if not all(t in ls for t in cex.enabled):
                return False
            if not all(d in ls for d in cex.disabled):
                return False
            for p in cex.partial:
                if not any(
                    t.handler == p.handler and (p.payload is None or t.payload == p.payload)
                    for t in ls.outgoing(p.src)
                ):
                    return False
            return True
        case GlobalCex():
            for r in cex.enabled:
                if r not in successors_at(ls, r.src)[0]:
                    return False
            for d in cex.disabled:
                if d not in successors_at(ls, d.src)[1]:
                    return False
            return True
    raise TypeError(f"Not a counterexample: {cex!r}")
