"""
The staged check of one interpretation.

Stages run in order and stop at the first failure: phase-compatibility,
cutoff-amenability, cutoff computation, safety at the cutoff (and optionally at
cutoff + 1), deadlock-freedom, then each liveness line. A failing stage leaves
a counterexample behind for the encoder.
"""

import dataclasses
import functools
import time
import typing

from ..checker.buchi import ltl_to_buchi
from ..checker.deadlock import check_deadlock
from ..checker.lasso import find_fair_accepting_lasso
from ..checker.safety import check_safety
from ..decidability.amenability import check_amenability
from ..decidability.compatibility import check_phase_compatibility
from ..decidability.cutoff import compute_cutoff
from ..decidability.phases import PhaseIndex
from ..extract.extractor import GlobalCex, LocalCex, package_global_cex
from ..lang.ast import ProcessSketch
from ..lang.spec import SpecSuite
from ..learner.interpretation import Interpretation
from ..semantics.local import LocalSemantics, build_local_semantics, complete
from ..semantics.system import GlobalSemantics
from ..utils.exceptions import SearchTimeout
from ..utils.logger import logger
from ..utils.misc import ordered_results
from .options import Stage, SynthOptions


@dataclasses.dataclass
class StageVerdict:
    stage: Stage
    ok: bool
    seconds: float = 0.0
    detail: typing.Dict[str, typing.Any] = dataclasses.field(default_factory=dict)

    def __serialize__(self) -> dict:
        return {"stage": self.stage.value, "ok": self.ok, "seconds": round(self.seconds, 6), **self.detail}


@dataclasses.dataclass
class VerifyReport:
    verdicts: typing.List[StageVerdict] = dataclasses.field(default_factory=list)
    cutoff: int | None = None
    cex: LocalCex | GlobalCex | None = None
    witness: typing.Any = None  # ErrorTrace / DeadlockCex / Lasso before packaging
    semantics: LocalSemantics | None = dataclasses.field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def failed(self) -> StageVerdict | None:
        return next((v for v in self.verdicts if not v.ok), None)

    @property
    def violation(self) -> str | None:
        """失败性质的名称: 阶段名, 或安全/活性行的名字"""
        if self.cex is None:
            return None
        return self.cex.property

    def __serialize__(self) -> dict:
        result = {
            "ok": self.ok,
            "cutoff": self.cutoff,
            "stages": [v.__serialize__() for v in self.verdicts],
        }
        if self.cex is not None:
            result["cex"] = self.cex.__serialize__()
        return result

    def __str__(self) -> str:
        lines = []
        for v in self.verdicts:
            mark = "ok" if v.ok else "FAILED"
            lines.append(f"{v.stage.value:>20s}: {mark}")
        if self.cutoff is not None:
            lines.append(f"{'cutoff':>20s}: {self.cutoff}")
        if self.witness is not None:
            lines.append(str(self.witness))
        elif self.cex is not None:
            lines.append(str(self.cex))
        return "\n".join(lines)


class _Clock:
    def __init__(self, deadline: float | None) -> None:
        self._deadline = deadline
        self._start = time.monotonic()

    def lap(self) -> float:
        now = time.monotonic()
        elapsed, self._start = now - self._start, now
        if self._deadline is not None and now > self._deadline:
            raise SearchTimeout("Wall-clock budget spent during model checking")
        return elapsed


def run_stages(
    sketch: ProcessSketch,
    interpretation: Interpretation | None,
    spec: SpecSuite,
    opts: SynthOptions | None = None,
    deadline: float | None = None,
) -> VerifyReport:
    opts = opts or SynthOptions()
    report = VerifyReport()
    clock = _Clock(deadline)
    strict = opts.strict_independence

    ls = build_local_semantics(complete(sketch, interpretation), opts.strict_domains)
    report.semantics = ls

    index = PhaseIndex(ls, strict)
    pc = check_phase_compatibility(ls, strict, opts.cube_bound, index, opts.jobs)
    report.verdicts.append(StageVerdict(Stage.PHASE_COMPATIBILITY, pc.ok, clock.lap(), pc.__serialize__()))
    if not pc.ok:
        report.cex = pc.cex
        return report

    am = check_amenability(ls, spec, strict, opts.path_bound, opts.cube_bound, opts.jobs)
    report.verdicts.append(StageVerdict(Stage.AMENABILITY, am.ok, clock.lap(), am.__serialize__()))
    if not am.ok:
        report.cex = am.cex
        return report

    report.cutoff = cutoff = compute_cutoff(ls, spec, opts.cutoff)
    report.verdicts.append(StageVerdict(Stage.CUTOFF, True, clock.lap(), {"cutoff": cutoff}))

    gs = GlobalSemantics(ls, cutoff, opts.state_bound)
    sizes = [gs]
    if opts.cutoff_plus_one:
        sizes.append(GlobalSemantics(ls, cutoff + 1, opts.state_bound))
    for system in sizes:
        trace = check_safety(system, spec)
        detail = {"n": system.n, "states": len(system.states)}
        if trace is not None:
            detail["violated"] = trace.line.name
        report.verdicts.append(StageVerdict(Stage.SAFETY, trace is None, clock.lap(), detail))
        if trace is not None:
            report.witness = trace
            report.cex = package_global_cex(trace)
            return report

    if not opts.liveness:
        return report

    deadlock = check_deadlock(gs)
    report.verdicts.append(StageVerdict(Stage.DEADLOCK, deadlock is None, clock.lap(), {"n": gs.n}))
    if deadlock is not None:
        report.witness = deadlock
        report.cex = package_global_cex(deadlock)
        return report

    for line, lasso in zip(spec.liveness, _liveness(gs, spec, opts)):
        report.verdicts.append(StageVerdict(Stage.LIVENESS, lasso is None, clock.lap(), {"line": line.name}))
        if lasso is not None:
            report.witness = lasso
            report.cex = package_global_cex(lasso)
            return report

    logger.debug(f"All stages passed at cutoff {cutoff}")
    return report


def _liveness(gs: GlobalSemantics, spec: SpecSuite, opts: SynthOptions):
    """One lasso search per line, in line order; ``jobs`` > 1 runs them on a thread pool."""
    automata = [ltl_to_buchi(line) for line in spec.liveness]
    if opts.jobs > 1 and len(automata) > 1:
        gs.ready  # 在线程启动前填充缓存
    calls = [functools.partial(find_fair_accepting_lasso, gs, a, opts.product_bound) for a in automata]
    yield from ordered_results(calls, opts.jobs)


def verify(
    sketch: ProcessSketch,
    spec: SpecSuite,
    opts: SynthOptions | None = None,
    interpretation: Interpretation | None = None,
) -> VerifyReport:
    """The staged check, once, on a hole-free model or a sketch with a given interpretation."""
    opts = opts or SynthOptions()
    deadline = None if opts.timeout is None else time.monotonic() + opts.timeout
    report = run_stages(sketch, interpretation, spec, opts, deadline)
    logger.info(f"Verification of '{sketch.name}': {'passed' if report.ok else report.failed.stage.value + ' failed'}")
    return report
