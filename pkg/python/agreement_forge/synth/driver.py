"""
Counterexample-guided synthesis loop.

Each iteration asks the learner for an interpretation, runs the stages on the
completed process, and on a failure adds the negated encoding of the extracted
counterexample to the learner's store. Every iteration rules out at least the
interpretation it checked.
"""

import collections
import dataclasses
import enum
import itertools
import time
import typing

from ..encode.encoder import PredicateCache, encode_cex
from ..extract.extractor import GlobalCex, LocalCex
from ..lang.ast import ProcessSketch
from ..lang.spec import SpecSuite
from ..learner.constraint import Constraint, holds, negate
from ..learner.interpretation import Interpretation
from ..learner.learner import Learner
from ..semantics.local import sketch_semantics
from ..utils.exceptions import ExtractionError, ForgeError, ResourceLimit, SearchTimeout
from ..utils.logger import logger
from .options import Stage, SynthOptions
from .stages import run_stages


class Outcome(enum.Enum):
    COMPLETED = "completed"
    NO_SOLUTION = "no_solution"
    TIMEOUT = "timeout"
    RESOURCE_LIMIT = "resource_limit"


@dataclasses.dataclass
class IterationRecord:
    iteration: int
    stage: str  # 失败的阶段, 全部通过时为 "completed"
    violation: str | None
    cex_size: int
    store_size: int
    seconds: typing.Dict[str, float] = dataclasses.field(default_factory=dict)

    def __serialize__(self) -> dict:
        return {
            "iteration": self.iteration,
            "stage": self.stage,
            "violation": self.violation,
            "cex_size": self.cex_size,
            "store_size": self.store_size,
            "seconds": {k: round(v, 6) for k, v in self.seconds.items()},
        }


@dataclasses.dataclass
class SynthResult:
    outcome: Outcome
    interpretation: Interpretation | None = None
    cutoff: int | None = None
    iterations: typing.List[IterationRecord] = dataclasses.field(default_factory=list)
    message: str = ""
    store: typing.List[Constraint] = dataclasses.field(default_factory=list, repr=False)
    proposed: typing.List[Interpretation] = dataclasses.field(default_factory=list, repr=False)

    @property
    def stats(self) -> typing.Dict[str, int]:
        """Failures per violation kind."""
        totals = collections.Counter(r.stage for r in self.iterations if r.stage != "completed")
        kinds = [s.value for s in Stage if s is not Stage.CUTOFF]
        return {kind: totals.get(kind, 0) for kind in kinds}

    @property
    def stage_seconds(self) -> typing.Dict[str, float]:
        totals: typing.Dict[str, float] = collections.defaultdict(float)
        for record in self.iterations:
            for stage, seconds in record.seconds.items():
                totals[stage] += seconds
        return dict(totals)

    def __serialize__(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "cutoff": self.cutoff,
            "interpretation": None if self.interpretation is None else self.interpretation.__serialize__(),
            "message": self.message,
            "totals": self.stats,
            "stage_seconds": {k: round(v, 6) for k, v in self.stage_seconds.items()},
            "iterations": [r.__serialize__() for r in self.iterations],
        }


def iteration_progress_check(interpretation: Interpretation, encoding: Constraint) -> bool:
    """The negated encoding must reject the interpretation that produced the counterexample."""
    return not holds(negate(encoding), interpretation)


def _cex_size(cex: LocalCex | GlobalCex | None) -> int:
    return 0 if cex is None else cex.size


def synthesize(sketch: ProcessSketch, spec: SpecSuite, opts: SynthOptions | None = None) -> SynthResult:
    opts = opts or SynthOptions()
    deadline = None if opts.timeout is None else time.monotonic() + opts.timeout
    learner = Learner(
        sketch.holes, seed=opts.seed, deterministic=opts.deterministic, deadline=deadline, _plugin_name=opts.learner
    )
    cache = PredicateCache(sketch_semantics(sketch), opts.path_bound)
    result = SynthResult(Outcome.NO_SOLUTION)
    seen: typing.Set[Interpretation] = set()

    logger.info(f"Synthesizing '{sketch.name}': {len(sketch.holes)} hole(s), learner '{learner.mode}'")

    def finish(outcome: Outcome, message: str = "") -> SynthResult:
        result.outcome = outcome
        result.message = message
        result.store = learner.store
        logger.info(f"Synthesis of '{sketch.name}' ended: {outcome.value} after {len(result.iterations)} iteration(s)")
        return result

    for iteration in itertools.count(1):
        if opts.max_iterations is not None and iteration > opts.max_iterations:
            return finish(Outcome.TIMEOUT, f"iteration limit {opts.max_iterations} reached")
        try:
            interpretation = learner.propose()
            if interpretation is None:
                return finish(Outcome.NO_SOLUTION, "constraint store is unsatisfiable")
            if interpretation in seen:
                raise ForgeError(f"Learner proposed an interpretation twice at iteration {iteration}")
            seen.add(interpretation)
            result.proposed.append(interpretation)
            report = run_stages(sketch, interpretation, spec, opts, deadline)
        except SearchTimeout as error:
            return finish(Outcome.TIMEOUT, str(error))
        except ResourceLimit as error:
            return finish(Outcome.RESOURCE_LIMIT, str(error))

        seconds = {v.stage.value: v.seconds for v in report.verdicts}

        if report.ok:
            result.iterations.append(IterationRecord(iteration, "completed", None, 0, len(learner.store), seconds))
            logger.verbose(f"#{iteration:<5d} completed  cutoff={report.cutoff} store={len(learner.store)}")
            result.interpretation = interpretation
            result.cutoff = report.cutoff
            return finish(Outcome.COMPLETED)

        stage = report.failed.stage.value
        try:
            encoding = encode_cex(report.semantics, report.cex, cache)
        except ResourceLimit as error:
            return finish(Outcome.RESOURCE_LIMIT, str(error))
        if opts.check_progress and not iteration_progress_check(interpretation, encoding):
            raise ExtractionError(f"Counterexample at iteration {iteration} does not rule out its interpretation")
        learner.refute(interpretation, negate(encoding))
        if opts.trace_cex:
            logger.info(f"Counterexample #{iteration} ({stage}):\n{report.cex}")

        record = IterationRecord(iteration, stage, report.violation, _cex_size(report.cex), len(learner.store), seconds)
        result.iterations.append(record)
        logger.verbose(
            f"#{iteration:<5d} {stage:<20s} violation={record.violation}"
            f" cex={record.cex_size} store={record.store_size}"
        )

    return finish(Outcome.NO_SOLUTION)  # pragma: no cover
