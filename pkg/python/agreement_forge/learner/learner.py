"""
Learner: proposes interpretations satisfying the constraint store.

Implementations are plugins (``agreement_forge.plugins.learner_<name>``):
``solver`` searches hole-grid cells with forward checking, ``enumerate`` walks
all interpretations in order and refutes one at a time.
"""

import abc
import time
import typing

from ..core.pluggable import Pluggable
from ..lang.ast import HoleSignature
from ..utils.exceptions import InterpretationError, SearchTimeout
from .constraint import TRUE, App, Constraint, cmp, conj, negate, to_sexpr
from .interpretation import Interpretation


class Learner(Pluggable, plugin_prefix="agreement_forge/plugins/learner_", plugin_default="solver"):
    _plugin_registry = {}

    def __init__(
        self,
        signatures: typing.Iterable[HoleSignature] = (),
        *args,
        seed: int | None = None,
        deterministic: bool = False,
        deadline: float | None = None,
        **kwargs,
    ) -> None:
        self._signatures = {s.id: s for s in signatures}
        self._store: typing.List[Constraint] = []
        self._seed = seed
        self._deterministic = deterministic
        self._deadline = deadline

    @property
    def mode(self) -> str:
        return getattr(self, "_plugin_name", self.__class__.__name__)

    @property
    def signatures(self) -> typing.List[HoleSignature]:
        return list(self._signatures.values())

    @property
    def store(self) -> typing.List[Constraint]:
        return list(self._store)

    def check(self, constraint: Constraint) -> None:
        """每个函数应用都必须与其签名相符"""
        for app in constraint.apps:
            signature = self._signatures.get(app.hole, None)
            if signature is None:
                raise InterpretationError(f"Constraint mentions unknown hole ??{app.hole}")
            if len(app.args) != len(signature.params):
                raise InterpretationError(f"Ill-typed application {app}: expected {len(signature.params)} arguments")
            for value, domain in zip(app.args, signature.param_domains):
                if value not in domain:
                    raise InterpretationError(f"Ill-typed application {app}: {value!r} is outside {domain}")

    def add(self, constraint: Constraint) -> None:
        if constraint == TRUE:
            return
        self.check(constraint)
        self._store.append(constraint)

    def refute(self, interpretation: Interpretation, negated: Constraint) -> Constraint:
        """Rule out ``interpretation``; returns the constraint actually added."""
        self.add(negated)
        return negated

    def _check_deadline(self) -> None:
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise SearchTimeout("Learner ran out of time")

    @abc.abstractmethod
    def propose(self) -> Interpretation | None:
        """An interpretation satisfying every stored constraint, or None when the store is UNSAT."""

    def dump_constraints(self) -> str:
        return "\n".join(to_sexpr(c) for c in self._store)


def interpretation_constraint(interpretation: Interpretation) -> Constraint:
    """The conjunction pinning every cell of ``interpretation``."""
    return conj(cmp("=", App(h, args), v) for (h, args), v in interpretation.cells().items())


def exclude(interpretation: Interpretation) -> Constraint:
    return negate(interpretation_constraint(interpretation))


def solve(
    signatures: typing.Iterable[HoleSignature],
    store: typing.Iterable[Constraint],
    *,
    seed: int | None = None,
    deterministic: bool = True,
) -> Interpretation | None:
    """One-shot solve of ``store``; None means UNSAT."""
    learner = Learner(signatures, seed=seed, deterministic=deterministic, _plugin_name="solver")
    for constraint in store:
        learner.add(constraint)
    return learner.propose()
