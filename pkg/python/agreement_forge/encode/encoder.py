"""
Exact encoding of counterexamples as constraints over hole functions.

A local transition ``s -a-> s'`` is encoded as reaches(s) ∧ hasAction(s, a) ∧
goesTo(s, a, s'); a disabled one as reaches(s) ∧ hasNoAction(s, a). A global
transition is the conjunction of its active local transitions, the disabled
handlers that keep other processes out of its round, and the round-size
constraint. The interpretations satisfying the encoding are exactly those whose
semantics contains the counterexample.
"""

import typing

import networkx as nx

from ..extract.cube import PartialTransition
from ..extract.extractor import GlobalCex, LocalCex
from ..lang.domain import Value
from ..learner.constraint import FALSE, TRUE, Constraint, conj, disj, negate
from ..semantics.local import DisabledTransition, LocalSemantics, LocalTransition, SketchSemantics
from ..semantics.state import LocalState
from ..semantics.system import GlobalTransition
from ..utils.envs import FORGE_PATH_BOUND
from ..utils.logger import logger

_SOURCE = "⊤"


class PredicateCache:
    """
    reaches / hasAction / hasNoAction / goesTo 片段的缓存

    片段只依赖 sketch 的潜在迁移图, 因此可以在一次综合的所有迭代间共享;
    路径数超限时的回退编码依赖当前解释, 不入缓存.
    """

    def __init__(self, potential: SketchSemantics, path_bound: int | None = None) -> None:
        self._potential = potential
        self._path_bound = path_bound or FORGE_PATH_BOUND
        self._reaches: typing.Dict[LocalState, Constraint] = {}
        self._has_action: typing.Dict[tuple, Constraint] = {}
        self._goes_to: typing.Dict[tuple, Constraint] = {}
        self._frontier: nx.MultiDiGraph | None = None

    @property
    def potential(self) -> SketchSemantics:
        return self._potential

    def __len__(self) -> int:
        return len(self._reaches) + len(self._has_action) + len(self._goes_to)

    # ---------------- reaches ----------------

    def _frontier_graph(self) -> nx.MultiDiGraph:
        """Non-concrete states plus one source standing for every concrete state."""
        if self._frontier is None:
            concrete = self._potential.concrete
            g = nx.MultiDiGraph()
            g.add_node(_SOURCE)
            for u, v, condition in self._potential.graph.edges(data="condition"):
                if v in concrete:
                    continue
                if u in concrete:
                    g.add_edge(_SOURCE, v, key=u, condition=condition)
                else:
                    g.add_edge(u, v, key=u, condition=condition)
            self._frontier = g
        return self._frontier

    def _paths(self, state: LocalState) -> Constraint | None:
        graph = self._frontier_graph()
        if state not in graph:
            return FALSE
        terms = []
        for count, edges in enumerate(nx.all_simple_edge_paths(graph, _SOURCE, state), start=1):
            if count > self._path_bound:
                return None
            terms.append(conj(graph.edges[e]["condition"] for e in edges))
        return disj(terms)

    def reaches(self, state: LocalState, ls: LocalSemantics | None = None) -> Constraint:
        if state in self._potential.concrete:
            return TRUE
        cached = self._reaches.get(state, None)
        if cached is not None:
            return cached
        result = self._paths(state)
        if result is not None:
            self._reaches[state] = result
            return result
        if ls is None or state not in ls:
            raise ValueError(f"Too many simple paths to {state} and no recorded path to fall back on")
        logger.warning(f"More than {self._path_bound} simple paths to {state}; encoding the recorded path only")
        return conj(self._potential.transition_condition(t) for t in ls.path_to(state))

    # ---------------- handler fragments ----------------

    def has_action(self, state: LocalState, handler: str, payload: Value | None = None) -> Constraint:
        key = (state, handler, type(payload).__name__, payload)
        if key not in self._has_action:
            self._has_action[key] = self._potential.guard_condition(state, handler, payload)
        return self._has_action[key]

    def has_no_action(self, state: LocalState, handler: str, payload: Value | None = None) -> Constraint:
        return negate(self.has_action(state, handler, payload))

    def goes_to(self, t: LocalTransition) -> Constraint:
        key = (t.key, t.branch, t.emits)
        if key not in self._goes_to:
            self._goes_to[key] = self._potential.outcome_condition(t)
        return self._goes_to[key]

    def transition(self, t: LocalTransition) -> Constraint:
        """hasAction ∧ goesTo for the exact case that produced ``t``"""
        key = ("transition", t.key, t.branch, t.emits)
        if key not in self._goes_to:
            self._goes_to[key] = self._potential.transition_condition(t)
        return self._goes_to[key]


def _cache(ls: LocalSemantics, cache: PredicateCache | None) -> PredicateCache:
    return cache if cache is not None else PredicateCache(ls.potential)


def reaches(ls: LocalSemantics, state: LocalState, cache: PredicateCache | None = None) -> Constraint:
    return _cache(ls, cache).reaches(state, ls)


def has_action(
    ls: LocalSemantics,
    state: LocalState,
    handler: str,
    payload: Value | None = None,
    cache: PredicateCache | None = None,
) -> Constraint:
    return _cache(ls, cache).has_action(state, handler, payload)


def has_no_action(
    ls: LocalSemantics,
    state: LocalState,
    handler: str,
    payload: Value | None = None,
    cache: PredicateCache | None = None,
) -> Constraint:
    return _cache(ls, cache).has_no_action(state, handler, payload)


def goes_to(ls: LocalSemantics, t: LocalTransition, cache: PredicateCache | None = None) -> Constraint:
    return _cache(ls, cache).goes_to(t)


def encode_local_transition(
    ls: LocalSemantics,
    t: LocalTransition | DisabledTransition | PartialTransition,
    cache: PredicateCache | None = None,
) -> Constraint:
    cache = _cache(ls, cache)
    match t:
        case LocalTransition():
            return conj(cache.reaches(t.src, ls), cache.transition(t))
        case DisabledTransition():
            return conj(cache.reaches(t.src, ls), cache.has_no_action(t.src, t.handler, t.payload))
        case PartialTransition():
            return conj(cache.reaches(t.src, ls), cache.has_action(t.src, t.handler, t.payload))
    raise TypeError(f"Not a local transition: {t!r}")


def encode_global_transition(
    ls: LocalSemantics, r: GlobalTransition, cache: PredicateCache | None = None
) -> Constraint:
    cache = _cache(ls, cache)
    return conj(
        conj(encode_local_transition(ls, t, cache) for _, t in r.active),
        conj(encode_local_transition(ls, d, cache) for _, d in r.blocked),
        r.cardinality,
    )


def encode_cex(ls: LocalSemantics, cex: LocalCex | GlobalCex, cache: PredicateCache | None = None) -> Constraint:
    cache = _cache(ls, cache)
    match cex:
        case LocalCex():
            items = sorted(cex.enabled, key=lambda t: t.key) + sorted(cex.partial, key=lambda t: t.key)
            items += sorted(cex.disabled, key=lambda t: t.key)
            return conj(encode_local_transition(ls, t, cache) for t in items)
        case GlobalCex():
            terms = [encode_global_transition(ls, r, cache) for r in dict.fromkeys(cex.enabled)]
            terms.extend(encode_local_transition(ls, d, cache) for g in cex.disabled for d in g.transitions)
            return conj(terms)
    raise TypeError(f"Not a counterexample: {cex!r}")
