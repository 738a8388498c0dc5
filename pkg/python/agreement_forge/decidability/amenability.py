"""
Cutoff-amenability.

For each counting atom of the safety lines, st(atom) is the set of local states
satisfying its predicate. Either every simple path from s0 into st(atom) is
independent, or every branch off an independent path either re-enters the path
independently or always returns to the branching state through independent
transitions.
"""

import collections
import functools
import itertools
import typing

import networkx as nx

from ..extract.cube import Cube, Has, Transitions, Trapped
from ..extract.extractor import extract_amenability_cex
from ..lang.expression import CountAtom
from ..lang.spec import SpecSuite
from ..semantics.local import LocalSemantics, LocalTransition
from ..semantics.state import LocalState
from ..utils.envs import FORGE_CUBE_BOUND, FORGE_PATH_BOUND
from ..utils.exceptions import ResourceLimit
from ..utils.logger import logger
from ..utils.misc import ordered_results
from .compatibility import ConditionReport
from .phases import is_internal

Path = typing.Tuple[LocalTransition, ...]


def independent(ls: LocalSemantics, t: LocalTransition, strict: bool = False) -> bool:
    """internal 或环境事件迁移; strict 时只有 internal"""
    return is_internal(ls.sketch, t, strict)


def satisfying_states(ls: LocalSemantics, atom: CountAtom) -> typing.List[LocalState]:
    """st(atom)"""
    space = ls.space
    return [s for s in ls.states if atom.predicate.evaluate(space.predicate_env(s))]


def _simple_paths(
    ls: LocalSemantics, targets: typing.List[LocalState], bound: int, atom: CountAtom
) -> typing.List[Path]:
    graph = ls.graph
    paths = []
    for edges in nx.all_simple_edge_paths(graph, ls.initial, targets):
        paths.append(tuple(graph.edges[e]["transition"] for e in edges))
        if len(paths) > bound:
            raise ResourceLimit("path", bound, f"simple paths into st({atom.render()})")
    return paths


def _rank(path: Path):
    return (len(path), [tuple(str(x) for x in t.key) for t in path])


class _Branches:
    def __init__(self, ls: LocalSemantics, strict: bool) -> None:
        self._ls = ls
        self._strict = strict
        self._reach: typing.Dict[LocalState, typing.Set[LocalState]] = {}

    def _independent(self, t: LocalTransition) -> bool:
        return independent(self._ls, t, self._strict)

    def reachable(self, state: LocalState) -> typing.Set[LocalState]:
        if state not in self._reach:
            self._reach[state] = nx.descendants(self._ls.graph, state) | {state}
        return self._reach[state]

    def _around(self, start: LocalState, avoid: LocalState) -> typing.Dict[LocalState, LocalTransition | None]:
        """breadth-first parents of the states reachable from ``start`` without passing ``avoid``"""
        parents: typing.Dict[LocalState, LocalTransition | None] = {start: None}
        queue = collections.deque([start])
        while queue:
            s = queue.popleft()
            for t in self._ls.outgoing(s):
                if t.dst != avoid and t.dst not in parents:
                    parents[t.dst] = t
                    queue.append(t.dst)
        return parents

    @staticmethod
    def _path(parents, state) -> Path:
        path = []
        while (t := parents[state]) is not None:
            path.append(t)
            state = t.src
        return tuple(path[::-1])

    def violations(self, x: Path, p: Path, atom: str) -> typing.Iterator[Cube]:
        on_path = [self._ls.initial] + [t.dst for t in p]
        members = set(on_path)
        head = (Transitions("x", x), Transitions("p", p))
        for s_s in dict.fromkeys(on_path):
            for t in self._ls.outgoing(s_s):
                if t.dst == s_s:
                    continue
                bindings = (("atom", atom), ("s_s", str(s_s)), ("s_d", str(t.dst)))
                if t.dst in members:
                    if not self._independent(t):
                        yield Cube("2a", bindings, (*head, Has(t)))
                    continue
                parents = self._around(t.dst, s_s)
                for r in parents:
                    if s_s not in self.reachable(r):
                        path = Transitions("path", self._path(parents, r))
                        yield Cube("2b", bindings + (("r", str(r)),), (*head, Has(t), path, Trapped(r, s_s)))
                for r in parents:
                    for u in self._ls.outgoing(r):
                        if not self._independent(u):
                            path = Transitions("path", self._path(parents, r) + (u,))
                            yield Cube("2b", bindings + (("u", str(u)),), (*head, Has(t), path))


def _check_atom(
    ls: LocalSemantics, atom: CountAtom, branches: _Branches, strict: bool, path_bound: int, cube_bound: int
) -> typing.Tuple[dict, typing.Tuple[Cube, ...]]:
    """The verdict entry of one atom and its satisfied negation cubes (empty when it passes)."""
    entry = {"atom": atom.render()}
    targets = satisfying_states(ls, atom)
    if not targets:
        return {**entry, "clause": "vacuous"}, ()
    # s0 ∈ st(atom): 空路径, 视为独立
    paths = [()] if ls.initial in targets else []
    others = [s for s in targets if s != ls.initial]
    if others:
        paths.extend(_simple_paths(ls, others, path_bound, atom))
    free = sorted((p for p in paths if all(independent(ls, t, strict) for t in p)), key=_rank)
    bound = sorted((p for p in paths if p not in free), key=_rank)
    if not bound:
        return {**entry, "clause": "1", "paths": len(paths)}, ()
    x = bound[0]
    cubes = tuple(itertools.islice((c for p in free for c in branches.violations(x, p, atom.render())), cube_bound))
    return {**entry, "clause": "2", "paths": len(paths)}, cubes


def check_amenability(
    ls: LocalSemantics,
    spec: SpecSuite,
    strict: bool = False,
    path_bound: int | None = None,
    cube_bound: int | None = None,
    jobs: int = 1,
) -> ConditionReport:
    """Atoms in spec order; with ``jobs`` > 1 they are checked concurrently and merged in that order."""
    path_bound = path_bound or FORGE_PATH_BOUND
    cube_bound = cube_bound or FORGE_CUBE_BOUND
    branches = _Branches(ls, strict)
    atoms = list(dict.fromkeys(atom for line in spec.safety for atom in line.atoms))
    calls = [functools.partial(_check_atom, ls, atom, branches, strict, path_bound, cube_bound) for atom in atoms]
    checked = []
    for atom, (entry, cubes) in zip(atoms, ordered_results(calls, jobs)):
        if cubes:
            cex = extract_amenability_cex(ls, cubes, strict)
            logger.debug(f"Amenability fails for atom {atom.render()}: clause {cex.cube.condition}")
            return ConditionReport("amenability", False, cex.cube.condition, cubes, cex)
        checked.append(entry)
    return ConditionReport("amenability", True, detail={"atoms": checked})
