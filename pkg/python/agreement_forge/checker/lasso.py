"""
Fair accepting lassos of the product of a global semantics with a Büchi automaton.

The product is screened with an iterative nested depth-first search; when some
accepting cycle exists, strongly connected components are refined until one
is fair: every event ready at one of its states labels one of its edges. The
lasso is then stitched together inside that component.
"""

import collections
import dataclasses
import typing

import networkx as nx

from ..semantics.system import GlobalDisabled, GlobalSemantics, GlobalState, GlobalTransition, format_global
from ..utils.envs import FORGE_PRODUCT_BOUND
from ..utils.exceptions import ResourceLimit
from ..utils.logger import logger
from .buchi import BuchiAutomaton
from .safety import global_env

Node = typing.Tuple[GlobalState, int]


class ProductStructure:
    """(q, b) pairs; (q, b) → (q', b') when q -e-> q' and b -e / φ-> b' with φ(q')."""

    def __init__(self, gs: GlobalSemantics, automaton: BuchiAutomaton, bound: int | None = None) -> None:
        self._gs = gs
        self._automaton = automaton
        self._bound = bound or FORGE_PRODUCT_BOUND
        self._graph = nx.MultiDiGraph()
        self._parents: typing.Dict[Node, typing.Tuple[Node, GlobalTransition] | None] = {}
        self._initial: typing.List[Node] = []
        self._build()

    def _build(self) -> None:
        gs, automaton = self._gs, self._automaton
        q0 = gs.initial
        queue = collections.deque()
        for b in automaton.step(automaton.initial, None, global_env(gs, q0)):
            node = (q0, b)
            self._initial.append(node)
            self._parents[node] = None
            self._graph.add_node(node)
            queue.append(node)
        while queue:
            node = queue.popleft()
            q, b = node
            for r in gs.successors(q)[0]:
                for b2 in automaton.step(b, r.event, global_env(gs, r.dst, r.fired)):
                    dst = (r.dst, b2)
                    self._graph.add_edge(node, dst, key=r.key, transition=r)
                    if dst not in self._parents:
                        self._parents[dst] = (node, r)
                        if len(self._parents) > self._bound:
                            raise ResourceLimit("product", self._bound, f"product with '{automaton.name}'")
                        queue.append(dst)
        logger.debug(f"Product with '{automaton.name}': {len(self._parents)} states")

    @property
    def graph(self) -> nx.MultiDiGraph:
        return self._graph

    @property
    def initial(self) -> typing.List[Node]:
        return self._initial

    def is_accepting(self, node: Node) -> bool:
        return node[1] in self._automaton.accepting

    def stem(self, node: Node) -> typing.List[GlobalTransition]:
        """Breadth-first path from an initial product state to ``node``."""
        path = []
        while (parent := self._parents[node]) is not None:
            node, r = parent
            path.append(r)
        return path[::-1]

    def edges(self, node: Node) -> typing.List[typing.Tuple[Node, GlobalTransition]]:
        return [(v, data["transition"]) for _, v, data in self._graph.out_edges(node, data=True)]

    def __len__(self) -> int:
        return self._graph.number_of_nodes()


@dataclasses.dataclass(frozen=True)
class Lasso:
    property: str
    stem: typing.Tuple[GlobalTransition, ...]
    cycle: typing.Tuple[GlobalTransition, ...]
    cycle_disabled: typing.Tuple[GlobalDisabled, ...]

    @property
    def head(self) -> GlobalState:
        return self.cycle[0].src

    def __serialize__(self) -> dict:
        return {
            "kind": "lasso",
            "property": self.property,
            "head": format_global(self.head),
            "stem": [r.__serialize__() for r in self.stem],
            "cycle": [r.__serialize__() for r in self.cycle],
            "disabled": [d.__serialize__() for d in self.cycle_disabled],
        }

    def __str__(self) -> str:
        lines = [f"liveness '{self.property}' violated by a lasso at {format_global(self.head)}", "  stem:"]
        lines.extend(f"    {r}" for r in self.stem)
        lines.append("  cycle:")
        lines.extend(f"    {r}" for r in self.cycle)
        lines.extend(f"    {d}" for d in self.cycle_disabled)
        return "\n".join(lines)


def _has_accepting_cycle(product: ProductStructure) -> bool:
    """Nested depth-first search, iterative."""
    graph = product.graph
    visited: typing.Set[Node] = set()
    flagged: typing.Set[Node] = set()
    on_stack: typing.Set[Node] = set()

    def inner(seed: Node) -> bool:
        stack = [seed]
        while stack:
            node = stack.pop()
            for succ in graph.successors(node):
                if succ in on_stack:
                    return True
                if succ not in flagged:
                    flagged.add(succ)
                    stack.append(succ)
        return False

    for root in product.initial:
        if root in visited:
            continue
        visited.add(root)
        on_stack.add(root)
        stack = [(root, iter(graph.successors(root)))]
        while stack:
            node, children = stack[-1]
            child = next(children, None)
            if child is not None:
                if child not in visited:
                    visited.add(child)
                    on_stack.add(child)
                    stack.append((child, iter(graph.successors(child))))
                continue
            stack.pop()
            if product.is_accepting(node) and inner(node):
                return True
            on_stack.discard(node)
    return False


def _fair_component(gs: GlobalSemantics, product: ProductStructure) -> typing.Set[Node] | None:
    ready = gs.ready
    work = [set(product.graph.nodes)]
    while work:
        part = work.pop()
        sub = product.graph.subgraph(part)
        for scc in sorted(nx.strongly_connected_components(sub), key=min):
            if len(scc) == 1:
                (node,) = scc
                if not sub.has_edge(node, node):
                    continue
            if not any(product.is_accepting(n) for n in scc):
                continue
            taken = {data["transition"].event for u, v, data in sub.edges(scc, data=True) if v in scc}
            unfair = {n for n in scc if ready.get(n[0], frozenset()) - taken}
            if not unfair:
                return scc
            if len(unfair) < len(scc):
                work.append(scc - unfair)
    return None


def _walk(product: ProductStructure, component: typing.Set[Node], src: Node, dst: Node):
    """Shortest path inside ``component``: list of (node, transition, next node)."""
    sub = product.graph.subgraph(component)
    nodes = nx.shortest_path(sub, src, dst)
    steps = []
    for u, v in zip(nodes, nodes[1:]):
        r = min((data["transition"] for data in sub.get_edge_data(u, v).values()), key=lambda r: r.key)
        steps.append((u, r, v))
    return steps


def _cycle(product: ProductStructure, component: typing.Set[Node]) -> typing.Tuple[Node, typing.List[GlobalTransition]]:
    head = min(n for n in component if product.is_accepting(n))
    sub = product.graph.subgraph(component)
    by_event: typing.Dict[str, typing.Tuple[Node, GlobalTransition, Node]] = {}
    for u, v, data in sorted(sub.edges(data=True), key=lambda e: (e[0], e[2]["transition"].key)):
        by_event.setdefault(data["transition"].event, (u, data["transition"], v))

    cycle: typing.List[GlobalTransition] = []
    current = head
    for event in sorted(by_event):
        u, r, v = by_event[event]
        if any(step.event == event for step in cycle):
            continue
        cycle.extend(step for _, step, _ in _walk(product, component, current, u))
        cycle.append(r)
        current = v
    cycle.extend(step for _, step, _ in _walk(product, component, current, head))
    return head, cycle


def find_fair_accepting_lasso(
    gs: GlobalSemantics, automaton: BuchiAutomaton, bound: int | None = None
) -> Lasso | None:
    product = ProductStructure(gs, automaton, bound)
    if not _has_accepting_cycle(product):
        return None
    component = _fair_component(gs, product)
    if component is None:
        logger.debug(f"Accepting cycles of '{automaton.name}' are all unfair")
        return None
    head, cycle = _cycle(product, component)
    states = list(dict.fromkeys(r.src for r in cycle))
    disabled = tuple(d for q in states for d in gs.successors(q)[1])
    return Lasso(automaton.name, tuple(product.stem(head)), tuple(cycle), disabled)
