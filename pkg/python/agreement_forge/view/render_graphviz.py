"""DOT rendering of local and global semantics through networkx + pygraphviz."""

import html
import pathlib

import networkx as nx
import pygraphviz as pgv
from networkx.drawing.nx_agraph import to_agraph

from ..semantics.local import LocalSemantics
from ..semantics.system import GlobalSemantics, format_global
from ..utils.logger import logger
from ..utils.tags import _bottom_

PredefinedTheme = {
    "graph": {"rankdir": "LR", "fontname": "Helvetica"},
    "node": {"shape": "box", "style": "rounded", "fontname": "Helvetica", "fontsize": 10},
    "edge": {"fontname": "Helvetica", "fontsize": 9},
    "initial": {"peripheries": 2},
    "concrete": {"color": "black"},
    "potential": {"color": "gray40", "style": "rounded,dashed"},
    "sketch": {"color": "black"},
    "holey": {"color": "blue"},
    "disabled": {"style": "dashed", "color": "red", "arrowhead": "tee"},
    "bottom": {"shape": "point", "width": 0.08},
}


def _node_id(state) -> str:
    return html.escape(str(state))


def local_graph(ls: LocalSemantics, disabled: bool = True) -> nx.MultiDiGraph:
    """Enabled transitions solid (black when independent of the holes), disabled ones dashed into ⊥ nodes."""
    g = nx.MultiDiGraph(name=ls.sketch.name)
    for state in ls.states:
        style = dict(PredefinedTheme["concrete"] if ls.is_concrete(state) else PredefinedTheme["potential"])
        if state == ls.initial:
            style.update(PredefinedTheme["initial"])
        g.add_node(_node_id(state), label=str(state), **style)
    for t in ls.enabled:
        style = PredefinedTheme["sketch"] if t.sketch else PredefinedTheme["holey"]
        g.add_edge(_node_id(t.src), _node_id(t.dst), label=f"{t.action}/{t.handler}", **style)
    if disabled:
        for i, d in enumerate(ls.disabled):
            sink = f"{_bottom_.name}{i}"
            g.add_node(sink, label="", **PredefinedTheme["bottom"])
            g.add_edge(_node_id(d.src), sink, label=f"{d.action}/{d.handler}", **PredefinedTheme["disabled"])
    return g


def global_graph(gs: GlobalSemantics, disabled: bool = True) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph(name=f"{gs.sketch.name}[{gs.n}]")
    for q in gs.states:
        style = PredefinedTheme["initial"] if q == gs.initial else {}
        g.add_node(_node_id(format_global(q)), label=format_global(q), **style)
    for r in gs.transitions:
        label = f"{r.event}@{list(r.participants)}"
        g.add_edge(_node_id(format_global(r.src)), _node_id(format_global(r.dst)), label=label)
    if disabled:
        for i, d in enumerate(gs.disabled):
            sink = f"{_bottom_.name}{i}"
            g.add_node(sink, label="", **PredefinedTheme["bottom"])
            label = f"{d.event}"
            g.add_edge(_node_id(format_global(d.src)), sink, label=label, **PredefinedTheme["disabled"])
    return g


def to_dot(graph: nx.MultiDiGraph) -> pgv.AGraph:
    ag: pgv.AGraph = to_agraph(graph)
    ag.graph_attr.update(PredefinedTheme["graph"])
    ag.node_attr.update(PredefinedTheme["node"])
    ag.edge_attr.update(PredefinedTheme["edge"])
    return ag


def render(graph: nx.MultiDiGraph, path: str | pathlib.Path, format: str | None = None) -> pathlib.Path:
    """``.dot``/``.gv`` is written as text; any other extension is laid out by ``dot``."""
    path = pathlib.Path(path)
    ag = to_dot(graph)
    format = format or path.suffix.lstrip(".") or "dot"
    if format in ("dot", "gv"):
        ag.write(str(path))
    else:
        ag.draw(str(path), format=format, prog="dot")
    logger.debug(f"Render {graph.name} to {path}")
    return path
