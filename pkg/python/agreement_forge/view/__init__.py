from .render_graphviz import global_graph, local_graph, render, to_dot
