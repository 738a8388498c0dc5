import importlib.util
import pathlib
import unittest

from agreement_forge.lang import load_sketch
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.semantics import build_global_semantics, build_local_semantics, complete

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def local(name: str, **values):
    sketch = load_sketch(TOYS / f"{name}.mcy")
    return build_local_semantics(complete(sketch, Interpretation.constant(sketch.holes, values)))


@unittest.skipUnless(importlib.util.find_spec("pygraphviz"), "pygraphviz is not installed")
class TestGlobalGraph(unittest.TestCase):
    def test_disabled_edges_are_drawn(self):
        from agreement_forge.view import global_graph, to_dot

        gs = build_global_semantics(local("gate", **{"1": False, "2": "B"}), 2)
        g = global_graph(gs)
        dashed = [d for _, _, d in g.edges(data=True) if d.get("style") == "dashed"]
        self.assertEqual(len(dashed), 2)
        self.assertEqual(sorted(d["label"] for d in dashed), ["go", "go"])
        self.assertIn("dashed", to_dot(g).string())

        self.assertEqual(len(global_graph(gs, disabled=False).edges), 0)

    def test_local_graph(self):
        from agreement_forge.view import local_graph

        g = local_graph(local("gate", **{"1": False, "2": "B"}))
        self.assertTrue(any(d.get("style") == "dashed" for _, _, d in g.edges(data=True)))


if __name__ == "__main__":
    unittest.main()
