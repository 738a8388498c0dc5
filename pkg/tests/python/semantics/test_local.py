import pathlib
import unittest

from agreement_forge.lang import Action, load_sketch
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.semantics import (
    LocalState,
    build_local_semantics,
    complete,
    sketch_semantics,
)
from agreement_forge.utils.exceptions import InterpretationError

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def gate_semantics(guard: bool, target: str):
    sketch = load_sketch(TOYS / "gate.mcy")
    interp = Interpretation.constant(sketch.holes, {"1": guard, "2": target})
    return build_local_semantics(complete(sketch, interp))


class TestLocalSemantics(unittest.TestCase):
    def test_gate_open(self):
        ls = gate_semantics(True, "B")
        self.assertEqual(ls.initial, LocalState("A", (False,)))
        self.assertEqual(set(ls.states), {LocalState("A", (False,)), LocalState("B", (True,))})
        self.assertEqual(len(ls.enabled), 2)
        self.assertEqual(ls.disabled, ())

        (step,) = ls.outgoing(ls.initial)
        self.assertEqual(step.action, Action("R", "go"))
        self.assertEqual(step.handler, "A#0")
        self.assertEqual(step.dst, LocalState("B", (True,)))
        self.assertEqual(ls.path_to(LocalState("B", (True,))), [step])

    def test_gate_closed(self):
        ls = gate_semantics(False, "B")
        self.assertEqual(ls.states, (LocalState("A", (False,)),))
        self.assertEqual(ls.enabled, ())
        (blocked,) = ls.disabled
        self.assertEqual(blocked.action, Action("R", "go"))
        self.assertEqual(blocked.handler, "A#0")

    def test_gate_loops_back(self):
        ls = gate_semantics(True, "A")
        self.assertEqual(set(ls.states), {LocalState("A", (False,)), LocalState("A", (True,))})
        self.assertEqual(len(ls.outgoing(LocalState("A", (True,)))), 1)

    def test_missing_hole(self):
        sketch = load_sketch(TOYS / "gate.mcy")
        with self.assertRaises(InterpretationError):
            complete(sketch)

    def test_partition_branches(self):
        ls = build_local_semantics(complete(load_sketch(TOYS / "duo.mcy")))
        self.assertEqual({s.location for s in ls.states}, {"C", "W", "L"})
        actions = {(str(t.action), t.dst.location) for t in ls.outgoing(ls.initial)}
        self.assertEqual(actions, {("A(p)", "W"), ("R(p)", "L")})

    def test_consensus_decisions(self):
        ls = build_local_semantics(complete(load_sketch(TOYS / "vote.mcy")))
        self.assertEqual(
            set(ls.states),
            {LocalState("C", (1,)), LocalState("C", (2,)), LocalState("D", (1,)), LocalState("D", (2,))},
        )
        decided = {(t.decided, t.dst) for t in ls.outgoing(LocalState("C", (1,))) if t.action == Action("A", "k")}
        self.assertEqual(decided, {((1,), LocalState("D", (1,))), ((2,), LocalState("D", (2,)))})


class TestSketchSemantics(unittest.TestCase):
    def test_potential_covers_every_interpretation(self):
        sketch = load_sketch(TOYS / "gate.mcy")
        potential = sketch_semantics(sketch)
        self.assertEqual(potential.initial, LocalState("A", (False,)))
        self.assertIn(LocalState("A", (True,)), potential.states())
        self.assertIn(LocalState("B", (True,)), potential.states())
        self.assertIn(potential.initial, potential.concrete)


if __name__ == "__main__":
    unittest.main()
