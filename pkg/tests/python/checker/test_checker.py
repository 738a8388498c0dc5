import pathlib
import unittest

from agreement_forge.checker import check_deadlock, check_safety, find_fair_accepting_lasso, ltl_to_buchi
from agreement_forge.lang import LivenessTemplate, load_sketch, load_spec, parse_spec
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.semantics import LocalState, build_global_semantics, build_local_semantics, complete

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def system(name: str, n: int, **values):
    sketch = load_sketch(TOYS / f"{name}.mcy")
    ls = build_local_semantics(complete(sketch, Interpretation.constant(sketch.holes, values)))
    return build_global_semantics(ls, n)


class TestSafety(unittest.TestCase):
    def test_single_winner(self):
        gs = system("duo", 3)
        self.assertIsNone(check_safety(gs, load_spec(TOYS / "duo.spec")))

    def test_shortest_trace(self):
        gs = system("duo", 2)
        trace = check_safety(gs, load_spec(TOYS / "duo_no_winner.spec"))
        self.assertIsNotNone(trace)
        self.assertEqual(trace.line.name, "noWinner")
        self.assertEqual(len(trace), 1)
        self.assertIn(LocalState("W"), trace.state)
        self.assertEqual(trace.__serialize__()["kind"], "trace")

    def test_initial_violation(self):
        gs = system("gate", 1, **{"1": True, "2": "B"})
        trace = check_safety(gs, load_spec(TOYS / "gate_never_a.spec"))
        self.assertEqual(len(trace), 0)

    def test_agreement(self):
        gs = system("vote", 2)
        self.assertIsNone(check_safety(gs, load_spec(TOYS / "vote.spec")))


class TestDeadlock(unittest.TestCase):
    def test_blocked_guard(self):
        gs = system("gate", 2, **{"1": False, "2": "B"})
        cex = check_deadlock(gs)
        self.assertIsNotNone(cex)
        self.assertEqual(cex.state, gs.initial)
        self.assertEqual(cex.trace, ())
        self.assertEqual(len(cex.disabled), 2)

    def test_idle_locations(self):
        self.assertIsNone(check_deadlock(system("gate", 2, **{"1": True, "2": "B"})))
        self.assertIsNone(check_deadlock(system("duo", 2)))


class TestLiveness(unittest.TestCase):
    def setUp(self):
        (self.line,) = load_spec(TOYS / "gate.spec").liveness

    def test_automaton(self):
        automaton = ltl_to_buchi(self.line)
        self.assertEqual(automaton.name, "reachB")
        self.assertEqual(automaton.accepting, frozenset([1]))

        (response,) = parse_spec("liveness r: always 1 at (loc = A) implies eventually 1 at (loc = B)\n").liveness
        self.assertEqual(response.template, LivenessTemplate.ALWAYS_IMPLIES)
        self.assertEqual(len(ltl_to_buchi(response).transitions), 3)

    def test_reached(self):
        gs = system("gate", 1, **{"1": True, "2": "B"})
        self.assertIsNone(find_fair_accepting_lasso(gs, ltl_to_buchi(self.line)))

    def test_loop_back(self):
        gs = system("gate", 1, **{"1": True, "2": "A"})
        lasso = find_fair_accepting_lasso(gs, ltl_to_buchi(self.line))
        self.assertIsNotNone(lasso)
        self.assertEqual(lasso.property, "reachB")
        self.assertGreater(len(lasso.cycle), 0)
        for r in lasso.stem + lasso.cycle:
            self.assertTrue(all(s.location == "A" for s in r.dst))


if __name__ == "__main__":
    unittest.main()
