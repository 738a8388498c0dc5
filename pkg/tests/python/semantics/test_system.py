import pathlib
import unittest

from agreement_forge.lang import EventKind, load_sketch
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.semantics import (
    LocalState,
    build_global_semantics,
    build_local_semantics,
    complete,
    format_global,
    successors_at,
)
from agreement_forge.utils.exceptions import ResourceLimit

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def local(name: str, **values):
    sketch = load_sketch(TOYS / f"{name}.mcy")
    return build_local_semantics(complete(sketch, Interpretation.constant(sketch.holes, values)))


class TestPartition(unittest.TestCase):
    def setUp(self):
        self.ls = local("duo")
        self.C, self.W, self.L = LocalState("C"), LocalState("W"), LocalState("L")

    def test_one_winner_per_round(self):
        enabled, disabled = successors_at(self.ls, (self.C, self.C, self.C))
        self.assertEqual(len(enabled), 3)
        self.assertEqual(disabled, [])
        for r in enabled:
            self.assertEqual(r.kind, EventKind.PARTITION)
            self.assertEqual(r.participants, (0, 1, 2))
            self.assertEqual(sorted(s.location for s in r.dst), ["L", "L", "W"])

    def test_partial_round(self):
        enabled, _ = successors_at(self.ls, (self.C, self.W))
        rounds = [r for r in enabled if r.kind is EventKind.PARTITION]
        self.assertEqual(len(rounds), 1)
        self.assertEqual(rounds[0].participants, (0,))
        self.assertEqual(rounds[0].dst, (self.W, self.W))

    def test_reachable_states(self):
        gs = build_global_semantics(self.ls, 2)
        self.assertEqual(gs.initial, (self.C, self.C))
        self.assertEqual(set(gs.states), {(self.C, self.C), (self.W, self.L), (self.L, self.W)})
        self.assertEqual(len(gs.trace_to((self.W, self.L))), 1)
        self.assertEqual(format_global(gs.initial), "[C C]")

    def test_state_bound(self):
        with self.assertRaises(ResourceLimit):
            build_global_semantics(self.ls, 2, state_bound=2)


class TestConsensus(unittest.TestCase):
    def test_agreement_on_a_proposal(self):
        ls = local("vote")
        q = (LocalState("C", (1,)), LocalState("C", (2,)))
        enabled, _ = successors_at(ls, q)
        rounds = [r for r in enabled if r.kind is EventKind.CONSENSUS]
        self.assertEqual(len(rounds), 2)
        decided = set()
        for r in rounds:
            self.assertEqual({s.location for s in r.dst}, {"D"})
            self.assertEqual(r.dst[0].values, r.dst[1].values)
            decided.add(r.dst[0].values)
        self.assertEqual(decided, {(1,), (2,)})

    def test_environment_moves_one_process(self):
        ls = local("vote")
        enabled, _ = successors_at(ls, (LocalState("C", (1,)), LocalState("C", (1,))))
        stimuli = [r for r in enabled if r.event == "pick"]
        self.assertEqual(len(stimuli), 4)
        for r in stimuli:
            self.assertEqual(len(r.active), 1)


class TestDisabled(unittest.TestCase):
    def test_grouped_per_process(self):
        ls = local("gate", **{"1": False, "2": "B"})
        a = LocalState("A", (False,))
        enabled, disabled = successors_at(ls, (a, a))
        self.assertEqual(enabled, [])
        self.assertEqual([(d.event, d.process) for d in disabled], [("go", 0), ("go", 1)])

    def test_environment_step(self):
        ls = local("gate", **{"1": True, "2": "B"})
        gs = build_global_semantics(ls, 2)
        self.assertEqual(len(gs.states), 4)
        enabled, disabled = gs.successors(gs.initial)
        self.assertEqual(len(enabled), 2)
        self.assertEqual(disabled, [])


if __name__ == "__main__":
    unittest.main()
