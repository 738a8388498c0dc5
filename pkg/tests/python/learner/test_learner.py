import pathlib
import unittest

from agreement_forge.lang import load_sketch
from agreement_forge.learner.constraint import FALSE, App, cmp, conj, disj, holds
from agreement_forge.learner.interpretation import Interpretation, count_interpretations, enumerate_interpretations
from agreement_forge.learner.learner import Learner, exclude, interpretation_constraint, solve
from agreement_forge.utils.exceptions import InterpretationError

CORPUS = pathlib.Path(__file__).parents[3] / "corpus"


class TestInterpretation(unittest.TestCase):
    def setUp(self):
        self.holes = load_sketch(CORPUS / "toys" / "gate.mcy").holes

    def test_constant(self):
        interp = Interpretation.constant(self.holes, {"1": True, "2": "B"})
        self.assertIs(interp.value("1", (False,)), True)
        self.assertEqual(interp("2", (True,)), "B")
        self.assertTrue(interp.is_constant("2"))
        self.assertEqual(str(interp), "??1(b) = true\n??2(b) = B")

    def test_incomplete(self):
        with self.assertRaises(InterpretationError):
            Interpretation(self.holes, {"1": {(False,): True}})

    def test_out_of_domain(self):
        with self.assertRaises(InterpretationError):
            Interpretation.constant(self.holes, {"1": True, "2": "Z"})

    def test_enumerate(self):
        everything = list(enumerate_interpretations(self.holes))
        self.assertEqual(len(everything), count_interpretations(self.holes))
        self.assertEqual(len(set(everything)), 16)

    def test_interpretation_constraint(self):
        interp = Interpretation.constant(self.holes, {"1": False, "2": "A"})
        self.assertTrue(holds(interpretation_constraint(interp), interp))
        self.assertFalse(holds(exclude(interp), interp))


class TestLearner(unittest.TestCase):
    def setUp(self):
        self.holes = load_sketch(CORPUS / "toys" / "gate.mcy").holes

    def test_plugins(self):
        self.assertEqual(Learner(self.holes).mode, "solver")
        self.assertEqual(Learner(self.holes, _plugin_name="enumerate").mode, "enumerate")
        self.assertIn("enumerate", Learner.plugin_names())

    def test_solve(self):
        store = [cmp("=", App("1", (False,)), True), cmp("=", App("2", (True,)), "B")]
        interp = solve(self.holes, store)
        self.assertIs(interp.value("1", (False,)), True)
        self.assertEqual(interp.value("2", (True,)), "B")
        for c in store:
            self.assertTrue(holds(c, interp))

    def test_unsat(self):
        self.assertIsNone(solve(self.holes, [FALSE]))
        a = cmp("=", App("1", (False,)), True)
        b = cmp("=", App("2", (True,)), "A")
        store = [disj(a, b), cmp("=", App("1", (False,)), False), cmp("=", App("2", (True,)), "B")]
        self.assertIsNone(solve(self.holes, store))

    def test_ill_typed(self):
        learner = Learner(self.holes)
        with self.assertRaises(InterpretationError):
            learner.add(cmp("=", App("1", (3,)), True))
        with self.assertRaises(InterpretationError):
            learner.add(cmp("=", App("9"), True))

    def test_refute_until_exhausted(self):
        for name in ("solver", "enumerate"):
            with self.subTest(learner=name):
                learner = Learner(self.holes, _plugin_name=name)
                seen = set()
                while (interp := learner.propose()) is not None:
                    self.assertNotIn(interp, seen)
                    seen.add(interp)
                    learner.refute(interp, exclude(interp))
                self.assertEqual(len(seen), 16)

    def test_agree_on_unique_model(self):
        store = conj(
            cmp("=", App("1", (False,)), True),
            cmp("=", App("1", (True,)), False),
            cmp("=", App("2", (False,)), "A"),
            cmp("=", App("2", (True,)), "B"),
        )
        results = []
        for name in ("solver", "enumerate"):
            learner = Learner(self.holes, _plugin_name=name)
            learner.add(store)
            results.append(learner.propose())
        self.assertEqual(results[0], results[1])

    def test_dump_constraints(self):
        learner = Learner(self.holes)
        learner.add(cmp("=", App("1", (False,)), True))
        self.assertEqual(learner.dump_constraints(), "(= (??1 false) true)")


if __name__ == "__main__":
    unittest.main()
