import pathlib
import unittest

from agreement_forge.checker import check_deadlock
from agreement_forge.decidability import check_phase_compatibility
from agreement_forge.encode import PredicateCache, encode_cex, reaches
from agreement_forge.extract import package_global_cex
from agreement_forge.lang import load_sketch, load_spec
from agreement_forge.learner.constraint import TRUE, App, cmp, holds
from agreement_forge.learner.interpretation import Interpretation, enumerate_interpretations
from agreement_forge.semantics import (
    LocalState,
    build_global_semantics,
    build_local_semantics,
    complete,
    sketch_semantics,
)
from agreement_forge.synth import exhibits, run_stages

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


class TestEncoding(unittest.TestCase):
    def setUp(self):
        self.gate = load_sketch(TOYS / "gate.mcy")

    def local(self, sketch, **values):
        return build_local_semantics(complete(sketch, Interpretation.constant(sketch.holes, values)))

    def assertExact(self, sketch, ls, cex):
        encoding = encode_cex(ls, cex, PredicateCache(sketch_semantics(sketch)))
        self.assertTrue(holds(encoding, ls.interpretation))
        for interp in enumerate_interpretations(sketch.holes):
            self.assertEqual(holds(encoding, interp), exhibits(sketch, interp, cex), str(interp))
        return encoding

    def test_reaches(self):
        ls = self.local(self.gate, **{"1": True, "2": "A"})
        self.assertEqual(reaches(ls, LocalState("A", (False,))), TRUE)
        looped = reaches(ls, LocalState("A", (True,)))
        self.assertTrue(holds(looped, ls.interpretation))
        self.assertFalse(holds(looped, Interpretation.constant(self.gate.holes, {"1": True, "2": "B"})))

    def test_deadlock(self):
        ls = self.local(self.gate, **{"1": False, "2": "B"})
        cex = package_global_cex(check_deadlock(build_global_semantics(ls, 2)))
        encoding = self.assertExact(self.gate, ls, cex)
        self.assertEqual(encoding, cmp("=", App("1", (False,)), False))

    def test_lasso(self):
        looping = Interpretation.constant(self.gate.holes, {"1": True, "2": "A"})
        report = run_stages(self.gate, looping, load_spec(TOYS / "gate.spec"))
        self.assertExact(self.gate, report.semantics, report.cex)

    def test_local_cex(self):
        shout = load_sketch(TOYS / "shout.mcy")
        ls = self.local(shout, **{"1": False})
        encoding = self.assertExact(shout, ls, check_phase_compatibility(ls).cex)
        self.assertEqual(encoding, cmp("=", App("1", ()), False))


if __name__ == "__main__":
    unittest.main()
