import pathlib
import unittest

from agreement_forge.checker import check_deadlock
from agreement_forge.decidability import check_phase_compatibility
from agreement_forge.extract import extract_local_cex, package_global_cex, replays, resatisfies
from agreement_forge.lang import Action, load_sketch
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.semantics import LocalState, build_global_semantics, build_local_semantics, complete
from agreement_forge.utils.exceptions import ExtractionError

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def local(name: str, **values):
    sketch = load_sketch(TOYS / f"{name}.mcy")
    return build_local_semantics(complete(sketch, Interpretation.constant(sketch.holes, values)))


class TestLocalCex(unittest.TestCase):
    def test_minimal_witness(self):
        ls = local("shout", **{"1": False})
        cex = check_phase_compatibility(ls).cex
        self.assertEqual(cex.property, "phase_compatibility")
        self.assertEqual(cex.size, 2)
        (sent,) = cex.enabled
        self.assertEqual(sent.action, Action("A", "m"))
        self.assertEqual(sent.src, LocalState("S"))
        (blocked,) = cex.disabled
        self.assertEqual(blocked.action, Action("R", "m"))
        self.assertTrue(resatisfies(ls, cex))

    def test_nothing_to_extract(self):
        with self.assertRaises(ExtractionError):
            extract_local_cex(local("duo"), [])


class TestGlobalCex(unittest.TestCase):
    def test_deadlock(self):
        ls = local("gate", **{"1": False, "2": "B"})
        gs = build_global_semantics(ls, 2)
        cex = package_global_cex(check_deadlock(gs))
        self.assertEqual(cex.shape, "deadlock")
        self.assertEqual(cex.enabled, ())
        self.assertEqual(cex.size, 2)
        self.assertTrue(replays(gs, cex))


if __name__ == "__main__":
    unittest.main()
