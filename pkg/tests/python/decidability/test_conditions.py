import pathlib
import unittest

from agreement_forge.decidability import check_amenability, check_phase_compatibility, compute_cutoff
from agreement_forge.lang import load_sketch, load_spec, parse_spec
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.semantics import build_local_semantics, complete
from agreement_forge.utils.exceptions import ForgeError

CORPUS = pathlib.Path(__file__).parents[3] / "corpus"
TOYS = CORPUS / "toys"


def local(name: str, **values):
    sketch = load_sketch(TOYS / f"{name}.mcy")
    return build_local_semantics(complete(sketch, Interpretation.constant(sketch.holes, values)))


class TestPhaseCompatibility(unittest.TestCase):
    def test_hole_free_toys(self):
        for name in ("duo", "vote"):
            with self.subTest(name=name):
                report = check_phase_compatibility(local(name))
                self.assertTrue(report.ok)
                self.assertIsNone(report.condition)

    def test_initiator_must_react(self):
        report = check_phase_compatibility(local("shout", **{"1": False}))
        self.assertFalse(report.ok)
        self.assertEqual(report.condition, "1")
        self.assertEqual(report.cubes[0].condition, "1")
        self.assertIsNotNone(report.cex)

        data = report.__serialize__()
        self.assertEqual(data["property"], "phase_compatibility")
        self.assertEqual(data["condition"], "1")

    def test_reacting_initiator(self):
        self.assertTrue(check_phase_compatibility(local("shout", **{"1": True})).ok)

    def test_detour(self):
        for guard in (False, True):
            with self.subTest(guard=guard):
                self.assertTrue(check_phase_compatibility(local("detour", **{"1": guard})).ok)


class TestAmenability(unittest.TestCase):
    def setUp(self):
        self.spec = load_spec(TOYS / "detour.spec")

    def test_trapped_branch(self):
        report = check_amenability(local("detour", **{"1": True}), self.spec)
        self.assertFalse(report.ok)
        self.assertEqual(report.condition, "2b")
        self.assertEqual(report.__serialize__()["property"], "amenability")

    def test_trapped_branch_with_initial_in_target(self):
        spec = parse_spec("safety apart: never 1 at (loc = A or loc = B) and 1 at (loc = M)\n")
        report = check_amenability(local("detour", **{"1": True}), spec)
        self.assertFalse(report.ok)
        self.assertEqual(report.condition, "2b")

        report = check_amenability(local("detour", **{"1": False}), spec)
        self.assertTrue(report.ok)
        self.assertEqual(report.detail["atoms"][0]["clause"], "1")

    def test_single_path(self):
        report = check_amenability(local("detour", **{"1": False}), self.spec)
        self.assertTrue(report.ok)

    def test_only_dependent_paths(self):
        self.assertTrue(check_amenability(local("duo"), load_spec(TOYS / "duo.spec")).ok)

    def test_vacuous_atoms(self):
        ls = local("gate", **{"1": False, "2": "B"})
        report = check_amenability(ls, parse_spec("safety s: never 1 at (loc = B)\n"))
        self.assertTrue(report.ok)
        self.assertEqual(report.detail["atoms"][0]["clause"], "vacuous")


class TestCutoff(unittest.TestCase):
    def test_toys(self):
        self.assertEqual(compute_cutoff(local("duo"), load_spec(TOYS / "duo.spec")), 2)
        self.assertEqual(compute_cutoff(local("vote"), load_spec(TOYS / "vote.spec")), 2)
        gate = load_sketch(TOYS / "gate.mcy")
        self.assertEqual(compute_cutoff(gate, load_spec(TOYS / "gate.spec")), 1)

    def test_round_size(self):
        self.assertEqual(compute_cutoff(local("duo"), parse_spec("")), 2)

    def test_unresolved_cardinality_hole(self):
        sketch = load_sketch(CORPUS / "consortium.mcy")
        self.assertGreaterEqual(compute_cutoff(sketch, parse_spec("")), 4)

    def test_override(self):
        spec = load_spec(TOYS / "duo.spec")
        self.assertEqual(compute_cutoff(local("duo"), spec, override=3), 3)
        with self.assertRaises(ForgeError):
            compute_cutoff(local("duo"), spec, override=1)


class TestParallelChecks(unittest.TestCase):
    def test_same_verdicts_on_a_pool(self):
        spec = load_spec(TOYS / "detour.spec")
        for guard in (False, True):
            with self.subTest(guard=guard):
                ls = local("detour", **{"1": guard})
                one, many = check_amenability(ls, spec), check_amenability(ls, spec, jobs=3)
                self.assertEqual((one.ok, one.condition, one.cubes), (many.ok, many.condition, many.cubes))

        ls = local("shout", **{"1": False})
        one, many = check_phase_compatibility(ls), check_phase_compatibility(ls, jobs=3)
        self.assertEqual((one.ok, one.condition, one.cubes), (many.ok, many.condition, many.cubes))
        self.assertTrue(check_phase_compatibility(local("duo"), jobs=3).ok)


if __name__ == "__main__":
    unittest.main()
