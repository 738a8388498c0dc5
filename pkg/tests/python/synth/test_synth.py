import json
import pathlib
import tempfile
import unittest

import yaml

from agreement_forge.lang import load_sketch, load_spec
from agreement_forge.learner.interpretation import Interpretation
from agreement_forge.synth import (
    Outcome,
    ReportWriter,
    Stage,
    SynthOptions,
    brute_force_synth,
    exhibits,
    passing_interpretations,
    run_stages,
    synthesize,
    verify,
)

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def toy(name: str, spec: str | None = None):
    return load_sketch(TOYS / f"{name}.mcy"), load_spec(TOYS / f"{spec or name}.spec")


class TestStages(unittest.TestCase):
    def test_gate_stages(self):
        sketch, spec = toy("gate")
        good = Interpretation.constant(sketch.holes, {"1": True, "2": "B"})
        report = run_stages(sketch, good, spec)
        self.assertTrue(report.ok)
        self.assertEqual(report.cutoff, 1)
        self.assertEqual(
            [v.stage for v in report.verdicts],
            [Stage.PHASE_COMPATIBILITY, Stage.AMENABILITY, Stage.CUTOFF, Stage.SAFETY, Stage.DEADLOCK, Stage.LIVENESS],
        )

    def test_gate_failures(self):
        sketch, spec = toy("gate")
        closed = Interpretation.constant(sketch.holes, {"1": False, "2": "B"})
        self.assertEqual(run_stages(sketch, closed, spec).failed.stage, Stage.DEADLOCK)

        looping = Interpretation.constant(sketch.holes, {"1": True, "2": "A"})
        report = run_stages(sketch, looping, spec)
        self.assertEqual(report.failed.stage, Stage.LIVENESS)
        self.assertEqual(report.violation, "reachB")
        self.assertTrue(exhibits(sketch, looping, report.cex))

        self.assertTrue(run_stages(sketch, looping, spec, SynthOptions(liveness=False)).ok)

    def test_verify_hole_free(self):
        sketch, spec = toy("duo")
        report = verify(sketch, spec, SynthOptions(cutoff_plus_one=True))
        self.assertTrue(report.ok)
        self.assertEqual([v.detail["n"] for v in report.verdicts if v.stage is Stage.SAFETY], [2, 3])

        sketch, spec = toy("duo", "duo_no_winner")
        report = verify(sketch, spec)
        self.assertEqual(report.failed.stage, Stage.SAFETY)
        self.assertEqual(report.violation, "noWinner")


class TestSynthesize(unittest.TestCase):
    def test_gate(self):
        sketch, spec = toy("gate")
        result = synthesize(sketch, spec)
        self.assertEqual(result.outcome, Outcome.COMPLETED)
        self.assertIs(result.interpretation.value("1", (False,)), True)
        self.assertEqual(result.interpretation.value("2", (True,)), "B")
        self.assertEqual(result.cutoff, 1)
        self.assertEqual(len(set(result.proposed)), len(result.proposed))
        self.assertTrue(run_stages(sketch, result.interpretation, spec).ok)

    def test_learners_agree(self):
        sketch, spec = toy("gate")
        expected = set(passing_interpretations(sketch, spec))
        self.assertEqual(len(expected), 4)
        self.assertIn(brute_force_synth(sketch, spec), expected)
        for name in ("solver", "enumerate"):
            with self.subTest(learner=name):
                result = synthesize(sketch, spec, SynthOptions(learner=name, seed=7))
                self.assertEqual(result.outcome, Outcome.COMPLETED)
                self.assertIn(result.interpretation, expected)

    def test_no_solution(self):
        sketch, spec = toy("gate", "gate_never_a")
        result = synthesize(sketch, spec)
        self.assertEqual(result.outcome, Outcome.NO_SOLUTION)
        self.assertIsNone(result.interpretation)
        self.assertGreaterEqual(result.stats["safety"], 1)

    def test_amenability_repair(self):
        sketch, spec = toy("detour")
        result = synthesize(sketch, spec)
        self.assertEqual(result.outcome, Outcome.COMPLETED)
        self.assertIs(result.interpretation.value("1", ()), False)

    def test_phase_compatibility_repair(self):
        sketch, spec = toy("shout")
        result = synthesize(sketch, spec, SynthOptions(deterministic=True))
        self.assertEqual(result.outcome, Outcome.COMPLETED)
        self.assertIs(result.interpretation.value("1", ()), True)
        self.assertEqual([r.stage for r in result.iterations], ["phase_compatibility", "completed"])

    def test_iteration_limit(self):
        sketch, spec = toy("gate")
        result = synthesize(sketch, spec, SynthOptions(learner="enumerate", max_iterations=1))
        self.assertEqual(result.outcome, Outcome.TIMEOUT)
        self.assertEqual(result.stats["deadlock"], 1)
        self.assertEqual(len(result.store), 1)


class TestReport(unittest.TestCase):
    def test_writers(self):
        sketch, spec = toy("gate")
        result = synthesize(sketch, spec)
        with tempfile.TemporaryDirectory() as tmp:
            path = ReportWriter(pathlib.Path(tmp) / "stats.json").write(result)
            data = json.loads(path.read_text())
            self.assertEqual(data["outcome"], "completed")
            self.assertEqual(data["iterations"][-1]["stage"], "completed")

            path = ReportWriter(pathlib.Path(tmp) / "stats.yml").write(result)
            self.assertEqual(yaml.safe_load(path.read_text())["cutoff"], 1)

    def test_kind(self):
        text = ReportWriter("-", kind="json").dumps({"a": [1, 2]})
        self.assertEqual(json.loads(text), {"a": [1, 2]})


if __name__ == "__main__":
    unittest.main()
