import pathlib
import unittest

from agreement_forge.lang import load_sketch, load_spec
from agreement_forge.synth import Outcome, Stage, SynthOptions, run_stages, synthesize, verify

CORPUS = pathlib.Path(__file__).parents[3] / "corpus"

# benchmark -> cutoff of its reference completion
CUTOFFS = {
    "distributed_store": 2,
    "distributed_register": 2,
    "distributed_lock": 2,
    "consortium": 3,
    "robot_flocking": 2,
    "sensor_network": 3,
    "sensor_network_reset": 3,
    "motion_planner": 2,
    "motion_planner_reset": 2,
    "object_tracker": 2,
    "sats": 5,
    "sats_priority": 5,
}


def benchmark(name: str, complete: bool = False):
    sketch = load_sketch(CORPUS / f"{name}{'_complete' if complete else ''}.mcy")
    return sketch, load_spec(CORPUS / f"{name}.spec")


def safety_sizes(report):
    return [v.detail["n"] for v in report.verdicts if v.stage is Stage.SAFETY]


class TestCompletions(unittest.TestCase):
    def test_listed(self):
        sketches = {p.stem for p in CORPUS.glob("*.mcy") if not p.stem.endswith("_complete")}
        self.assertEqual(sketches, set(CUTOFFS))

    def test_verify_at_cutoff_and_next(self):
        for name, cutoff in CUTOFFS.items():
            with self.subTest(name=name):
                sketch, spec = benchmark(name, complete=True)
                report = verify(sketch, spec, SynthOptions(cutoff_plus_one=True))
                self.assertTrue(report.ok, report.violation)
                self.assertEqual(report.cutoff, cutoff)
                self.assertEqual(safety_sizes(report), [cutoff, cutoff + 1])


class TestSynthesis(unittest.TestCase):
    def test_every_sketch(self):
        for name in CUTOFFS:
            with self.subTest(name=name):
                sketch, spec = benchmark(name)
                result = synthesize(sketch, spec)
                self.assertEqual(result.outcome, Outcome.COMPLETED)
                report = run_stages(sketch, result.interpretation, spec, SynthOptions(cutoff_plus_one=True))
                self.assertTrue(report.ok, report.violation)
                self.assertEqual(len(safety_sizes(report)), 2)


class TestDistributedStore(unittest.TestCase):
    def setUp(self):
        self.sketch, self.spec = benchmark("distributed_store")

    def test_spec_lines(self):
        self.assertEqual([line.name for line in self.spec.safety], ["oneLeader", "agreeLow", "agreeHigh"])
        self.assertEqual([line.name for line in self.spec.liveness], ["elected", "acked"])

    def test_completion_passes_every_stage(self):
        sketch, spec = benchmark("distributed_store", complete=True)
        report = verify(sketch, spec)
        self.assertTrue(report.ok)
        self.assertEqual(
            [v.stage for v in report.verdicts],
            [Stage.PHASE_COMPATIBILITY, Stage.AMENABILITY, Stage.CUTOFF, Stage.SAFETY, Stage.DEADLOCK]
            + [Stage.LIVENESS] * 2,
        )
        self.assertEqual([v.detail["line"] for v in report.verdicts[-2:]], ["elected", "acked"])
        self.assertEqual(report.cutoff, 2)

    def test_synthesis_reverifies(self):
        result = synthesize(self.sketch, self.spec, SynthOptions(deterministic=True))
        self.assertEqual(result.outcome, Outcome.COMPLETED)
        self.assertEqual(result.cutoff, 2)
        self.assertEqual(len(set(result.proposed)), len(result.proposed))
        self.assertTrue(run_stages(self.sketch, result.interpretation, self.spec).ok)
        self.assertEqual(sum(result.stats.values()), len(result.iterations) - 1)


if __name__ == "__main__":
    unittest.main()
