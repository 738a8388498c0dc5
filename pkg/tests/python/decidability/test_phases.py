import pathlib
import unittest

from agreement_forge.decidability import PhaseIndex, compute_core_phases, global_events, same_phase_witness
from agreement_forge.lang import load_sketch
from agreement_forge.semantics import LocalState, build_local_semantics, complete

TOYS = pathlib.Path(__file__).parents[3] / "corpus" / "toys"


def hole_free(name: str):
    return build_local_semantics(complete(load_sketch(TOYS / f"{name}.mcy")))


class TestPhases(unittest.TestCase):
    def test_partition_phases(self):
        ls = hole_free("duo")
        self.assertEqual(global_events(ls.sketch), ["p"])
        source, destination = compute_core_phases(ls)
        self.assertEqual(source.id, "src(p)")
        self.assertEqual(source.states, {LocalState("C")})
        self.assertEqual(destination.id, "dst(p)")
        self.assertEqual(destination.states, {LocalState("W"), LocalState("L")})

    def test_consensus_phases(self):
        ls = hole_free("vote")
        phases = {p.id: p.states for p in PhaseIndex(ls).phases}
        self.assertEqual(phases["src(k)"], {LocalState("C", (1,)), LocalState("C", (2,))})
        self.assertEqual(phases["dst(k)"], {LocalState("D", (1,)), LocalState("D", (2,))})

    def test_environment_events_have_no_phase(self):
        ls = hole_free("vote")
        self.assertNotIn("pick", global_events(ls.sketch))

    def test_same_phase(self):
        ls = hole_free("duo")
        witness = same_phase_witness(ls, LocalState("W"), LocalState("L"))
        self.assertEqual(witness.case, "A")
        self.assertEqual(witness.phases, ("dst(p)",))
        self.assertEqual(len(witness), 2)
        self.assertIsNone(same_phase_witness(ls, LocalState("C"), LocalState("W")))

    def test_serialize(self):
        data = PhaseIndex(hole_free("duo")).phases[1].__serialize__()
        self.assertEqual(
            data, {"id": "dst(p)", "kind": "core", "event": "p", "side": "destination", "states": ["L", "W"]}
        )


class TestMergedPhases(unittest.TestCase):
    def test_internal_step_merges(self):
        index = PhaseIndex(hole_free("relay"))
        self.assertEqual([p.id for p in index.phases], ["src(a)", "dst(a)", "src(b)", "dst(b)"])
        (merged,) = index.merged_phases
        self.assertEqual(merged.kind, "merged")
        self.assertEqual(merged.id, "dst(a)+src(b)")
        self.assertEqual(merged.states, {LocalState("Q"), LocalState("R")})
        self.assertEqual([(t.src, t.dst) for t in merged.path], [(LocalState("Q"), LocalState("R"))])

        data = merged.__serialize__()
        self.assertEqual(data["constituents"], ["dst(a)", "src(b)"])
        self.assertEqual(data["states"], ["Q", "R"])
        self.assertEqual(len(data["path"]), 1)

    def test_merged_phase_matches_witness(self):
        ls = hole_free("relay")
        witness = same_phase_witness(ls, LocalState("Q"), LocalState("R"))
        self.assertEqual(witness.case, "B")
        self.assertEqual(set(witness.phases), {"dst(a)", "src(b)"})
        self.assertIsNone(same_phase_witness(ls, LocalState("P"), LocalState("S")))

    def test_no_merge_without_internal_path(self):
        self.assertEqual(PhaseIndex(hole_free("duo")).merged_phases, [])
        self.assertEqual(PhaseIndex(hole_free("vote")).merged_phases, [])


if __name__ == "__main__":
    unittest.main()
