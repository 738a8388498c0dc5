import contextlib
import importlib.util
import io
import json
import pathlib
import tempfile
import unittest

from agreement_forge.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main

CORPUS = pathlib.Path(__file__).parents[3] / "corpus"
TOYS = CORPUS / "toys"


def run(*argv) -> tuple:
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main([str(a) for a in argv])
    return code, out.getvalue()


class TestCount(unittest.TestCase):
    def test_count(self):
        self.assertEqual(run("count", TOYS / "gate.mcy"), (EXIT_OK, "16\n"))
        self.assertEqual(run("count", CORPUS / "distributed_store.mcy"), (EXIT_OK, "163840000\n"))

    def test_missing_file(self):
        code, _ = run("count", TOYS / "no_such_sketch.mcy")
        self.assertEqual(code, EXIT_INPUT)

    def test_undecodable_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "binary.mcy"
            path.write_bytes(b"\xff\xfe\x00process")
            self.assertEqual(run("count", path)[0], EXIT_INPUT)

    def test_usage_error(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["count"])
        self.assertEqual(ctx.exception.code, EXIT_INPUT)


class TestSynth(unittest.TestCase):
    def test_completed(self):
        with tempfile.TemporaryDirectory() as tmp:
            output = pathlib.Path(tmp) / "gate_complete.mcy"
            stats = pathlib.Path(tmp) / "stats.json"
            code, text = run("synth", TOYS / "gate.mcy", TOYS / "gate.spec", "-o", output, "--stats", stats)
            self.assertEqual(code, EXIT_OK)
            self.assertTrue(text.startswith("// completed after"))
            self.assertNotIn("??", output.read_text())
            self.assertEqual(json.loads(stats.read_text())["outcome"], "completed")

            code, _ = run("verify", output, TOYS / "gate.spec")
            self.assertEqual(code, EXIT_OK)

    def test_no_solution(self):
        spec = TOYS / "gate_never_a.spec"
        with tempfile.TemporaryDirectory() as tmp:
            store = pathlib.Path(tmp) / "store.smt"
            code, text = run("synth", TOYS / "gate.mcy", spec, "--learner", "solver", "--dump-constraints", store)
            self.assertEqual(code, EXIT_FAILED)
            self.assertTrue(text.startswith("no_solution"))
            self.assertEqual(store.read_text().splitlines()[-1], "false")

    def test_no_solution_enumerate_blocks_each_interpretation(self):
        spec = TOYS / "gate_never_a.spec"
        with tempfile.TemporaryDirectory() as tmp:
            store = pathlib.Path(tmp) / "store.smt"
            code, text = run("synth", TOYS / "gate.mcy", spec, "--learner", "enumerate", "--dump-constraints", store)
            self.assertEqual(code, EXIT_FAILED)
            self.assertTrue(text.startswith("no_solution"))
            lines = store.read_text().splitlines()
            self.assertEqual(len(lines), 16)
            self.assertEqual(len(set(lines)), 16)


class TestVerify(unittest.TestCase):
    def test_verdicts(self):
        self.assertEqual(run("verify", TOYS / "duo.mcy", TOYS / "duo.spec")[0], EXIT_OK)

        with tempfile.TemporaryDirectory() as tmp:
            witness = pathlib.Path(tmp) / "witness.yaml"
            code, text = run("verify", TOYS / "duo.mcy", TOYS / "duo_no_winner.spec", "--emit-witness", witness)
            self.assertEqual(code, EXIT_FAILED)
            self.assertIn("FAILED", text)
            self.assertTrue(witness.exists())

    def test_sketch_needs_interpretation(self):
        self.assertEqual(run("verify", TOYS / "gate.mcy", TOYS / "gate.spec")[0], EXIT_INPUT)


class TestPhases(unittest.TestCase):
    def test_duo(self):
        code, text = run("phases", TOYS / "duo.mcy", TOYS / "duo.spec")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertEqual([p["id"] for p in data["phases"]], ["src(p)", "dst(p)"])
        self.assertTrue(data["phase_compatibility"]["ok"])
        self.assertTrue(data["amenability"]["ok"])
        self.assertEqual(data["cutoff"], 2)

    def test_merged_phase(self):
        code, text = run("phases", TOYS / "relay.mcy")
        self.assertEqual(code, EXIT_OK)
        merged = json.loads(text)["phases"][-1]
        self.assertEqual(merged["id"], "dst(a)+src(b)")
        self.assertEqual(merged["constituents"], ["dst(a)", "src(b)"])


class TestDump(unittest.TestCase):
    def test_ast(self):
        code, text = run("dump", TOYS / "duo.mcy")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(text)["name"], "Duo")

    @unittest.skipUnless(importlib.util.find_spec("pygraphviz"), "pygraphviz is not installed")
    def test_local_graph(self):
        code, text = run("dump", TOYS / "duo.mcy", "--dump-ls", "-")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("digraph", text)


if __name__ == "__main__":
    unittest.main()
