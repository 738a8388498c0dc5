import json
import pathlib
import tempfile
import unittest

from agreement_forge.lang import (
    EventKind,
    HolePosition,
    Severity,
    dump_ast,
    load_sketch,
    load_spec,
    parse_sketch,
    pretty_print,
    substitute,
    validate,
)
from agreement_forge.lang.expression import Binary, Const, Name, Span, Unary
from agreement_forge.learner.interpretation import Interpretation, count_interpretations
from agreement_forge.utils.exceptions import SketchError, SketchSyntaxError

CORPUS = pathlib.Path(__file__).parents[3] / "corpus"

BENCHMARKS = {
    "distributed_store": 163840000,
    "distributed_register": 64,
    "distributed_lock": 10368,
    "consortium": 4116,
    "robot_flocking": 16,
    "sensor_network": 1875,
    "sensor_network_reset": 9375,
    "motion_planner": 1250,
    "motion_planner_reset": 6250,
    "object_tracker": 1458,
    "sats": 3000,
    "sats_priority": 3000,
}

PARTITION_SKETCH = """
process Card
initial location C
  on partition<p>(All, {cardinality})
    win:  goto W
    lose: goto W
location W
  on _ do goto W
"""


class TestCorpus(unittest.TestCase):
    def test_benchmarks_parse(self):
        for name, count in BENCHMARKS.items():
            with self.subTest(name=name):
                sketch = load_sketch(CORPUS / f"{name}.mcy")
                spec = load_spec(CORPUS / f"{name}.spec")
                self.assertEqual(count_interpretations(sketch.holes), count)
                errors = [d for d in validate(sketch, spec) if d.severity is Severity.ERROR]
                self.assertEqual(errors, [])

    def test_completions_are_hole_free(self):
        for name in BENCHMARKS:
            with self.subTest(name=name):
                self.assertTrue(load_sketch(CORPUS / f"{name}_complete.mcy").is_hole_free)

    def test_toys(self):
        for name in ("gate", "duo", "vote", "shout", "detour"):
            with self.subTest(name=name):
                sketch = load_sketch(CORPUS / "toys" / f"{name}.mcy")
                self.assertEqual(sketch.name, name.capitalize())


class TestSignatures(unittest.TestCase):
    def setUp(self):
        self.gate = load_sketch(CORPUS / "toys" / "gate.mcy")

    def test_positions(self):
        guard, target = self.gate.holes
        self.assertEqual(guard.position, HolePosition.GUARD_CONDITION)
        self.assertEqual(guard.params, ("b",))
        self.assertEqual(guard.domain.values, (False, True))
        self.assertEqual(target.position, HolePosition.GOTO_TARGET)
        self.assertEqual(target.domain.values, ("A", "B"))
        self.assertEqual(count_interpretations(self.gate.holes), 16)

    def test_cardinality_default_range(self):
        sketch = parse_sketch(PARTITION_SKETCH.format(cardinality="??1"))
        (hole,) = sketch.holes
        self.assertEqual(hole.position, HolePosition.CARDINALITY)
        self.assertEqual(hole.params, ())
        self.assertEqual(hole.domain.values, tuple(range(1, 9)))
        self.assertEqual(sketch.event_map["p"].kind, EventKind.PARTITION)

    def test_cardinality_annotation(self):
        sketch = parse_sketch(PARTITION_SKETCH.format(cardinality="??1:int[1,3]"))
        self.assertEqual(sketch.holes[0].domain.values, (1, 2, 3))

        with self.assertRaises(SketchError):
            parse_sketch(PARTITION_SKETCH.format(cardinality="??1:int[0,3]"))

        with self.assertRaises(SketchError):
            parse_sketch(PARTITION_SKETCH.format(cardinality="??1:bool"))

    def test_max_cardinality(self):
        sketch = parse_sketch(PARTITION_SKETCH.format(cardinality="??1"), max_cardinality=3)
        self.assertEqual(len(sketch.holes[0].domain), 3)


class TestErrors(unittest.TestCase):
    def test_syntax_error(self):
        with self.assertRaises(SketchSyntaxError):
            parse_sketch("process X\ninitial location A\n  on _ do goto\n")

    def test_undeclared_location(self):
        with self.assertRaises(SketchError) as ctx:
            parse_sketch("process X\ninitial location A\n  on _ do goto Z\n")
        self.assertIn("undeclared location 'Z'", str(ctx.exception))

    def test_annotated_goto_hole(self):
        with self.assertRaises(SketchError):
            parse_sketch("process X\ninitial location A\n  on _ do goto ??1:bool\n")

    def test_undeclared_event(self):
        with self.assertRaises(SketchError):
            parse_sketch("process X\ninitial location A\n  on recv(m) do goto A\n")

    def test_not_utf8(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "latin1.mcy"
            path.write_bytes(b"process X\n// caf\xe9\ninitial location A\n  on _ do goto A\n")
            with self.assertRaises(SketchSyntaxError) as ctx:
                load_sketch(path)
            self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 7))
            with self.assertRaises(SketchSyntaxError):
                load_spec(path)


class TestExpressions(unittest.TestCase):
    def test_operator_nodes(self):
        total = Binary("+", Name("x"), Const(1), span=Span(1, 3))
        self.assertEqual(total.evaluate({"x": 2}), 3)
        self.assertEqual(total, Binary("+", Name("x"), Const(1)))
        negated = Unary("not", Binary("<", total, Const(3)))
        self.assertIs(negated.evaluate({"x": 1}), False)
        self.assertEqual(negated.render(), "not x + 1 < 3")
        self.assertEqual(Unary("-", Const(2)).evaluate({}), -2)


class TestPrinter(unittest.TestCase):
    def test_substitute(self):
        gate = load_sketch(CORPUS / "toys" / "gate.mcy")
        text = substitute(gate, Interpretation.constant(gate.holes, {"1": True, "2": "B"}))
        self.assertNotIn("??", text)
        self.assertIn("goto B", text)

        model = parse_sketch(text)
        self.assertTrue(model.is_hole_free)
        self.assertEqual(model.location_names, gate.location_names)

    def test_pretty_print_reparses(self):
        sketch = load_sketch(CORPUS / "distributed_store.mcy")
        again = parse_sketch(pretty_print(sketch))
        self.assertEqual(count_interpretations(again.holes), BENCHMARKS["distributed_store"])

    def test_dump_ast(self):
        data = json.loads(dump_ast(load_sketch(CORPUS / "toys" / "duo.mcy")))
        self.assertEqual(data["node"], "ProcessSketch")
        self.assertEqual([loc["name"] for loc in data["locations"]], ["C", "W", "L"])


if __name__ == "__main__":
    unittest.main()
