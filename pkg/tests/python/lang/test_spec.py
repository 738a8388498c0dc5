import pathlib
import unittest

from agreement_forge.lang import LivenessTemplate, load_spec, parse_spec
from agreement_forge.utils.exceptions import SketchSyntaxError

CORPUS = pathlib.Path(__file__).parents[3] / "corpus"


class TestSpecSuite(unittest.TestCase):
    def test_distributed_store(self):
        spec = load_spec(CORPUS / "distributed_store.spec")
        self.assertEqual([line.name for line in spec.safety], ["oneLeader", "agreeLow", "agreeHigh"])
        self.assertEqual([line.weight for line in spec.safety], [2, 2, 2])

        elected, acked = spec.liveness
        self.assertEqual(elected.template, LivenessTemplate.EVENTUALLY)
        self.assertIsNone(elected.q)
        self.assertEqual(acked.template, LivenessTemplate.ALWAYS_IMPLIES)
        self.assertIsNotNone(acked.q)
        self.assertEqual([a.event for a in acked.atoms()], ["doCmd", "ackCmd", "ret"])

    def test_comment_only(self):
        spec = load_spec(CORPUS / "toys" / "shout.spec")
        self.assertEqual(spec.safety, ())
        self.assertEqual(spec.liveness, ())

    def test_render(self):
        spec = parse_spec("safety s: never 1 at (loc = B) and 1 at (loc = M)\n")
        self.assertEqual(str(spec), "safety s: never 1 at (loc = B) and 1 at (loc = M)")
        self.assertEqual(spec.safety[0].weight, 2)

    def test_threshold(self):
        with self.assertRaises(SketchSyntaxError):
            parse_spec("safety s: never 0 at (loc = B)\n")

    def test_duplicate_names(self):
        with self.assertRaises(SketchSyntaxError):
            parse_spec("safety s: never 1 at (loc = B)\nliveness s: eventually 1 at (loc = B)\n")

    def test_syntax_error(self):
        with self.assertRaises(SketchSyntaxError):
            parse_spec("safety s: sometimes 1 at (loc = B)\n")


if __name__ == "__main__":
    unittest.main()
