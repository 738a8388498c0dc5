import unittest

from agreement_forge.learner.constraint import (
    FALSE,
    TRUE,
    And,
    App,
    Cmp,
    Lit,
    Not,
    cmp,
    conj,
    disj,
    evaluate,
    negate,
    simplify,
    substitute,
    to_sexpr,
)

F = App("1", (False,))
T = App("1", (True,))
G = App("2", (True,))


class TestConstructors(unittest.TestCase):
    def test_cmp_folds_ground_atoms(self):
        self.assertEqual(cmp("<", 1, 2), TRUE)
        self.assertEqual(cmp("=", "A", "B"), FALSE)
        self.assertEqual(cmp("=", G, G), TRUE)

    def test_cmp_orients_application_left(self):
        c = cmp("<", 3, App("x"))
        self.assertEqual(c, Cmp(">", App("x"), Lit(3)))

    def test_bool_disequality(self):
        self.assertEqual(cmp("!=", F, True), Cmp("=", F, Lit(False)))

    def test_negate(self):
        self.assertEqual(negate(TRUE), FALSE)
        self.assertEqual(negate(cmp("=", F, True)), cmp("=", F, False))
        self.assertEqual(negate(cmp("!=", G, "A")), cmp("=", G, "A"))
        self.assertEqual(negate(cmp("=", G, "A")), Not(cmp("=", G, "A")))
        self.assertEqual(negate(negate(cmp("=", G, "A"))), cmp("=", G, "A"))

    def test_conj(self):
        a, b = cmp("=", F, True), cmp("=", G, "B")
        self.assertEqual(conj(a, TRUE, a, b), And((a, b)))
        self.assertEqual(conj(a, negate(a)), FALSE)
        self.assertEqual(conj(cmp("=", G, "A"), cmp("=", G, "B")), FALSE)
        self.assertEqual(conj(), TRUE)
        self.assertEqual(conj([a]), a)
        self.assertEqual(conj(conj(a, b), a), And((a, b)))

    def test_disj(self):
        a = cmp("=", F, True)
        self.assertEqual(disj(a, negate(a)), TRUE)
        self.assertEqual(disj(FALSE, a), a)
        self.assertEqual(disj(), FALSE)

    def test_simplify_is_idempotent(self):
        c = Not(And((Cmp("!=", G, Lit("A")), Cmp("=", F, Lit(True)))))
        once = simplify(c)
        self.assertEqual(simplify(once), once)


class TestEvaluation(unittest.TestCase):
    def test_three_valued(self):
        c = conj(cmp("=", F, True), cmp("=", G, "B"))
        self.assertIsNone(evaluate(c, lambda app: None))
        self.assertIs(evaluate(c, {F: False}.get), False)
        self.assertIs(evaluate(c, {F: True, G: "B"}.get), True)
        self.assertIs(evaluate(disj(c, cmp("=", T, True)), {T: True}.get), True)

    def test_substitute(self):
        c = conj(cmp("=", F, True), cmp("=", G, "B"))
        self.assertEqual(substitute(c, {F: True}), cmp("=", G, "B"))
        self.assertEqual(substitute(c, {F: False}), FALSE)

    def test_sexpr(self):
        c = conj(cmp("=", F, True), negate(cmp("=", App("3"), 2)))
        self.assertEqual(to_sexpr(c), "(and (= (??1 false) true) (not (= ??3 2)))")
        self.assertEqual(to_sexpr(TRUE), "true")


if __name__ == "__main__":
    unittest.main()
