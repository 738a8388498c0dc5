import threading
import unittest

from agreement_forge.utils.misc import ordered_results


class TestOrderedResults(unittest.TestCase):
    def test_order_is_kept(self):
        calls = [lambda i=i: i * i for i in range(6)]
        self.assertEqual(list(ordered_results(calls)), [0, 1, 4, 9, 16, 25])
        self.assertEqual(list(ordered_results(calls, jobs=3)), [0, 1, 4, 9, 16, 25])

    def test_runs_on_workers(self):
        names = list(ordered_results([threading.current_thread] * 2, jobs=2))
        self.assertTrue(all(t is not threading.main_thread() for t in names))

    def test_error_surfaces_in_order(self):
        def fail():
            raise ValueError("second")

        results = ordered_results([lambda: 1, fail, lambda: 3], jobs=2)
        self.assertEqual(next(results), 1)
        with self.assertRaises(ValueError):
            next(results)


if __name__ == "__main__":
    unittest.main()
