import dataclasses
import enum
import os
import unittest
from unittest import mock

from agreement_forge.utils.envs import _int_env
from agreement_forge.utils.serialize import serialize


class Colour(enum.Enum):
    RED = 1


@dataclasses.dataclass
class Point:
    x: int
    tag: Colour


class Custom:
    def __serialize__(self):
        return {"custom": True}


class TestSerialize(unittest.TestCase):
    def test_primary(self):
        for value in (1, 2.5, True, "a", None):
            self.assertEqual(serialize(value), value)

    def test_dataclass_and_enum(self):
        self.assertEqual(serialize(Point(1, Colour.RED)), {"x": 1, "tag": "RED"})

    def test_containers(self):
        self.assertEqual(serialize({1: (2, 3)}), {"1": [2, 3]})
        self.assertEqual(serialize({3, 1, 2}), [1, 2, 3])

    def test_custom_hook(self):
        self.assertEqual(serialize([Custom()]), [{"custom": True}])

    def test_not_serializable(self):
        with self.assertRaises(TypeError):
            serialize(object())


class TestEnvs(unittest.TestCase):
    def test_int_env(self):
        with mock.patch.dict(os.environ, {"FORGE_TEST_BOUND": "12"}):
            self.assertEqual(_int_env("FORGE_TEST_BOUND", 3), 12)
        with mock.patch.dict(os.environ, {"FORGE_TEST_BOUND": ""}):
            self.assertEqual(_int_env("FORGE_TEST_BOUND", 3), 3)
        with mock.patch.dict(os.environ, {"FORGE_TEST_BOUND": "many"}):
            with self.assertRaises(ValueError):
                _int_env("FORGE_TEST_BOUND", 3)


if __name__ == "__main__":
    unittest.main()
