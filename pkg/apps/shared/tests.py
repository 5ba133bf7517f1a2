"""
Testes da aritmética de precisão configurável.

Roda com: python manage.py test apps.shared.tests -v 2
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from django.test import SimpleTestCase, override_settings

from apps.shared.exceptions import (
    CobosonError,
    DivergentIntegralError,
    InvalidArgumentError,
    NumericalError,
    VanishingNormError,
)
from apps.shared.numeric import Field, accepts, escalate


@dataclass
class _Result:
    condition: float
    prec: int


class FieldTest(SimpleTestCase):

    def test_binary64(self):
        field = Field()
        self.assertTrue(field.is_binary64)
        self.assertIsInstance(field.scalar(1), float)
        self.assertEqual(field.fsum([1e16, 1.0, -1e16]), 1.0)

    def test_contexts_are_private(self):
        """Cada Field tem seu próprio contexto: precisões não se misturam entre threads."""
        def third(prec):
            field = Field(prec)
            return field.scalar(1) / 3, field.prec

        with ThreadPoolExecutor(max_workers=2) as executor:
            results = list(executor.map(third, [128, 1024] * 4))
        for value, prec in results:
            self.assertEqual(value.context.prec, prec)

    def test_minimum_precision(self):
        with self.assertRaises(InvalidArgumentError):
            Field(24)


class AcceptanceTest(SimpleTestCase):

    def test_rule(self):
        self.assertTrue(accepts(1e-8, 53, 1e-8))
        self.assertFalse(accepts(1e-9, 53, 1e-8))
        self.assertTrue(accepts(1e-9, 128, 1e-8))
        self.assertFalse(accepts(0.0, 1024, 1e-8))

    def test_escalates_until_accepted(self):
        seen = []

        def compute(field):
            seen.append(field.prec)
            return _Result(condition=1e-20, prec=field.prec)

        result = escalate(compute, threshold=1e-8)
        self.assertEqual(result.prec, 128)
        self.assertEqual(seen, [53, 128])

    @override_settings(COBOSON_PRECISION_LADDER=(53, 128))
    def test_exhausted(self):
        with self.assertRaises(VanishingNormError) as ctx:
            escalate(lambda field: _Result(condition=1e-300, prec=field.prec), threshold=1e-8)
        self.assertEqual(ctx.exception.condition, 1e-300)


class HierarchyTest(SimpleTestCase):

    def test_numerical_errors(self):
        for exc in (DivergentIntegralError, VanishingNormError):
            self.assertTrue(issubclass(exc, NumericalError))
            self.assertTrue(issubclass(exc, ArithmeticError))
        self.assertTrue(issubclass(InvalidArgumentError, ValueError))
        self.assertTrue(issubclass(NumericalError, CobosonError))

    def test_condition_is_optional(self):
        self.assertIsNone(DivergentIntegralError("forma indefinida").condition)
        self.assertEqual(VanishingNormError("nula", condition=0.0).condition, 0.0)
        self.assertEqual(str(VanishingNormError("nula", condition=0.0)), "nula")
