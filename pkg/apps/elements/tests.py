"""
Testes dos elementos de matriz por tipo de ciclo.

Roda com: python manage.py test apps.elements.tests -v 2
"""
import math

from django.core.cache import cache
from django.test import SimpleTestCase, override_settings

from apps.elements.services import assemble_sums, class_element, cycle_factors
from apps.energy.domain import ModelParams
from apps.permutations.domain import CycleType, SignMode
from apps.shared.exceptions import InvalidArgumentError, VanishingNormError
from apps.shared.numeric import Field


def _make_params(n, q=1.0, d=3, mode=SignMode.FERMIONIC):
    return ModelParams(n=n, d=d, q=q, mode=mode)


def _relative(a, b):
    return abs(float(a) - float(b)) / abs(float(b))


class CycleFactorsTest(SimpleTestCase):
    """Cadeias fechadas a−b−…−a de comprimento k."""

    def setUp(self):
        cache.clear()

    def test_single_pair(self):
        p, q = 0.8, 0.3
        f = cycle_factors(1, p, q)
        self.assertEqual(f.o, 1.0)
        self.assertAlmostEqual(f.tau, 2 * (p + q), places=13)
        self.assertAlmostEqual(f.nu, (p + q) / (2 * p * (p + 2 * q)), places=13)

    def test_uncoupled_chains_are_unit(self):
        """Com q = 0 nenhuma cadeia acopla: o_k = 1."""
        for k in range(1, 6):
            self.assertAlmostEqual(cycle_factors(k, 0.6, 0.0).o, 1.0, places=13)

    def test_two_cycle_determinant(self):
        """det A_2 = 16p(p + 2q)(p + q)²."""
        for p, q in ((1.0, 1.0), (2.0, 0.5), (0.3, 1.7)):
            f = cycle_factors(2, p, q)
            self.assertLess(_relative(f.root_det ** 2, 16 * p * (p + 2 * q) * (p + q) ** 2), 1e-13)

    def test_coordinates_within_cycle_are_equivalent(self):
        for k in range(1, 6):
            f = cycle_factors(k, 1.1, 0.7)
            for ratio in f.coordinate_ratios:
                self.assertAlmostEqual(ratio, f.coordinate_ratios[0], places=12)
            self.assertLess(_relative(f.tau, 2 * k * f.coordinate_ratios[0]), 1e-12)

    def test_cache_hit_matches_fresh_value(self):
        first = cycle_factors(3, 1.2, 0.9, Field(128))
        second = cycle_factors(3, 1.2, 0.9, Field(128))
        self.assertEqual(second.prec, 128)
        self.assertEqual(first.o, second.o)
        self.assertEqual(first.tau, second.tau)

    def test_invalid_length(self):
        with self.assertRaises(InvalidArgumentError):
            cycle_factors(0, 1.0, 1.0)


class ClassElementTest(SimpleTestCase):

    def test_identity_is_normalized(self):
        for n in range(1, 6):
            element = class_element(CycleType((1,) * n), 0.9, 1.3, 3)
            self.assertAlmostEqual(element.O, 1.0, places=13)

    def test_raw_identity_three_pairs(self):
        """Overlap total de três pares em 3D: π⁹/(512·3^{9/2}) em p = q = 1."""
        element = class_element(CycleType((1, 1, 1)), 1.0, 1.0, 3, raw=True)
        self.assertLess(_relative(element.O, math.pi ** 9 / (512 * 3 ** 4.5)), 1e-13)

    def test_transposition_coordinate(self):
        element = class_element(CycleType((2, 1)), 1.0, 1.0, 3)
        self.assertAlmostEqual(element.coordinate_ratios[0], 1.75, places=13)

    def test_kinetic_and_potential_scale_with_dimension(self):
        t = CycleType((3, 2))
        one = class_element(t, 0.7, 0.5, 1)
        for d in (2, 3):
            element = class_element(t, 0.7, 0.5, d)
            self.assertLess(_relative(element.O, one.O ** d), 1e-13)
            self.assertLess(_relative(element.T / element.O, d * one.T / one.O), 1e-13)
            self.assertLess(_relative(element.V / element.O, d * one.V / one.O), 1e-13)

    def test_invalid_dimension(self):
        with self.assertRaises(InvalidArgumentError):
            class_element(CycleType((1,)), 1.0, 1.0, 4)


class AssembleSumsTest(SimpleTestCase):

    def setUp(self):
        cache.clear()

    def test_single_pair(self):
        sums = assemble_sums(_make_params(1), 0.5)
        self.assertEqual(sums.O_sum, 1.0)
        self.assertEqual(sums.condition, 1.0)

    def test_degenerate_fermionic(self):
        for n in (2, 3):
            with self.assertRaises(VanishingNormError):
                assemble_sums(_make_params(n, q=0.0), 0.5)

    def test_bosonic_uncoupled(self):
        """q = 0 bosônico: todas as classes valem 1, O = n!."""
        sums = assemble_sums(_make_params(3, q=0.0, mode=SignMode.BOSONIC), 0.5)
        self.assertAlmostEqual(sums.O_sum, 6.0, places=12)

    def test_invalid_p(self):
        with self.assertRaises(InvalidArgumentError):
            assemble_sums(_make_params(2), 0.0)

    def test_strict_threshold_escalates(self):
        """Condição ≈ 0.2 em p = q = 1: limiar 0.9 força 128 bits."""
        params = _make_params(2)
        fast = assemble_sums(params, 1.0)
        strict = assemble_sums(params, 1.0, threshold=0.9)
        self.assertEqual(fast.prec, 53)
        self.assertEqual(strict.prec, 128)
        self.assertLess(_relative(strict.O_sum, fast.O_sum), 1e-12)
        self.assertLess(_relative(strict.T_sum, fast.T_sum), 1e-12)

    @override_settings(COBOSON_PRECISION_LADDER=(53,))
    def test_exhausted_ladder(self):
        with self.assertRaises(VanishingNormError):
            assemble_sums(_make_params(2), 1.0, threshold=0.9)

    def test_terms_follow_class_order(self):
        sums = assemble_sums(_make_params(3), 1.0)
        self.assertEqual([str(c.cycle_type) for c, _ in sums.terms], ["[3]", "[2,1]", "[1,1,1]"])
