"""
Testes do caminho independente: enumeração explícita das n! permutações.

Roda com: python manage.py test apps.oracle.tests -v 2
"""
import math
import time
from collections import Counter

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate

from apps.energy.domain import ModelParams
from apps.energy.services import optimize_width
from apps.oracle.services import (
    brute_force_sums,
    cross_check,
    golden_checks,
    group_by_cycle_type,
    marked_classes,
    n1_closed_form,
    verification_threshold,
)
from apps.permutations.domain import SignMode
from apps.permutations.services import enumerate_classes
from apps.shared.exceptions import InvalidArgumentError, ResourceLimitError, VanishingNormError

BOX = 9.0


def _make_params(n, q=1.0, d=3, mode=SignMode.FERMIONIC):
    return ModelParams(n=n, d=d, q=q, mode=mode)


def _rayleigh_by_quadrature(p, q):
    """Um par em 1D: ⟨ψ|−∂a² − ∂b² + a² + b²|ψ⟩/⟨ψ|ψ⟩ integrado numericamente."""

    def psi2(a, b):
        return math.exp(-2 * (p * (a * a + b * b) + q * (a - b) ** 2))

    def local(b, a):
        g_a = -2 * p * a - 2 * q * (a - b)
        g_b = -2 * p * b + 2 * q * (a - b)
        return (4 * (p + q) - g_a * g_a - g_b * g_b + a * a + b * b) * psi2(a, b)

    numerator, _ = integrate.dblquad(local, -BOX, BOX, -BOX, BOX, epsabs=1e-13, epsrel=1e-11)
    norm, _ = integrate.dblquad(lambda b, a: psi2(a, b), -BOX, BOX, -BOX, BOX, epsabs=1e-13, epsrel=1e-11)
    return numerator / norm


class ClosedFormTest(SimpleTestCase):

    def test_known_values(self):
        self.assertAlmostEqual(n1_closed_form(0.5, 0.0, 3), 6.0, places=14)
        self.assertAlmostEqual(n1_closed_form(0.5, 0.0, 1), 2.0, places=14)
        self.assertAlmostEqual(n1_closed_form(0.25, 1.0, 3), 3 * (2.5 + 1 + 1 / 9), places=13)

    def test_matches_quadrature(self):
        for p, q in ((0.5, 0.0), (0.25, 1.0), (1.3, 0.6)):
            self.assertAlmostEqual(n1_closed_form(p, q, 1), _rayleigh_by_quadrature(p, q), delta=1e-8)

    def test_invalid(self):
        with self.assertRaises(InvalidArgumentError):
            n1_closed_form(0.0, 1.0, 3)
        with self.assertRaises(InvalidArgumentError):
            n1_closed_form(1.0, -1.0, 3)


class BruteForceTest(SimpleTestCase):
    """Soma literal sobre permutações contra o motor por classes."""

    def test_single_pair(self):
        report = brute_force_sums(_make_params(1), 0.7)
        self.assertEqual(len(report.terms), 1)
        self.assertEqual(report.max_delta, 0.0)
        self.assertTrue(report.passed)

    def test_three_pairs_marked_groups(self):
        """Agrupando por (overlap, cinética de a_1): multiplicidades 1, 1, 2, 2."""
        report = brute_force_sums(_make_params(3), 1.0)
        groups = Counter((round(float(t.O), 12), round(float(t.kinetic_first), 12)) for t in report.terms)
        self.assertEqual(sorted(groups.values()), [1, 1, 2, 2])
        self.assertEqual(sorted(marked_classes(3).values()), [1, 1, 2, 2])

    def test_random_points_agree(self):
        rng = np.random.default_rng(11)
        for n in (2, 3, 4):
            for mode in (SignMode.FERMIONIC, SignMode.BOSONIC):
                p, q = rng.uniform(0.1, 3.0, size=2)
                report = brute_force_sums(
                    _make_params(n, q=float(q), mode=mode), float(p), threshold=verification_threshold(1e-10),
                )
                self.assertLessEqual(report.max_delta, 1e-10, (n, mode, report.deltas))

    def test_five_pairs(self):
        for mode in (SignMode.FERMIONIC, SignMode.BOSONIC):
            report = brute_force_sums(
                _make_params(5, q=0.9, mode=mode), 1.2, threshold=verification_threshold(1e-10),
            )
            self.assertEqual(len(report.terms), 120)
            self.assertTrue(report.passed, report.deltas)

    def test_six_pairs_bosonic(self):
        report = brute_force_sums(_make_params(6, q=1.5, mode=SignMode.BOSONIC), 0.8)
        self.assertEqual(len(report.terms), 720)
        self.assertTrue(report.passed, report.deltas)

    def test_six_pairs_fermionic(self):
        report = brute_force_sums(_make_params(6, q=1.5), 0.8, threshold=verification_threshold(1e-10))
        self.assertEqual(len(report.terms), 720)
        self.assertTrue(report.passed, report.deltas)

    def test_agrees_at_optimized_width(self):
        """No p* otimizado (largura interna 1) os dois caminhos coincidem até n = 6."""
        for n in range(1, 7):
            params = _make_params(n, q=1.0)
            p_star = optimize_width(params).p_star
            report = brute_force_sums(params, p_star, threshold=verification_threshold(1e-10))
            self.assertLessEqual(report.max_delta, 1e-10, (n, p_star, report.deltas))

    def test_limits(self):
        with self.assertRaises(ResourceLimitError):
            brute_force_sums(_make_params(7), 1.0)
        with self.assertRaises(VanishingNormError):
            brute_force_sums(_make_params(2, q=0.0), 1.0)
        with self.assertRaises(InvalidArgumentError):
            brute_force_sums(_make_params(2), -1.0)


class GroupingTest(SimpleTestCase):

    def test_grouping_reproduces_class_weights(self):
        for n in range(1, 7):
            for mode in (SignMode.FERMIONIC, SignMode.BOSONIC):
                grouped = group_by_cycle_type(n, mode)
                expected = {c.cycle_type: (c.multiplicity, c.signature) for c in enumerate_classes(n, mode)}
                self.assertEqual(grouped, expected)


class CrossCheckTest(SimpleTestCase):

    def test_small_run_passes(self):
        summary = cross_check(3, 3, tol=1e-10, seed=7)
        self.assertTrue(summary.passed, summary.failures)
        self.assertEqual(len(summary.entries), 6)

    def test_deterministic(self):
        first = cross_check(2, 2, seed=3)
        second = cross_check(2, 2, seed=3)
        self.assertEqual(first.entries, second.entries)

    def test_single_pair_is_exact(self):
        summary = cross_check(1, 4, seed=1)
        self.assertTrue(all(e["max_delta"] == 0.0 for e in summary.entries))

    def test_zero_trials(self):
        summary = cross_check(3, 0)
        self.assertEqual(summary.entries, [])
        self.assertTrue(summary.passed)

    def test_over_limit(self):
        with self.assertRaises(ResourceLimitError):
            cross_check(7, 1)

    def test_full_run_within_budget(self):
        """n ≤ 6, dois modos, 20 sorteios: delta ≤ 1e-10 em menos de 60 s."""
        started = time.perf_counter()
        summary = cross_check(6, 20, tol=1e-10, seed=0)
        elapsed = time.perf_counter() - started
        self.assertEqual(summary.failures, [])
        self.assertEqual(len(summary.entries), 12)
        self.assertTrue(all(e["max_delta"] <= 1e-10 for e in summary.entries), summary.entries)
        self.assertLess(elapsed, 60.0)


class GoldenChecksTest(SimpleTestCase):

    def test_all_pass(self):
        results = golden_checks()
        failed = [(r.name, r.detail) for r in results if not r.passed]
        self.assertEqual(failed, [])
        # contagens + 4 fatores + 4 linhas × 3 pontos × (overlap, cinética)
        self.assertEqual(len(results), 1 + 4 + 4 * 3 * 2)
