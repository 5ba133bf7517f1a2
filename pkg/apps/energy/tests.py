"""
Testes do modelo de energia: quociente de Rayleigh, otimização e referências.

Roda com: python manage.py test apps.energy.tests -v 2
"""
import csv
import math
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.energy.domain import EnergyReport, ModelParams
from apps.energy.services import (
    boson_reference,
    compare_with_reference,
    evaluate_at,
    fermion_reference,
    internal_energy_per_boson,
    mixing_mu,
    optimize_width,
    rayleigh_energy,
    sweep,
)
from apps.oracle.services import n1_closed_form
from apps.permutations.domain import SignMode
from apps.shared.exceptions import InvalidArgumentError, UndefinedMuError, VanishingNormError

FIXTURE = Path(__file__).resolve().parent / "fixtures" / "reference_unit_width.csv"


def _make_params(n, q=1.0, d=3, mode=SignMode.FERMIONIC):
    return ModelParams(n=n, d=d, q=q, mode=mode)


class ModelParamsTest(SimpleTestCase):

    def test_coercion(self):
        params = ModelParams(n=2, d=3, q=1, mode="bosonic")
        self.assertIsInstance(params.q, float)
        self.assertEqual(params.mode, SignMode.BOSONIC)

    def test_internal_width(self):
        self.assertEqual(_make_params(1, q=0.0).internal_width, math.inf)
        self.assertAlmostEqual(_make_params(1, q=4.0).internal_width, 0.5)

    def test_invalid(self):
        for kwargs in (
            {"n": 0, "d": 3, "q": 1.0},
            {"n": 1, "d": 4, "q": 1.0},
            {"n": 1, "d": 3, "q": -1.0},
            {"n": 1, "d": 3, "q": math.inf},
            {"n": 1, "d": 3, "q": 1.0, "mode": "anyonic"},
        ):
            with self.assertRaises(InvalidArgumentError):
                ModelParams(**kwargs)


class SinglePairTest(SimpleTestCase):
    """n = 1: separação centro de massa / coordenada relativa."""

    def test_matches_closed_form_at_random_points(self):
        rng = np.random.default_rng(2024)
        for _ in range(50):
            p, q = rng.uniform(0.1, 3.0), rng.uniform(0.0, 3.0)
            d = int(rng.integers(1, 4))
            energy = rayleigh_energy(_make_params(1, q=q, d=d), p)
            expected = n1_closed_form(p, q, d)
            self.assertLess(abs(energy - expected) / expected, 1e-12)

    def test_free_pair_ground_state(self):
        report = optimize_width(_make_params(1, q=0.0))
        self.assertAlmostEqual(report.E, 6.0, delta=1e-9)
        self.assertAlmostEqual(report.p_star, 0.5, delta=1e-6)
        self.assertAlmostEqual(report.width, math.sqrt(2), delta=1e-5)
        self.assertTrue(report.converged)

    def test_bound_pair_optimum(self):
        """q = 1: 2 = 1/(4p²) + 1/(4(p+2)²) em p* ≈ 0.3576."""
        report = optimize_width(_make_params(1, q=1.0))
        self.assertAlmostEqual(report.p_star, 0.3576, places=3)
        self.assertAlmostEqual(report.E, 10.561, places=2)
        self.assertAlmostEqual(report.width, 1.672, places=2)

    def test_dimension_scaling(self):
        for q in (0.0, 0.5, 2.0):
            one = rayleigh_energy(_make_params(1, q=q, d=1), 0.8)
            for d in (2, 3):
                self.assertAlmostEqual(rayleigh_energy(_make_params(1, q=q, d=d), 0.8) / d, one, places=12)


class DegenerateTest(SimpleTestCase):

    def test_fermionic_uncoupled_vanishes(self):
        with self.assertRaises(VanishingNormError):
            rayleigh_energy(_make_params(2, q=0.0), 0.5)
        with self.assertRaises(VanishingNormError):
            optimize_width(_make_params(3, q=0.0))

    def test_bosonic_uncoupled(self):
        """Bósons livres: 2d por bóson composto, E = 6n em 3D."""
        for n in (2, 3):
            report = optimize_width(_make_params(n, q=0.0, mode=SignMode.BOSONIC))
            self.assertAlmostEqual(report.E, 6.0 * n, delta=1e-8)

    def test_bosonic_uncoupled_scales_with_dimension(self):
        for n in (2, 3):
            one = rayleigh_energy(_make_params(n, q=0.0, d=1, mode=SignMode.BOSONIC), 0.7)
            three = rayleigh_energy(_make_params(n, q=0.0, d=3, mode=SignMode.BOSONIC), 0.7)
            self.assertAlmostEqual(three, 3 * one, places=10)


class ReferenceTest(SimpleTestCase):

    def test_fermion_reference(self):
        self.assertEqual(fermion_reference(1, 3), 6.0)
        self.assertEqual(fermion_reference(4, 3), 9.0)
        self.assertEqual(fermion_reference(2, 1), 4.0)
        # 2D: 1 em N=0 (energia 2), 2 em N=1 (energia 4), 1 em N=2 (energia 6)
        self.assertEqual(fermion_reference(4, 2), 8.0)

    def test_boson_reference(self):
        self.assertEqual(boson_reference(3), 3.0)
        with self.assertRaises(InvalidArgumentError):
            boson_reference(0)

    def test_internal_energy(self):
        self.assertEqual(internal_energy_per_boson(1.0, 3), 6.0)
        self.assertEqual(internal_energy_per_boson(0.0, 2), 0.0)

    def test_mixing_mu(self):
        self.assertEqual(mixing_mu(6.0, 6.0, 3.0), 0.0)
        self.assertEqual(mixing_mu(3.0, 6.0, 3.0), 1.0)
        self.assertEqual(mixing_mu(7.5, 6.0, 3.0), -0.5)
        with self.assertRaises(UndefinedMuError):
            mixing_mu(3.0, 3.0, 3.0)


class OptimizerTest(SimpleTestCase):

    def test_internal_energy_is_additive(self):
        for n, q, d in ((1, 1.0, 3), (2, 0.5, 2), (3, 2.0, 1)):
            report = optimize_width(_make_params(n, q=q, d=d))
            self.assertAlmostEqual(report.E_per_boson - report.E_external_per_boson, 2 * d * q, places=12)
            self.assertGreater(report.evaluations, 0)

    def test_local_optimality(self):
        params = _make_params(2, q=1.0)
        report = optimize_width(params)
        for factor in (0.99, 1.01):
            self.assertGreaterEqual(rayleigh_energy(params, report.p_star * factor), report.E - 1e-12)

    def test_local_optimality_up_to_six_pairs(self):
        for n in range(1, 7):
            for mode in (SignMode.FERMIONIC, SignMode.BOSONIC):
                params = _make_params(n, q=1.0, mode=mode)
                report = optimize_width(params)
                for factor in (0.99, 1.01):
                    self.assertGreaterEqual(
                        rayleigh_energy(params, report.p_star * factor), report.E - 1e-12, (n, mode),
                    )

    def test_bosonic_below_fermionic(self):
        fermionic = optimize_width(_make_params(2, q=1.0))
        bosonic = optimize_width(_make_params(2, q=1.0, mode=SignMode.BOSONIC))
        self.assertLess(bosonic.E, fermionic.E)

    def test_evaluate_at_fixed_width(self):
        report = evaluate_at(_make_params(1, q=1.0), 0.25)
        self.assertAlmostEqual(report.E, n1_closed_form(0.25, 1.0, 3), places=12)
        self.assertFalse(report.converged)
        self.assertEqual(report.width, 2.0)


class TuningTest(SimpleTestCase):
    """Ligação forte aproxima o comportamento bosônico."""

    def _externals(self, q, n_max=6):
        return [optimize_width(_make_params(n, q=q)).E_external_per_boson for n in range(1, n_max + 1)]

    def test_strong_binding_narrows_spread(self):
        strong = self._externals(1 / 0.25 ** 2, n_max=4)
        weak = self._externals(1 / 2.0 ** 2, n_max=4)
        self.assertLess(max(strong) - min(strong), max(weak) - min(weak))

    def test_external_energy_grows_with_n(self):
        for q in (0.25, 1.0, 4.0):
            externals = self._externals(q)
            for smaller, larger in zip(externals, externals[1:]):
                self.assertLessEqual(smaller, larger + 1e-12, (q, externals))

    def test_mu_grows_with_coupling(self):
        for n in range(2, 7):
            mus = [optimize_width(_make_params(n, q=q)).mu for q in (0.25, 1.0, 4.0)]
            self.assertLess(mus[0], mus[1], (n, mus))
            self.assertLess(mus[1], mus[2], (n, mus))


class SweepTest(SimpleTestCase):

    def test_order_is_q_outer_n_inner(self):
        reports = sweep([1, 2], 3, [0.5, 1.0], SignMode.BOSONIC)
        self.assertEqual(
            [(r.params.q, r.params.n) for r in reports],
            [(0.5, 1), (0.5, 2), (1.0, 1), (1.0, 2)],
        )

    def test_threads_do_not_change_results(self):
        serial = sweep([1, 2, 3], 2, [0.5, 2.0], SignMode.FERMIONIC, jobs=1)
        threaded = sweep([1, 2, 3], 2, [0.5, 2.0], SignMode.FERMIONIC, jobs=3)
        self.assertEqual([r.E for r in serial], [r.E for r in threaded])

    def test_empty_grid(self):
        self.assertEqual(sweep([], 3, [1.0], SignMode.FERMIONIC), [])
        self.assertEqual(sweep([1], 3, [], SignMode.FERMIONIC), [])

    def test_failed_point_is_recorded(self):
        reports = sweep([1, 2], 3, [0.0], SignMode.FERMIONIC)
        self.assertTrue(reports[0].ok)
        self.assertFalse(reports[1].ok)
        self.assertIsNone(reports[1].E)
        self.assertIn("q = 0", reports[1].error)
        self.assertEqual(reports[1].condition, 0.0)


class CompareTest(SimpleTestCase):

    def _reference(self):
        with open(FIXTURE, encoding="utf-8", newline="") as stream:
            return list(csv.DictReader(stream))

    def test_fixture_rows(self):
        rows = self._reference()
        self.assertEqual([int(r["n"]) for r in rows], list(range(1, 9)))
        for row in rows:
            # coluna interna uniforme: 2·d·q = 6 em 1/√q = 1
            self.assertAlmostEqual(float(row["E_per_boson"]) - float(row["E_external_per_boson"]), 6.0, places=4)

    def test_single_pair_deviation(self):
        report = optimize_width(_make_params(1, q=1.0))
        rows = compare_with_reference([report], self._reference())
        self.assertEqual(len(rows), 1)
        row = rows[0]
        self.assertEqual(row["E_reference"], 9.375)
        self.assertAlmostEqual(row["E_delta"], report.E - 9.375, places=12)
        self.assertAlmostEqual(row["E_relative"], (report.E - 9.375) / 9.375, places=12)
        self.assertGreater(row["E_delta"], 1.0)

    def test_failed_report_has_empty_deviation(self):
        report = EnergyReport(params=_make_params(2, q=0.0), error="norma nula")
        row = compare_with_reference([report], self._reference())[0]
        self.assertIsNone(row["E_computed"])
        self.assertIsNone(row["E_delta"])
        self.assertEqual(row["error"], "norma nula")

    def test_missing_reference_rows_are_skipped(self):
        report = optimize_width(_make_params(1, q=1.0))
        self.assertEqual(compare_with_reference([report], [{"n": "2", "E": "1"}]), [])
