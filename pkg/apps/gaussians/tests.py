"""
Testes das integrais gaussianas contra quadratura numérica.

Roda com: python manage.py test apps.gaussians.tests -v 2
"""
import math

import numpy as np
from django.test import SimpleTestCase
from scipy import integrate

from apps.gaussians.domain import PairForm
from apps.gaussians.services import (
    build_pair_form,
    coordinate_kinetic_ratios,
    evaluate_form,
    gauss_moment_1d,
    kinetic_bilinear,
    overlap_integral,
    second_moment_sum,
)
from apps.shared.exceptions import DivergentIntegralError, InvalidArgumentError
from apps.shared.numeric import Field

BOX = 8.0


def _make_form(n, p=0.7, q=0.4, perm=None, prec=53):
    perm = tuple(range(n)) if perm is None else perm
    return build_pair_form(n, p, q, perm, Field(prec))


def _quadrature(integrand):
    value, _ = integrate.dblquad(
        lambda y, x: integrand(x, y), -BOX, BOX, -BOX, BOX, epsabs=1e-13, epsrel=1e-11,
    )
    return value


def _relative(a, b):
    return abs(float(a) - float(b)) / max(abs(float(b)), 1e-300)


class GaussMoment1dTest(SimpleTestCase):
    """Fórmula fechada ∫e^{−ax²+bx+c}(dx²+ex+f)dx contra scipy.quad."""

    def test_random_draws(self):
        rng = np.random.default_rng(1234)
        for _ in range(100):
            a = rng.uniform(0.5, 3.0)
            b, c = rng.uniform(-2, 2), rng.uniform(-1, 1)
            d, e, f = rng.uniform(-2, 2, size=3)
            expected, _ = integrate.quad(
                lambda x: math.exp(-a * x * x + b * x + c) * (d * x * x + e * x + f),
                -math.inf, math.inf, epsabs=1e-12, epsrel=1e-12,
            )
            value = gauss_moment_1d(a, b, c, d, e, f)
            self.assertLessEqual(abs(value - expected), 1e-8 * max(1.0, abs(expected)))

    def test_relative_accuracy(self):
        """Polinômio positivo (sem cancelamento): erro relativo ≤ 1e-10."""
        rng = np.random.default_rng(99)
        for _ in range(50):
            a = rng.uniform(0.3, 4.0)
            b, c = rng.uniform(-3, 3), rng.uniform(-1, 1)
            d, f = rng.uniform(0.1, 2.0, size=2)
            e = rng.uniform(-1, 1) * math.sqrt(d * f)
            center, half = b / (2 * a), 14.0 / math.sqrt(a)
            expected, _ = integrate.quad(
                lambda x: math.exp(-a * x * x + b * x + c) * (d * x * x + e * x + f),
                center - half, center + half, epsabs=0.0, epsrel=1e-12, limit=200,
            )
            self.assertLess(_relative(gauss_moment_1d(a, b, c, d, e, f), expected), 1e-10)

    def test_pure_gaussian(self):
        self.assertAlmostEqual(gauss_moment_1d(1, 0, 0, 0, 0, 1), math.sqrt(math.pi), places=14)

    def test_high_precision_agrees(self):
        fast = gauss_moment_1d(1.3, 0.4, -0.2, 0.5, -1.0, 2.0)
        slow = gauss_moment_1d(1.3, 0.4, -0.2, 0.5, -1.0, 2.0, Field(256))
        self.assertLess(_relative(slow, fast), 1e-14)

    def test_divergent(self):
        with self.assertRaises(DivergentIntegralError):
            gauss_moment_1d(0, 1, 0, 0, 0, 1)
        with self.assertRaises(DivergentIntegralError):
            gauss_moment_1d(-1, 0, 0, 1, 0, 0)


class BuildPairFormTest(SimpleTestCase):

    def test_layout(self):
        p, q = 0.7, 0.4
        form = _make_form(3, p, q, perm=(1, 2, 0))
        self.assertEqual(form.size, 6)
        np.testing.assert_allclose(np.diag(form.B), [p + q] * 6)
        np.testing.assert_allclose(form.B, form.B.T)
        # bra: a_i acoplado a b_perm(i); ket: a_i acoplado a b_i
        self.assertEqual(form.B[0, 3 + 1], -q)
        self.assertEqual(form.B[2, 3 + 0], -q)
        self.assertEqual(form.B[0, 3 + 0], 0.0)
        self.assertEqual(form.C[0, 3], -q)

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidArgumentError):
            build_pair_form(2, 0.0, 1.0, (0, 1))
        with self.assertRaises(InvalidArgumentError):
            build_pair_form(2, 1.0, -0.1, (0, 1))
        with self.assertRaises(InvalidArgumentError):
            build_pair_form(2, 1.0, 1.0, (0, 0))


class FormIntegralsTest(SimpleTestCase):
    """Um par (duas variáveis): overlap, segundo momento e cinética por quadratura."""

    def setUp(self):
        self.p, self.q = 0.7, 0.4
        self.form = _make_form(1, self.p, self.q)
        self.A = self.form.combined
        self.B = self.form.B
        self.C = self.form.C

    def _exponent(self, M, x, y):
        v = np.array([x, y])
        return float(v @ M @ v)

    def test_overlap(self):
        expected = _quadrature(lambda x, y: math.exp(-self._exponent(self.A, x, y)))
        self.assertLess(_relative(overlap_integral(self.form), expected), 1e-9)

    def test_second_moment(self):
        expected = _quadrature(lambda x, y: (x * x + y * y) * math.exp(-self._exponent(self.A, x, y)))
        self.assertLess(_relative(second_moment_sum(self.form), expected), 1e-9)

    def test_kinetic(self):
        def integrand(x, y):
            gradient = 2 * self.C @ np.array([x, y])
            laplacian = 2 * np.trace(self.C) - float(gradient @ gradient)
            return laplacian * math.exp(-self._exponent(self.A, x, y))

        expected = _quadrature(integrand)
        self.assertLess(_relative(kinetic_bilinear(self.form), expected), 1e-9)

    def test_determinant(self):
        """det A = 4p(p + 2q) para um par."""
        root_det = evaluate_form(self.form).root_det
        self.assertAlmostEqual(root_det ** 2, 4 * self.p * (self.p + 2 * self.q), places=12)


class StructureTest(SimpleTestCase):

    def test_identity_factorizes(self):
        single = overlap_integral(_make_form(1))
        for n in range(2, 5):
            self.assertLess(_relative(overlap_integral(_make_form(n)), single ** n), 1e-13)

    def test_block_diagonal_factorizes(self):
        """(1,0,2) = transposição ⊗ par fixo."""
        swap = evaluate_form(_make_form(2, perm=(1, 0)))
        fixed = evaluate_form(_make_form(1))
        full = evaluate_form(_make_form(3, perm=(1, 0, 2)))
        self.assertLess(_relative(full.overlap, swap.overlap * fixed.overlap), 1e-13)
        self.assertLess(_relative(full.kinetic_ratio, swap.kinetic_ratio + fixed.kinetic_ratio), 1e-13)
        self.assertLess(_relative(full.moment_ratio, swap.moment_ratio + fixed.moment_ratio), 1e-13)

    def test_symmetric_split_kinetic_is_trace(self):
        """Com B = C = A/2 a razão cinética é tr(C)."""
        rng = np.random.default_rng(7)
        for size in (2, 4, 6):
            G = rng.normal(size=(size, size))
            A = G @ G.T + size * np.eye(size)
            form = PairForm.from_combined(A)
            self.assertLess(_relative(evaluate_form(form).kinetic_ratio, np.trace(A) / 2), 1e-12)

    def test_transposition_coordinate_ratio(self):
        """a_1 numa transposição em p = q = 1: (2 + 4 + 1)/(2·2)."""
        ratios = coordinate_kinetic_ratios(build_pair_form(2, 1.0, 1.0, (1, 0)))
        self.assertAlmostEqual(ratios[0], 1.75, places=13)

    def test_precisions_agree(self):
        fast = evaluate_form(_make_form(3, 1.3, 0.8, perm=(1, 2, 0)))
        slow = evaluate_form(_make_form(3, 1.3, 0.8, perm=(1, 2, 0), prec=256))
        for name in ("root_det", "overlap", "moment_ratio", "kinetic_ratio"):
            self.assertLess(_relative(getattr(slow, name), getattr(fast, name)), 1e-13, name)

    def test_not_positive_definite(self):
        indefinite = [[1.0, 2.0], [2.0, 1.0]]
        with self.assertRaises(DivergentIntegralError):
            evaluate_form(PairForm.from_combined(indefinite))
        with self.assertRaises(DivergentIntegralError):
            evaluate_form(PairForm.from_combined(indefinite, Field(128)))


def _random_spd(rng, size, low=0.5, high=2.0):
    """Q·diag(λ)·Qᵀ com Q ortogonal aleatória e λ em [low, high]."""
    Q, _ = np.linalg.qr(rng.normal(size=(size, size)))
    return Q @ np.diag(rng.uniform(low, high, size=size)) @ Q.T


def _hermite_integrals(A, nodes=40):
    """
    ∫exp(−xᵀAx) e ∫|x|²exp(−xᵀAx) em R⁴ por Gauss–Hermite tensorial:
    e^{−|x|²} é o peso, exp(−xᵀ(A − I)x) o integrando.
    """
    x, w = np.polynomial.hermite.hermgauss(nodes)
    rest = np.stack(np.meshgrid(x, x, x, indexing="ij"), axis=-1).reshape(-1, 3)
    rest_weights = np.einsum("i,j,k->ijk", w, w, w).ravel()
    M = A - np.eye(4)
    overlap = moment = 0.0
    for first, first_weight in zip(x, w):
        points = np.column_stack([np.full(len(rest), first), rest])
        values = rest_weights * np.exp(-np.einsum("ni,ij,nj->n", points, M, points))
        overlap += first_weight * values.sum()
        moment += first_weight * (values * np.einsum("ni,ni->n", points, points)).sum()
    return overlap, moment


class RandomFormTest(SimpleTestCase):
    """Formas 4×4 positivas definidas aleatórias contra quadratura de Gauss–Hermite."""

    def test_overlap_and_second_moment(self):
        rng = np.random.default_rng(2024)
        for _ in range(5):
            A = _random_spd(rng, 4)
            overlap, moment = _hermite_integrals(A)
            for prec in (53, 128):
                form = PairForm.from_combined(A.tolist(), Field(prec))
                self.assertLess(_relative(overlap_integral(form), overlap), 1e-9, prec)
                self.assertLess(_relative(second_moment_sum(form), moment), 1e-9, prec)

    def test_extended_precision_matches_binary64_on_six_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(3):
            perm = tuple(int(i) for i in rng.permutation(6))
            p, q = (float(v) for v in rng.uniform(0.1, 3.0, size=2))
            fast = evaluate_form(_make_form(6, p, q, perm=perm))
            slow = evaluate_form(_make_form(6, p, q, perm=perm, prec=128))
            for name in ("root_det", "overlap", "moment_ratio", "kinetic_ratio"):
                self.assertLess(_relative(getattr(slow, name), getattr(fast, name)), 1e-12, (perm, name))
            for k, (a, b) in enumerate(zip(slow.kinetic_coordinates, fast.kinetic_coordinates)):
                self.assertAlmostEqual(float(a), b, delta=1e-12 * (p + q), msg=(perm, k))

    def test_extended_precision_rejects_late_negative_pivot(self):
        A = _random_spd(np.random.default_rng(3), 4)
        A[3, 3] = -1.0
        with self.assertRaises(DivergentIntegralError):
            evaluate_form(PairForm.from_combined(A.tolist(), Field(128)))
