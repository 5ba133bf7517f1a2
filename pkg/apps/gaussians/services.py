"""
SERVICES: integrais gaussianas sobre formas quadráticas.

A avaliação é matricial (Cholesky + inversa) em vez da integração variável a
variável; a identidade escalar ∫e^{−ax²+bx+c}(dx²+ex+f)dx fica disponível em
gauss_moment_1d e serve de oráculo nos testes.

Convenção cinética: energia positiva, operador −∂² (m = 1/2, ħ = 1).
"""
import logging

import numpy as np
import scipy.linalg

from apps.gaussians.domain import FormIntegrals, PairForm
from apps.permutations.services import validate_permutation
from apps.shared.exceptions import DivergentIntegralError, InvalidArgumentError
from apps.shared.numeric import Field

logger = logging.getLogger(__name__)


def gauss_moment_1d(a, b, c, d, e, f, field: Field = None):
    """∫ e^{−ax²+bx+c}(dx²+ex+f) dx na reta toda, pela fórmula fechada."""
    field = field or Field()
    a, b, c, d, e, f = (field.scalar(v) for v in (a, b, c, d, e, f))
    if not a > 0:
        raise DivergentIntegralError(f"Integral diverge para a = {a} ≤ 0.")
    polynomial = 4 * a * a * f + 2 * a * (b * e + d) + b * b * d
    return (
        field.sqrt(field.pi())
        * field.exp(b * b / (4 * a) + c)
        * polynomial
        / (4 * a * a * field.sqrt(a))
    )


def build_pair_form(n_coords: int, p, q, perm, field: Field = None) -> PairForm:
    """
    Bra exp(−pΣ(a_i²+b_i²) − qΣ(a_i − b_{perm(i)})²) e ket na ordem identidade.
    Matrizes N×N com N = 2·n_coords.
    """
    field = field or Field()
    perm = validate_permutation(perm, n_coords)
    p, q = field.scalar(p), field.scalar(q)
    if not p > 0:
        raise InvalidArgumentError(f"p deve ser > 0 (recebido {p}).")
    if q < 0:
        raise InvalidArgumentError(f"q deve ser ≥ 0 (recebido {q}).")

    size = 2 * n_coords
    zero = field.scalar(0)
    bra = [[zero] * size for _ in range(size)]
    ket = [[zero] * size for _ in range(size)]
    for i in range(size):
        bra[i][i] = ket[i][i] = p + q
    for i in range(n_coords):
        ket[i][n_coords + i] = ket[n_coords + i][i] = -q
        j = n_coords + perm[i]
        bra[i][j] = bra[j][i] = -q
    return PairForm(B=field.matrix(bra), C=field.matrix(ket), field=field)


# ═══════════════════════════════════════════════════════════════════════════════
# Fatoração compartilhada
# ═══════════════════════════════════════════════════════════════════════════════

def _evaluate_binary64(form: PairForm) -> FormIntegrals:
    A = form.combined
    size = A.shape[0]
    try:
        factor, lower = scipy.linalg.cho_factor(A, lower=True)
    except np.linalg.LinAlgError as exc:
        raise DivergentIntegralError(f"Forma não positiva definida: {exc}") from exc

    root_det = float(np.prod(np.diag(factor)))
    A_inv = scipy.linalg.cho_solve((factor, lower), np.eye(size))
    C = form.C
    coordinates = 2.0 * np.diag(C) - 2.0 * np.diag(C @ A_inv @ C)
    return FormIntegrals(
        root_det=root_det,
        overlap=float(np.pi ** (size / 2) / root_det),
        moment_ratio=float(np.trace(A_inv) / 2.0),
        kinetic_ratio=float(np.sum(coordinates)),
        kinetic_coordinates=tuple(float(v) for v in coordinates),
    )


def _cholesky_rows(ctx, A: list) -> list:
    size = len(A)
    L = [[ctx.mpf(0)] * size for _ in range(size)]
    for j in range(size):
        row_j = L[j]
        pivot = A[j][j] - ctx.fdot(zip(row_j[:j], row_j[:j]))
        if not pivot > 0:
            raise DivergentIntegralError(f"Forma não positiva definida: pivô {j} = {pivot}.")
        row_j[j] = ctx.sqrt(pivot)
        for i in range(j + 1, size):
            L[i][j] = (A[i][j] - ctx.fdot(zip(L[i][:j], row_j[:j]))) / row_j[j]
    return L


def _lower_inverse(ctx, L: list) -> list:
    """W = L⁻¹, também triangular inferior, por substituição direta."""
    size = len(L)
    W = [[ctx.mpf(0)] * size for _ in range(size)]
    for i in range(size):
        W[i][i] = 1 / L[i][i]
        for j in range(i):
            W[i][j] = -ctx.fdot((L[i][m], W[m][j]) for m in range(j, i)) / L[i][i]
    return W


def _evaluate_mp(form: PairForm) -> FormIntegrals:
    ctx = form.field.ctx
    B, C = form.B.tolist(), form.C.tolist()
    size = len(C)
    A = [[B[i][j] + C[i][j] for j in range(size)] for i in range(size)]
    L = _cholesky_rows(ctx, A)
    W = _lower_inverse(ctx, L)

    inverse = {}

    def a_inv(i, j):
        # (A⁻¹)_ij = Σ_m W_mi W_mj, com W_mi = 0 para m < i
        key = (min(i, j), max(i, j))
        if key not in inverse:
            inverse[key] = ctx.fdot((W[m][i], W[m][j]) for m in range(key[1], size))
        return inverse[key]

    coordinates = []
    for k in range(size):
        # só a diagonal de C·A⁻¹·C; cada linha de C tem poucos não nulos
        support = [m for m in range(size) if C[k][m]]
        CAC = ctx.fsum(C[k][i] * C[k][j] * a_inv(i, j) for i in support for j in support)
        coordinates.append(2 * C[k][k] - 2 * CAC)
    coordinates = tuple(coordinates)

    root_det = ctx.fprod(L[i][i] for i in range(size))
    return FormIntegrals(
        root_det=root_det,
        overlap=ctx.pi ** (ctx.mpf(size) / 2) / root_det,
        moment_ratio=ctx.fsum(a_inv(k, k) for k in range(size)) / 2,
        kinetic_ratio=ctx.fsum(coordinates),
        kinetic_coordinates=coordinates,
    )


def evaluate_form(form: PairForm) -> FormIntegrals:
    """Uma fatoração simétrica serve overlap, segundo momento e cinética."""
    if form.field.is_binary64:
        return _evaluate_binary64(form)
    return _evaluate_mp(form)


def overlap_integral(form: PairForm):
    """∫ exp(−xᵀAx) dᴺx = π^{N/2}/√det(A)."""
    return evaluate_form(form).overlap


def second_moment_sum(form: PairForm):
    """Σ_k ∫ x_k² exp(−xᵀAx) dᴺx."""
    integrals = evaluate_form(form)
    return integrals.overlap * integrals.moment_ratio


def kinetic_bilinear(form: PairForm):
    """Σ_k ∫ exp(−xᵀBx)(−∂²/∂x_k²)exp(−xᵀCx) dᴺx."""
    integrals = evaluate_form(form)
    return integrals.overlap * integrals.kinetic_ratio


def coordinate_kinetic_ratios(form: PairForm) -> tuple:
    """Cinética/overlap coordenada a coordenada (a tabela de 3 pares usa −ratios[0])."""
    return evaluate_form(form).kinetic_coordinates
