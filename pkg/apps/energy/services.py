"""
SERVICES: energia variacional, otimização da largura externa e referências.

  - rayleigh_energy          → E = (T + V)/O com H = −∇² + Σ(a_i² + b_i²)
  - optimize_width           → varredura log em p + seção áurea em ln p
  - internal_energy_per_boson / fermion_reference / boson_reference
  - mixing_mu                → E_ext = μE_bóson + (1−μ)E_férmion
  - sweep                    → grade (n, q) com falhas registradas por ponto
  - compare_with_reference   → desvios contra uma tabela publicada (dados, nunca default)
"""
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

from apps.elements.services import assemble_sums, check_degenerate
from apps.energy.domain import EnergyReport, ModelParams
from apps.shared.exceptions import (
    CobosonError,
    InvalidArgumentError,
    NoBracketError,
    NumericalError,
    UndefinedMuError,
)

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


# ═══════════════════════════════════════════════════════════════════════════════
# Energia
# ═══════════════════════════════════════════════════════════════════════════════

def _energy_and_condition(params: ModelParams, p: float) -> tuple:
    sums = assemble_sums(params, p)
    energy = (sums.T_sum + sums.V_sum) / sums.O_sum
    return float(energy), float(sums.condition)


def rayleigh_energy(params: ModelParams, p: float) -> float:
    return _energy_and_condition(params, p)[0]


def internal_energy_per_boson(q: float, d: int) -> float:
    """Cinética de e^{−q(a−b)²} sob −∇_a² − ∇_b²: 2·d·q."""
    if q < 0:
        raise InvalidArgumentError(f"q deve ser ≥ 0 (recebido {q}).")
    return 2.0 * d * q


def fermion_reference(n: int, d: int) -> float:
    """
    Camadas do oscilador isotrópico (ω = 2, nível N com energia 2N + d e
    degenerescência C(N+d−1, d−1)) preenchidas por uma espécie; duas espécies
    por bóson composto.
    """
    if n < 1:
        raise InvalidArgumentError(f"n deve ser ≥ 1 (recebido {n}).")
    remaining, total, level = n, 0, 0
    while remaining:
        taken = min(remaining, math.comb(level + d - 1, d - 1))
        total += taken * (2 * level + d)
        remaining -= taken
        level += 1
    return 2.0 * total / n


def boson_reference(d: int) -> float:
    """Massa 1 no potencial de força dobrada: energia d por bóson."""
    if d not in (1, 2, 3):
        raise InvalidArgumentError(f"d deve ser 1, 2 ou 3 (recebido {d!r}).")
    return float(d)


def mixing_mu(E_external_per_boson: float, E_fermion_ref: float, E_boson_ref: float) -> float:
    """μ = (E_f − E_ext)/(E_f − E_b); valores fora de [0, 1] são devolvidos como estão."""
    if E_fermion_ref == E_boson_ref:
        raise UndefinedMuError(
            f"Referências degeneradas (férmion = bóson = {E_fermion_ref}): μ indefinido."
        )
    return (E_fermion_ref - E_external_per_boson) / (E_fermion_ref - E_boson_ref)


# ═══════════════════════════════════════════════════════════════════════════════
# Otimização da largura externa
# ═══════════════════════════════════════════════════════════════════════════════

class _Objective:
    """E(ln p), contando avaliações e guardando a pior condição vista."""

    def __init__(self, params: ModelParams):
        self.params = params
        self.evaluations = 0
        self.worst_condition = 1.0

    def __call__(self, log_p: float) -> float:
        self.evaluations += 1
        energy, condition = _energy_and_condition(self.params, math.exp(log_p))
        self.worst_condition = min(self.worst_condition, condition)
        return energy

    def safe(self, log_p: float) -> float:
        try:
            return self(log_p)
        except NumericalError as exc:
            if exc.condition is not None:
                self.worst_condition = min(self.worst_condition, exc.condition)
            logger.debug("Ponto da varredura descartado (ln p = %.3f): %s", log_p, exc)
            return math.inf


def _scan(objective: _Objective) -> tuple:
    low, high = getattr(settings, "COBOSON_SCAN_BOUNDS", (1e-4, 1e4))
    points = getattr(settings, "COBOSON_SCAN_POINTS", 33)
    grid = np.linspace(math.log(low), math.log(high), points)
    values = [objective.safe(float(t)) for t in grid]

    finite = [i for i, v in enumerate(values) if math.isfinite(v)]
    if not finite:
        raise NoBracketError(
            f"Nenhum ponto avaliável na varredura para {objective.params}.",
            condition=objective.worst_condition,
        )
    best = min(finite, key=lambda i: values[i])
    if best == 0 or best == points - 1:
        raise NoBracketError(
            f"Mínimo na borda da varredura (p = {math.exp(grid[best]):.3g}) para {objective.params}.",
            condition=objective.worst_condition,
        )
    return float(grid[best - 1]), float(grid[best + 1])


def _golden_section(f, a: float, b: float, tol: float, max_iterations: int) -> tuple:
    """Seção áurea em [a, b]; devolve o intervalo final e se colapsou abaixo de tol."""
    h = b - a
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    iterations = 0
    while h > tol and iterations < max_iterations:
        iterations += 1
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    return a, b, h <= tol


def _fill_report(params: ModelParams, p_star: float, energy: float, **extra) -> EnergyReport:
    per_boson = energy / params.n
    internal = internal_energy_per_boson(params.q, params.d)
    external = per_boson - internal
    fermion_ref = fermion_reference(params.n, params.d)
    boson_ref = boson_reference(params.d)
    try:
        mu = mixing_mu(external, fermion_ref, boson_ref)
    except UndefinedMuError:
        mu = None
    return EnergyReport(
        params=params,
        p_star=p_star,
        width=1.0 / math.sqrt(p_star),
        E=energy,
        E_per_boson=per_boson,
        E_internal_per_boson=internal,
        E_external_per_boson=external,
        E_fermion_ref=fermion_ref,
        E_boson_ref=boson_ref,
        mu=mu,
        **extra,
    )


def evaluate_at(params: ModelParams, p: float) -> EnergyReport:
    """Relatório para p fixo (sem otimização)."""
    energy, condition = _energy_and_condition(params, p)
    return _fill_report(params, p, energy, converged=False, condition=condition, evaluations=1)


def optimize_width(params: ModelParams) -> EnergyReport:
    check_degenerate(params)
    objective = _Objective(params)
    low, high = _scan(objective)

    tol = getattr(settings, "COBOSON_GOLDEN_TOLERANCE", 1e-10)
    max_iterations = getattr(settings, "COBOSON_GOLDEN_MAX_ITERATIONS", 200)
    a, b, converged = _golden_section(objective, low, high, tol, max_iterations)

    p_star = math.exp((a + b) / 2)
    energy = objective(math.log(p_star))
    logger.info(
        "optimize_width %s: p*=%.10g E=%.12g (%d avaliações, convergiu=%s)",
        params, p_star, energy, objective.evaluations, converged,
    )
    return _fill_report(
        params,
        p_star,
        energy,
        converged=converged,
        condition=objective.worst_condition,
        evaluations=objective.evaluations,
    )


# ═══════════════════════════════════════════════════════════════════════════════
# Varreduras
# ═══════════════════════════════════════════════════════════════════════════════

def _run_point(params: ModelParams) -> EnergyReport:
    try:
        return optimize_width(params)
    except CobosonError as exc:
        logger.warning("Ponto %s falhou: %s", params, exc)
        # campos numéricos vazios; a condição fica registrada quando a falha a conhece
        return EnergyReport(params=params, error=str(exc), condition=getattr(exc, "condition", None))


def default_jobs() -> int:
    return os.cpu_count() or 1


def sweep(n_list, d: int, q_list, mode, jobs: int = 1) -> list:
    """
    Um EnergyReport por (q, n), q externo e n interno. A ordem da saída segue
    a da entrada, qualquer que seja o escalonamento das threads.
    """
    grid = [ModelParams(n=n, d=d, q=q, mode=mode) for q in q_list for n in n_list]
    if not grid:
        return []
    if jobs <= 1:
        return [_run_point(params) for params in grid]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(_run_point, grid))


# ═══════════════════════════════════════════════════════════════════════════════
# Comparação com tabela publicada
# ═══════════════════════════════════════════════════════════════════════════════

COMPARED_FIELDS = ("E", "width", "E_per_boson", "E_external_per_boson")


def _deviation(computed, reference) -> tuple:
    if computed is None or reference is None:
        return None, None
    delta = computed - reference
    relative = delta / abs(reference) if reference else None
    return delta, relative


def compare_with_reference(reports, reference_rows) -> list:
    """
    Junta cada relatório à linha de referência de mesmo n.
    reference_rows: dicts com n e as colunas de COMPARED_FIELDS.
    """
    by_n = {int(row["n"]): row for row in reference_rows}
    rows = []
    for report in reports:
        reference = by_n.get(report.params.n)
        if reference is None:
            continue
        row = {"n": report.params.n, "error": report.error}
        for name in COMPARED_FIELDS:
            computed = getattr(report, name)
            expected = reference.get(name)
            expected = float(expected) if expected not in (None, "") else None
            delta, relative = _deviation(computed, expected)
            row[f"{name}_computed"] = computed
            row[f"{name}_reference"] = expected
            row[f"{name}_delta"] = delta
            row[f"{name}_relative"] = relative
        rows.append(row)
    return rows
