"""
SERVICES: caminho independente de verificação.

A soma aqui é literal: todas as n! permutações, cada uma com a forma 2n×2n
completa. Só as primitivas gaussianas são compartilhadas com o motor; nada
de fatoração por ciclos nem agrupamento por classes na soma.
"""
import logging
from collections import Counter

import numpy as np
from django.conf import settings

from apps.elements.services import assemble_sums, class_element
from apps.energy.domain import ModelParams
from apps.gaussians.services import build_pair_form, evaluate_form
from apps.oracle import goldens
from apps.oracle.domain import (
    BruteForceSums,
    CheckResult,
    CrossCheckSummary,
    OracleReport,
    PermutationTerm,
)
from apps.permutations.domain import SignMode
from apps.permutations.services import (
    count_marked_partitions,
    cycle_type_of,
    enumerate_permutations,
    permutation_sign,
)
from apps.shared.exceptions import (
    CobosonError,
    InvalidArgumentError,
    ResourceLimitError,
    VanishingNormError,
)
from apps.shared.numeric import BINARY64, Field, condition_threshold, escalate

logger = logging.getLogger(__name__)


def oracle_limit() -> int:
    return getattr(settings, "COBOSON_ORACLE_MAX_N", 6)


def verification_threshold(tol: float) -> float:
    """Limiar de condição que deixa folga de ~1000 ulps abaixo de tol."""
    return max(condition_threshold(), 1e3 * 2.0 ** -BINARY64 / tol)


def n1_closed_form(p: float, q: float, d: int) -> float:
    """Um par: separação centro de massa / coordenada relativa."""
    if not p > 0 or q < 0:
        raise InvalidArgumentError(f"Parâmetros inválidos p={p}, q={q}.")
    return d * (2 * (p + q) + 1 / (4 * p) + 1 / (4 * (p + 2 * q)))


# ═══════════════════════════════════════════════════════════════════════════════
# Soma por força bruta
# ═══════════════════════════════════════════════════════════════════════════════

def _brute_force_at(params: ModelParams, p: float, perms: list, field: Field) -> BruteForceSums:
    n, d = params.n, params.d
    evaluated = [(perm, evaluate_form(build_pair_form(n, p, params.q, perm, field))) for perm in perms]
    # perms[0] é a identidade (ordem lexicográfica)
    identity = evaluated[0][1]

    terms = []
    for perm, integrals in evaluated:
        sign = permutation_sign(perm) if params.mode == SignMode.FERMIONIC else 1
        O = (identity.root_det / integrals.root_det) ** d
        terms.append(PermutationTerm(
            perm=perm,
            sign=sign,
            O=O,
            T=d * O * integrals.kinetic_ratio,
            V=d * O * integrals.moment_ratio,
            kinetic_first=integrals.kinetic_coordinates[0],
        ))

    O_sum = field.fsum(t.sign * t.O for t in terms)
    total = field.fsum(abs(t.O) for t in terms)
    return BruteForceSums(
        O_sum=O_sum,
        T_sum=field.fsum(t.sign * t.T for t in terms),
        V_sum=field.fsum(t.sign * t.V for t in terms),
        condition=abs(O_sum) / total,
        prec=field.prec,
        terms=tuple(terms),
    )


def _relative_delta(a, b) -> float:
    a, b = float(a), float(b)
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def brute_force_sums(params: ModelParams, p: float, tol: float = 1e-10, threshold: float = None) -> OracleReport:
    """Somas sobre as n! permutações, comparadas com o motor por classes."""
    if params.n > oracle_limit():
        raise ResourceLimitError(f"Oráculo limitado a n ≤ {oracle_limit()} (recebido {params.n}).")
    if not p > 0:
        raise InvalidArgumentError(f"p deve ser > 0 (recebido {p}).")
    if params.mode == SignMode.FERMIONIC and params.q == 0 and params.n >= 2:
        raise VanishingNormError(f"Estado antissimetrizado nulo para q = 0 e n = {params.n}.", condition=0.0)

    perms = enumerate_permutations(params.n)
    brute = escalate(
        lambda field: _brute_force_at(params, p, perms, field),
        threshold=threshold,
        label=f"oráculo n={params.n} q={params.q} p={p} {params.mode}",
    )
    engine = assemble_sums(params, p, threshold=threshold)
    deltas = {
        "O": _relative_delta(brute.O_sum, engine.O_sum),
        "T": _relative_delta(brute.T_sum, engine.T_sum),
        "V": _relative_delta(brute.V_sum, engine.V_sum),
    }
    return OracleReport(
        O_sum=brute.O_sum,
        T_sum=brute.T_sum,
        V_sum=brute.V_sum,
        deltas=deltas,
        passed=max(deltas.values()) <= tol,
        prec=brute.prec,
        terms=brute.terms,
    )


def cross_check(n_max: int, trials: int, tol: float = 1e-10, seed: int = 0, d: int = 3) -> CrossCheckSummary:
    """
    Para cada n ≤ n_max e `trials` sorteios (p, q) ∈ [0.1, 3]², roda os dois
    caminhos nos dois modos. Determinístico para uma semente fixa.
    """
    if n_max > oracle_limit():
        raise ResourceLimitError(f"Oráculo limitado a n ≤ {oracle_limit()} (recebido {n_max}).")
    summary = CrossCheckSummary(seed=seed, trials=trials, tol=tol)
    if trials <= 0:
        return summary

    logger.info("cross_check seed=%d trials=%d n_max=%d tol=%.1e", seed, trials, n_max, tol)
    draws = np.random.default_rng(seed).uniform(0.1, 3.0, size=(trials, 2))
    threshold = verification_threshold(tol)

    for n in range(1, n_max + 1):
        for mode in (SignMode.FERMIONIC, SignMode.BOSONIC):
            worst = 0.0
            for trial, (p, q) in enumerate(draws.tolist()):
                params = ModelParams(n=n, d=d, q=q, mode=mode)
                try:
                    report = brute_force_sums(params, p, tol=tol, threshold=threshold)
                except CobosonError as exc:
                    summary.failures.append({
                        "n": n, "mode": str(mode), "trial": trial, "p": p, "q": q, "error": str(exc),
                    })
                    continue
                worst = max(worst, report.max_delta)
                if not report.passed:
                    logger.warning("Divergência oráculo/motor n=%d %s p=%r q=%r: %s", n, mode, p, q, report.deltas)
            summary.entries.append({"n": n, "mode": str(mode), "max_delta": worst})
    return summary


# ═══════════════════════════════════════════════════════════════════════════════
# Agrupamentos e valores de referência
# ═══════════════════════════════════════════════════════════════════════════════

def group_by_cycle_type(n: int, mode: str = SignMode.FERMIONIC) -> dict:
    """{CycleType: (quantidade, assinatura)} contados permutação a permutação."""
    counts, signs = Counter(), {}
    for perm in enumerate_permutations(n):
        cycle_type = cycle_type_of(perm)
        counts[cycle_type] += 1
        signs[cycle_type] = permutation_sign(perm) if mode == SignMode.FERMIONIC else 1
    return {t: (counts[t], signs[t]) for t in counts}


def _marked_length(perm) -> int:
    length, j = 1, perm[0]
    while j != 0:
        length += 1
        j = perm[j]
    return length


def marked_classes(n: int) -> Counter:
    """Conta permutações por (tipo de ciclo, comprimento do ciclo que contém o índice 0)."""
    counts = Counter()
    for perm in enumerate_permutations(n):
        counts[(cycle_type_of(perm), _marked_length(perm))] += 1
    return counts


def _close(a, b, tol) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b))


def golden_checks(tol: float = 1e-12) -> list:
    """Contagens de elementos de matriz (n = 1..10) e a tabela de 3 pares."""
    results = []
    counts = tuple(count_marked_partitions(n) for n in range(1, len(goldens.MARKED_COUNTS) + 1))
    results.append(CheckResult(
        name="marked_counts",
        passed=counts == goldens.MARKED_COUNTS,
        detail=f"calculado={counts} esperado={goldens.MARKED_COUNTS}",
    ))

    marked = marked_classes(3)
    for perm, factor, expression in goldens.THREE_PAIR_ROWS:
        cycle_type = cycle_type_of(perm)
        counted = permutation_sign(perm) * marked[(cycle_type, _marked_length(perm))]
        results.append(CheckResult(
            name=f"factor{perm}",
            passed=counted == factor,
            detail=f"calculado={counted} esperado={factor}",
        ))
        for p, q in goldens.THREE_PAIR_POINTS:
            overlap_expected, kinetic_expected = expression(p, q)
            overlap = float(class_element(cycle_type, p, q, 3, raw=True).O)
            first = evaluate_form(build_pair_form(3, p, q, perm)).kinetic_coordinates[0]
            kinetic = -overlap * first
            results.append(CheckResult(
                name=f"overlap{perm}@({p:.6g},{q:.6g})",
                passed=_close(overlap, overlap_expected, tol),
                detail=f"calculado={overlap!r} esperado={overlap_expected!r}",
            ))
            results.append(CheckResult(
                name=f"kinetic{perm}@({p:.6g},{q:.6g})",
                passed=_close(kinetic, kinetic_expected, tol),
                detail=f"calculado={kinetic!r} esperado={kinetic_expected!r}",
            ))
    return results
