"""
SERVICES: elementos de matriz por classe de permutação.

  - cycle_factors   → overlap normalizado, cinética e potencial de uma cadeia de comprimento k
  - class_element   → produto das cadeias de um tipo de ciclo, elevado às d dimensões
  - assemble_sums   → somas com sinal e multiplicidade, com escalada de precisão

O laplaciano completo é somado em cada ciclo (em vez do truque de uma
coordenada só), então bastam partições não marcadas.
"""
import logging

from apps.elements.cache import cached_factors
from apps.elements.domain import ClassElement, CycleFactors, ElementSums
from apps.gaussians.services import build_pair_form, evaluate_form
from apps.permutations.domain import CycleType, SignMode
from apps.permutations.services import enumerate_classes
from apps.shared.exceptions import InvalidArgumentError, VanishingNormError
from apps.shared.numeric import Field, escalate

logger = logging.getLogger(__name__)

DIMENSIONS = (1, 2, 3)


def _check_dimension(d: int) -> int:
    if d not in DIMENSIONS:
        raise InvalidArgumentError(f"Dimensão deve ser 1, 2 ou 3 (recebido {d!r}).")
    return d


@cached_factors("cycle")
def cycle_factors(k: int, p, q, field: Field = None) -> CycleFactors:
    if k < 1:
        raise InvalidArgumentError(f"Comprimento de ciclo deve ser ≥ 1 (recebido {k}).")
    field = field or Field()
    shift = tuple((i + 1) % k for i in range(k))
    integrals = evaluate_form(build_pair_form(k, p, q, shift, field))

    if k == 1:
        o = field.scalar(1)
    else:
        # π^k se cancela: o_k / o_1^k = (√det A_1)^k / √det A_k
        single = cycle_factors(1, p, q, field)
        o = single.root_det ** k / integrals.root_det

    logger.debug("cycle_factors k=%d p=%s q=%s prec=%d", k, p, q, field.prec)
    return CycleFactors(
        k=k,
        o=o,
        tau=integrals.kinetic_ratio,
        nu=integrals.moment_ratio,
        raw_overlap=integrals.overlap,
        root_det=integrals.root_det,
        coordinate_ratios=integrals.kinetic_coordinates,
        prec=field.prec,
    )


def class_element(cycle_type: CycleType, p, q, d: int, field: Field = None, raw: bool = False) -> ClassElement:
    """
    O = ô^d com ô = ∏ o_k; T = d·O·Σ tau_k; V = d·O·Σ nu_k.
    Com raw=True os overlaps mantêm as potências de π.
    """
    _check_dimension(d)
    field = field or Field()
    factors = [cycle_factors(k, p, q, field) for k in cycle_type]

    per_dimension = field.scalar(1)
    for f in factors:
        per_dimension *= f.raw_overlap if raw else f.o
    O = per_dimension ** d
    tau_sum = field.fsum(f.tau for f in factors)
    nu_sum = field.fsum(f.nu for f in factors)
    return ClassElement(
        cycle_type=cycle_type,
        O=O,
        T=d * O * tau_sum,
        V=d * O * nu_sum,
        tau_sum=tau_sum,
        nu_sum=nu_sum,
        coordinate_ratios=tuple(f.coordinate_ratios[0] for f in factors),
    )


def _sums_at(params, p, classes, field: Field) -> ElementSums:
    terms = []
    weighted_O, weighted_T, weighted_V = [], [], []
    for perm_class in classes:
        element = class_element(perm_class.cycle_type, p, params.q, params.d, field)
        terms.append((perm_class, element))
        weighted_O.append(perm_class.factor * element.O)
        weighted_T.append(perm_class.factor * element.T)
        weighted_V.append(perm_class.factor * element.V)

    O_sum = field.fsum(weighted_O)
    total = field.fsum(abs(v) for v in weighted_O)
    return ElementSums(
        O_sum=O_sum,
        T_sum=field.fsum(weighted_T),
        V_sum=field.fsum(weighted_V),
        condition=abs(O_sum) / total,
        prec=field.prec,
        terms=tuple(terms),
    )


def check_degenerate(params):
    """Com q = 0 o estado não simetrizado é simétrico: a antissimetrização o anula."""
    if params.mode == SignMode.FERMIONIC and params.q == 0 and params.n >= 2:
        raise VanishingNormError(
            f"Estado antissimetrizado nulo para q = 0 e n = {params.n} (modo fermiônico).",
            condition=0.0,
        )


def assemble_sums(params, p, threshold: float = None) -> ElementSums:
    """
    Somas Σ sig·mult·(O, T, V) normalizadas pela classe identidade.

    Se o cancelamento derruba a condição abaixo do limiar, recalcula com mais
    bits (escada COBOSON_PRECISION_LADDER).
    """
    if not p > 0:
        raise InvalidArgumentError(f"p deve ser > 0 (recebido {p}).")
    check_degenerate(params)
    classes = enumerate_classes(params.n, params.mode)
    return escalate(
        lambda field: _sums_at(params, p, classes, field),
        threshold=threshold,
        label=f"somas n={params.n} d={params.d} q={params.q} p={p} {params.mode}",
    )
