"""
SERVICES: classes de equivalência da permutação dos b.

  - enumerate_cycle_types      → partições de n (uma por classe de conjugação)
  - class_weight               → multiplicidade n!/∏ k^{m_k} m_k! e assinatura
  - count_marked_partitions    → contagem de elementos de matriz com a_1 marcado
  - enumerate_permutations     → todas as n! permutações (apenas escala de oráculo)
"""
import itertools
import logging
import math
from functools import lru_cache

from django.conf import settings

from apps.permutations.domain import CycleType, PermClass, SignMode
from apps.shared.exceptions import InvalidArgumentError, ResourceLimitError

logger = logging.getLogger(__name__)


def _check_count(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidArgumentError(f"n deve ser inteiro (recebido {n!r}).")
    if n < 1:
        raise InvalidArgumentError(f"n deve ser ≥ 1 (recebido {n}).")
    return n


# ═══════════════════════════════════════════════════════════════════════════════
# Partições
# ═══════════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def _partition_count(n: int, max_part: int) -> int:
    if n == 0:
        return 1
    return sum(_partition_count(n - k, k) for k in range(1, min(n, max_part) + 1))


def partition_count(n: int) -> int:
    """p(n), com p(0) = 1."""
    if n < 0:
        raise InvalidArgumentError(f"p(n) indefinido para n = {n}.")
    return _partition_count(n, n)


def _partitions(n: int, max_part: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_cycle_types(n: int) -> list:
    """Tipos de ciclo de S_n, do ciclo único [n] até a identidade [1,…,1]."""
    _check_count(n)
    return [CycleType(parts) for parts in _partitions(n, n)]


def class_weight(cycle_type: CycleType, mode: str = SignMode.FERMIONIC) -> tuple:
    """(multiplicidade, assinatura) da classe."""
    n = cycle_type.n
    denominator = 1
    for k, m in cycle_type.counts().items():
        denominator *= k ** m * math.factorial(m)
    multiplicity = math.factorial(n) // denominator

    if mode == SignMode.BOSONIC:
        return multiplicity, 1
    if mode != SignMode.FERMIONIC:
        raise InvalidArgumentError(f"Modo de sinal desconhecido: {mode!r}")
    signature = -1 if (n - len(cycle_type)) % 2 else 1
    return multiplicity, signature


def enumerate_classes(n: int, mode: str = SignMode.FERMIONIC) -> list:
    classes = []
    for cycle_type in enumerate_cycle_types(n):
        multiplicity, signature = class_weight(cycle_type, mode)
        classes.append(PermClass(cycle_type, multiplicity, signature))
    return classes


def count_marked_partitions(n: int) -> int:
    """
    Número de elementos de matriz quando o laplaciano atua só em a_1:
    comprimento do ciclo que contém a_1 × partição do resto.
    """
    _check_count(n)
    return sum(partition_count(n - k) for k in range(1, n + 1))


# ═══════════════════════════════════════════════════════════════════════════════
# Permutações explícitas
# ═══════════════════════════════════════════════════════════════════════════════

def enumerate_permutations(n: int) -> list:
    """Todas as n! permutações de range(n), em ordem lexicográfica."""
    _check_count(n)
    limit = getattr(settings, "COBOSON_PERMUTATION_MAX_N", 8)
    if n > limit:
        raise ResourceLimitError(f"Enumeração explícita limitada a n ≤ {limit} (recebido {n}).")
    return list(itertools.permutations(range(n)))


def validate_permutation(perm, n: int = None) -> tuple:
    perm = tuple(int(i) for i in perm)
    size = len(perm) if n is None else n
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise InvalidArgumentError(f"Permutação inválida de {size} índices: {perm!r}")
    return perm


def cycle_type_of(perm) -> CycleType:
    """Segue as cadeias i → perm[i] até fechar cada ciclo."""
    perm = validate_permutation(perm)
    if not perm:
        raise InvalidArgumentError("Permutação vazia.")
    edges = dict(enumerate(perm))
    lengths = []
    while edges:
        i, j = edges.popitem()
        length = 1
        while j != i:
            length += 1
            j = edges.pop(j)
        lengths.append(length)
    return CycleType(tuple(lengths))


def permutation_sign(perm) -> int:
    """Paridade pela contagem de inversões (não usa a decomposição em ciclos)."""
    perm = validate_permutation(perm)
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def representative_permutation(cycle_type: CycleType) -> tuple:
    """Permutação do tipo dado com cada ciclo em um bloco consecutivo de índices."""
    perm = []
    start = 0
    for k in cycle_type:
        perm.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple(perm)
