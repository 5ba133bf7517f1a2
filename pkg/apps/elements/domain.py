from dataclasses import dataclass
from typing import Any

from apps.permutations.domain import CycleType


@dataclass(frozen=True)
class CycleFactors:
    """
    Fatores de uma cadeia fechada de comprimento k, por dimensão espacial.

    o é normalizado pela k-ésima potência do overlap do ciclo unitário;
    raw_overlap guarda o valor com as potências de π.
    """
    k: int
    o: Any
    tau: Any
    nu: Any
    raw_overlap: Any
    root_det: Any
    coordinate_ratios: tuple
    prec: int


@dataclass(frozen=True)
class ClassElement:
    cycle_type: CycleType
    O: Any
    T: Any
    V: Any
    tau_sum: Any
    nu_sum: Any
    coordinate_ratios: tuple  # cinética/overlap por coordenada, um valor por ciclo


@dataclass(frozen=True)
class ElementSums:
    O_sum: Any
    T_sum: Any
    V_sum: Any
    condition: Any
    prec: int
    terms: tuple = ()  # (PermClass, ClassElement) na ordem das classes
