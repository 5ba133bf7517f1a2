from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class PermutationTerm:
    perm: tuple
    sign: int
    O: Any
    T: Any
    V: Any
    kinetic_first: Any  # cinética/overlap só da coordenada a_1, uma dimensão


@dataclass(frozen=True)
class BruteForceSums:
    O_sum: Any
    T_sum: Any
    V_sum: Any
    condition: Any
    prec: int
    terms: tuple = ()


@dataclass(frozen=True)
class OracleReport:
    O_sum: Any
    T_sum: Any
    V_sum: Any
    deltas: dict
    passed: bool
    prec: int
    terms: tuple = ()

    @property
    def max_delta(self) -> float:
        return max(self.deltas.values())


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CrossCheckSummary:
    seed: int
    trials: int
    tol: float
    entries: list = field(default_factory=list)   # dicts n/mode/max_delta/failures
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(e["max_delta"] <= self.tol for e in self.entries)
