import math
from dataclasses import dataclass
from typing import Optional

from apps.permutations.domain import SignMode
from apps.shared.exceptions import InvalidArgumentError


@dataclass(frozen=True)
class ModelParams:
    """
    n pares por espécie em d dimensões, ligados por e^{−q(a−b)²}.
    Massas m = 1/2, ħ = 1 e ω = 2 são fixos.
    """
    n: int
    d: int
    q: float
    mode: str = SignMode.FERMIONIC

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidArgumentError(f"n deve ser inteiro ≥ 1 (recebido {self.n!r}).")
        if self.d not in (1, 2, 3):
            raise InvalidArgumentError(f"d deve ser 1, 2 ou 3 (recebido {self.d!r}).")
        q = float(self.q)
        if not (q >= 0 and math.isfinite(q)):
            raise InvalidArgumentError(f"q deve ser finito e ≥ 0 (recebido {self.q!r}).")
        if self.mode not in SignMode.values:
            raise InvalidArgumentError(f"Modo desconhecido: {self.mode!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "mode", SignMode(self.mode))

    @property
    def internal_width(self) -> float:
        return math.inf if self.q == 0 else 1.0 / math.sqrt(self.q)


@dataclass(frozen=True)
class EnergyReport:
    params: ModelParams
    p_star: Optional[float] = None
    width: Optional[float] = None
    E: Optional[float] = None
    E_per_boson: Optional[float] = None
    E_internal_per_boson: Optional[float] = None
    E_external_per_boson: Optional[float] = None
    E_fermion_ref: Optional[float] = None
    E_boson_ref: Optional[float] = None
    mu: Optional[float] = None
    converged: bool = False
    condition: Optional[float] = None
    evaluations: int = 0
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error
