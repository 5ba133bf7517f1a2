from collections import Counter
from dataclasses import dataclass

from django.db import models

from apps.shared.exceptions import InvalidArgumentError


class SignMode(models.TextChoices):
    FERMIONIC = "fermionic", "Fermiônico"
    BOSONIC = "bosonic", "Bosônico"


@dataclass(frozen=True)
class CycleType:
    """
    Partição inteira de n: comprimentos dos ciclos da permutação dos b.

    Cada ciclo de comprimento k é uma cadeia fechada a−b−a−…−a no integrando.
    As partes ficam sempre em ordem não crescente, então tipos iguais
    comparam iguais.
    """
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(k) for k in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise InvalidArgumentError(f"Tipo de ciclo inválido: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def counts(self) -> dict:
        """{k: m_k}: quantos ciclos de cada comprimento."""
        return dict(Counter(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "[" + ",".join(str(k) for k in self.parts) + "]"


@dataclass(frozen=True)
class PermClass:
    cycle_type: CycleType
    multiplicity: int
    signature: int

    @property
    def factor(self) -> int:
        """Coluna "Factor": multiplicidade com o sinal da assinatura."""
        return self.signature * self.multiplicity
