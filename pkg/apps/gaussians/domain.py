from dataclasses import dataclass
from typing import Any

from apps.shared.numeric import Field


@dataclass(frozen=True)
class PairForm:
    """
    Integrando exp(−xᵀBx)·exp(−xᵀCx) em uma dimensão espacial.

    Variáveis ordenadas a_1…a_n, b_1…b_n. B é o bra ψ(a, P(b)) e C o ket
    ψ(a, b), sempre na ordem identidade.
    """
    B: Any
    C: Any
    field: Field

    @property
    def size(self) -> int:
        return self.B.shape[0] if self.field.is_binary64 else self.B.rows

    @property
    def combined(self):
        """A = B + C."""
        return self.B + self.C

    @classmethod
    def from_combined(cls, A, field: Field = None):
        """Divide A igualmente entre bra e ket (útil para integrais de uma forma só)."""
        field = field or Field()
        A = field.matrix(A)
        half = A * field.scalar(0.5)
        return cls(B=half, C=half, field=field)


@dataclass(frozen=True)
class FormIntegrals:
    root_det: Any               # √det(A)
    overlap: Any                # π^{N/2}/√det(A)
    moment_ratio: Any           # Σ⟨x_k²⟩ = tr(A⁻¹)/2
    kinetic_ratio: Any          # Σ_k [2C_kk − 2(CA⁻¹C)_kk]
    kinetic_coordinates: tuple  # termos da soma acima, um por coordenada
