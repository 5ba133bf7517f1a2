"""
Aritmética real de precisão configurável.

binary64 (53 bits) roda em float/numpy. Acima disso cada cálculo recebe um
MPContext próprio do mpmath: a precisão nunca é estado global, então threads
diferentes podem trabalhar em precisões diferentes ao mesmo tempo.

Uso:
    field = Field(256)
    p = field.scalar(0.5)
    field.sqrt(p)
"""
import logging
import math

import mpmath
import numpy as np
from django.conf import settings

from apps.shared.exceptions import InvalidArgumentError, VanishingNormError

logger = logging.getLogger(__name__)

BINARY64 = 53
DEFAULT_LADDER = (53, 128, 256, 512, 1024)
DEFAULT_CONDITION_THRESHOLD = 1e-8


class Field:
    """Corpo real de trabalho numa precisão fixa (bits de significando)."""

    def __init__(self, prec: int = BINARY64):
        if prec < BINARY64:
            raise InvalidArgumentError(f"Precisão mínima é {BINARY64} bits (recebido {prec}).")
        self.prec = int(prec)
        self._ctx = None
        if self.prec > BINARY64:
            self._ctx = mpmath.MPContext()
            self._ctx.prec = self.prec

    def __repr__(self):
        return f"Field(prec={self.prec})"

    @property
    def is_binary64(self) -> bool:
        return self._ctx is None

    @property
    def ctx(self):
        return self._ctx

    # ── escalares ────────────────────────────────────────────────────────────

    def scalar(self, value):
        if self._ctx is None:
            return float(value)
        return self._ctx.mpf(value)

    def pi(self):
        return math.pi if self._ctx is None else +self._ctx.pi

    def sqrt(self, x):
        return math.sqrt(x) if self._ctx is None else self._ctx.sqrt(x)

    def exp(self, x):
        return math.exp(x) if self._ctx is None else self._ctx.exp(x)

    def fsum(self, values):
        values = list(values)
        if self._ctx is None:
            return math.fsum(values)
        return self._ctx.fsum(values)

    # ── matrizes ─────────────────────────────────────────────────────────────

    def matrix(self, rows):
        if self._ctx is None:
            return np.array(rows, dtype=float)
        return self._ctx.matrix(rows)

    def zeros(self, size: int):
        if self._ctx is None:
            return np.zeros((size, size))
        return self._ctx.zeros(size, size)


def condition_threshold() -> float:
    return float(getattr(settings, "COBOSON_CONDITION_THRESHOLD", DEFAULT_CONDITION_THRESHOLD))


def precision_ladder() -> tuple:
    return tuple(getattr(settings, "COBOSON_PRECISION_LADDER", DEFAULT_LADDER))


def accepts(condition, prec: int, threshold: float) -> bool:
    """
    Um resultado calculado com `prec` bits é aceito se ainda sobra, depois do
    cancelamento, a mesma margem que `threshold` garante em binary64.
    """
    condition = float(condition)
    if not condition > 0.0:
        return False
    return condition >= threshold * 2.0 ** (BINARY64 - prec)


def escalate(compute, *, threshold: float = None, label: str = ""):
    """
    Executa `compute(field)` subindo a escada de precisões até o resultado
    ficar estável. `compute` devolve um objeto com atributo `condition`.

    Esgotada a escada, a soma é considerada nula: VanishingNormError.
    """
    if threshold is None:
        threshold = condition_threshold()
    last = None
    for prec in precision_ladder():
        result = compute(Field(prec))
        if accepts(result.condition, prec, threshold):
            if prec > BINARY64:
                logger.info("%s aceito com %d bits (condition=%.3e)", label, prec, float(result.condition))
            return result
        last = result
        logger.info(
            "%s: cancelamento com %d bits (condition=%.3e), escalando precisão",
            label, prec, float(result.condition),
        )
    raise VanishingNormError(
        f"{label}: norma indistinguível de zero na precisão máxima "
        f"(condition={float(last.condition):.3e}).",
        condition=float(last.condition),
    )
