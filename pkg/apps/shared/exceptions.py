"""
Hierarquia de erros do cálculo de bósons compostos.

Toda falha do domínio herda de CobosonError. As falhas numéricas herdam de
NumericalError para que a CLI traduza tudo em um único ponto (exit code 3).
"""


class CobosonError(Exception):
    """Erro genérico do domínio."""


class InvalidArgumentError(CobosonError, ValueError):
    """Parâmetro fora do domínio da operação."""


class ResourceLimitError(CobosonError):
    """Pedido acima do limite prático (n! permutações explícitas, etc.)."""


class NumericalError(CobosonError, ArithmeticError):
    """Base das falhas numéricas. `condition` guarda a última condição medida, quando houver."""

    def __init__(self, message: str = "", condition: float = None):
        super().__init__(message)
        self.condition = condition


class DivergentIntegralError(NumericalError):
    """Forma quadrática não é positiva definida: a integral diverge."""


class VanishingNormError(NumericalError):
    """A norma do estado (anti)simetrizado é indistinguível de zero."""


class NoBracketError(NumericalError):
    """A varredura grossa não encontrou mínimo interior."""


class UndefinedMuError(NumericalError):
    """Referências de férmion e bóson coincidem: μ não está definido."""
