"""
Parsers de listas e intervalos vindos da linha de comando.

Uso:
    from apps.core.validators import parse_int_range, parse_float_list
    parse_int_range("1..8")      → [1, 2, 3, 4, 5, 6, 7, 8]
    parse_int_range("1,3,5")     → [1, 3, 5]
    parse_float_list("0.5,1,2")  → [0.5, 1.0, 2.0]

Erros levantam django ValidationError com `code`, que os serializers
repassam como mensagem de uso.
"""
import math
import re

from django.core.exceptions import ValidationError

_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def _items(value: str) -> list:
    return [item.strip() for item in str(value).split(",") if item.strip()]


def parse_int_range(value) -> list:
    """Aceita "a..b" (inclusivo), "a,b,c" ou um inteiro só."""
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    match = _RANGE.match(str(value))
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise ValidationError(
                "Intervalo vazio: %(value)s",
                params={"value": value},
                code="empty_range",
            )
        return list(range(low, high + 1))

    result = []
    for item in _items(value):
        try:
            result.append(int(item))
        except ValueError:
            raise ValidationError(
                "Inteiro inválido: %(item)s",
                params={"item": item},
                code="invalid_int",
            )
    return result


def parse_float_list(value) -> list:
    """Lista separada por vírgulas de reais finitos."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        items = [value]
    else:
        items = _items(value)

    result = []
    for item in items:
        try:
            number = float(item)
        except ValueError:
            raise ValidationError(
                "Número inválido: %(item)s",
                params={"item": item},
                code="invalid_float",
            )
        if not math.isfinite(number):
            raise ValidationError(
                "Valor não finito: %(item)s",
                params={"item": item},
                code="not_finite",
            )
        result.append(number)
    return result


def width_to_q(width: float) -> float:
    """Largura interna 1/√q → q."""
    if not width > 0:
        raise ValidationError(
            "Largura interna deve ser > 0 (recebido %(value)s); use --q 0 para pares livres.",
            params={"value": width},
            code="invalid_width",
        )
    return 1.0 / (width * width)
