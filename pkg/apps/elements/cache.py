"""
Cache dos fatores de ciclo.

Usa o cache framework do Django (locmem é thread-safe, então threads da
varredura compartilham os fatores). Chave: (k, p, q, precisão).

Valores mpmath são guardados como a tupla _mpf_ e reconstruídos no
contexto de quem lê, para não carregar o contexto de outra thread.
"""
import dataclasses
import logging
from functools import wraps

from django.conf import settings
from django.core.cache import cache

from apps.elements.domain import CycleFactors
from apps.shared.numeric import Field

logger = logging.getLogger(__name__)

DEFAULT_TTL = 3600


def _scalar_key(value) -> str:
    if hasattr(value, "_mpf_"):
        return "mp" + repr(value._mpf_)
    return float(value).hex()


def _make_key(prefix: str, k: int, p, q, prec: int) -> str:
    return f"elements:{prefix}:k:{k}:p:{_scalar_key(p)}:q:{_scalar_key(q)}:prec:{prec}"


def _freeze(factors: CycleFactors):
    if factors.prec <= 53:
        return factors
    pack = lambda v: v._mpf_
    return dataclasses.replace(
        factors,
        o=pack(factors.o),
        tau=pack(factors.tau),
        nu=pack(factors.nu),
        raw_overlap=pack(factors.raw_overlap),
        root_det=pack(factors.root_det),
        coordinate_ratios=tuple(pack(v) for v in factors.coordinate_ratios),
    )


def _thaw(frozen: CycleFactors, field: Field) -> CycleFactors:
    if field.is_binary64:
        return frozen
    unpack = field.ctx.make_mpf
    return dataclasses.replace(
        frozen,
        o=unpack(frozen.o),
        tau=unpack(frozen.tau),
        nu=unpack(frozen.nu),
        raw_overlap=unpack(frozen.raw_overlap),
        root_det=unpack(frozen.root_det),
        coordinate_ratios=tuple(unpack(v) for v in frozen.coordinate_ratios),
    )


def cached_factors(prefix: str, ttl: int = None):
    """
    Decorator para funções f(k, p, q, field=None) -> CycleFactors.

    Uso:
        @cached_factors("cycle")
        def cycle_factors(k, p, q, field=None):
            ...
    """
    def decorator(func):
        @wraps(func)
        def wrapper(k, p, q, field: Field = None):
            field = field or Field()
            key = _make_key(prefix, k, p, q, field.prec)
            hit = cache.get(key)
            if hit is not None:
                return _thaw(hit, field)
            result = func(k, p, q, field)
            timeout = ttl if ttl is not None else getattr(settings, "COBOSON_FACTOR_CACHE_TTL", DEFAULT_TTL)
            try:
                cache.set(key, _freeze(result), timeout)
            except Exception as exc:
                logger.warning("Cache set failed for %s: %s", key, exc)
            return result
        return wrapper
    return decorator
