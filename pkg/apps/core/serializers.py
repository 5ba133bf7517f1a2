import math

from django.conf import settings
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from apps.core.validators import parse_float_list, parse_int_range, width_to_q
from apps.elements.services import DIMENSIONS
from apps.energy.services import default_jobs
from apps.permutations.domain import SignMode

FORMATS = ("table", "csv", "json")


def _as_drf(exc: DjangoValidationError) -> serializers.ValidationError:
    return serializers.ValidationError(exc.messages)


class IntRangeField(serializers.Field):
    """"1..8", "1,3,5" ou um inteiro → lista de inteiros."""

    def __init__(self, *, min_value=1, max_value=None, **kwargs):
        self.min_value = min_value
        self.max_value = max_value
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        try:
            values = parse_int_range(data)
        except DjangoValidationError as exc:
            raise _as_drf(exc)
        for value in values:
            if value < self.min_value or (self.max_value is not None and value > self.max_value):
                raise serializers.ValidationError(
                    f"Valor {value} fora de [{self.min_value}, {self.max_value or '∞'}]."
                )
        return values

    def to_representation(self, value):
        return ",".join(str(v) for v in value)


class FloatListField(serializers.Field):
    def to_internal_value(self, data):
        try:
            return parse_float_list(data)
        except DjangoValidationError as exc:
            raise _as_drf(exc)

    def to_representation(self, value):
        return ",".join(repr(v) for v in value)


# ─────────────────────────────────────────────────────────────────────────────
# Flags por comando
# ─────────────────────────────────────────────────────────────────────────────

class CouplingMixin:
    """Exatamente um de q / largura interna; converte largura em q."""

    def _resolve_q(self, attrs, q_key="q", width_key="internal_width"):
        q, width = attrs.pop(q_key, None), attrs.pop(width_key, None)
        if (q is None) == (width is None):
            raise serializers.ValidationError("Informe exatamente um de --q ou --internal-width.")
        if width is not None:
            try:
                q = width_to_q(width)
            except DjangoValidationError as exc:
                raise _as_drf(exc)
        attrs["q"] = q
        return attrs


class ClassesFlagsSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    marked = serializers.BooleanField(default=False)
    mode = serializers.ChoiceField(choices=SignMode.choices, default=SignMode.FERMIONIC)
    format = serializers.ChoiceField(choices=FORMATS, default="table")


class ElementsFlagsSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    p = serializers.FloatField()
    q = serializers.FloatField(min_value=0)
    d = serializers.ChoiceField(choices=DIMENSIONS, default=3)
    mode = serializers.ChoiceField(choices=SignMode.choices, default=SignMode.FERMIONIC)
    raw = serializers.BooleanField(default=False)
    format = serializers.ChoiceField(choices=FORMATS, default="table")

    def validate_p(self, value):
        if not value > 0:
            raise serializers.ValidationError("p deve ser > 0.")
        return value


class EnergyFlagsSerializer(CouplingMixin, serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    d = serializers.ChoiceField(choices=DIMENSIONS, default=3)
    q = serializers.FloatField(min_value=0, required=False, allow_null=True)
    internal_width = serializers.FloatField(required=False, allow_null=True)
    p = serializers.FloatField(required=False, allow_null=True)
    optimize = serializers.BooleanField(default=False)
    mode = serializers.ChoiceField(choices=SignMode.choices, default=SignMode.FERMIONIC)
    format = serializers.ChoiceField(choices=("csv", "json"), default="json")

    def validate(self, attrs):
        attrs = self._resolve_q(attrs)
        p, optimize = attrs.get("p"), attrs.get("optimize")
        if (p is None) == (not optimize):
            raise serializers.ValidationError("Informe exatamente um de --p ou --optimize.")
        if p is not None and not p > 0:
            raise serializers.ValidationError({"p": "p deve ser > 0."})
        return attrs


class GridFlagsSerializer(serializers.Serializer):
    """Grade (n, q) de sweep e compare."""
    n = IntRangeField(min_value=1)
    d = serializers.ChoiceField(choices=DIMENSIONS, default=3)
    q = FloatListField(required=False, allow_null=True)
    width = FloatListField(required=False, allow_null=True)
    mode = serializers.ChoiceField(choices=SignMode.choices, default=SignMode.FERMIONIC)
    jobs = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate(self, attrs):
        q_list, widths = attrs.pop("q", None), attrs.pop("width", None)
        if (q_list is None) == (widths is None):
            raise serializers.ValidationError("Informe exatamente um de --q ou --width.")
        if q_list is not None:
            if any(q < 0 for q in q_list):
                raise serializers.ValidationError({"q": "q deve ser ≥ 0."})
        else:
            try:
                q_list = [width_to_q(w) for w in widths]
            except DjangoValidationError as exc:
                raise _as_drf(exc)
        if not q_list:
            raise serializers.ValidationError("Lista de acoplamentos vazia.")
        if not attrs["n"]:
            raise serializers.ValidationError({"n": "Lista de n vazia."})
        attrs["q_list"] = q_list
        attrs["jobs"] = attrs.get("jobs") or default_jobs()
        return attrs


class SweepFlagsSerializer(GridFlagsSerializer):
    out = serializers.CharField(required=False, allow_null=True, allow_blank=False)
    format = serializers.ChoiceField(choices=("csv", "json", "xlsx"), default="csv")

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs["format"] == "xlsx" and not attrs.get("out"):
            raise serializers.ValidationError({"out": "O formato xlsx exige --out."})
        return attrs


class CompareFlagsSerializer(GridFlagsSerializer):
    reference = serializers.CharField()
    format = serializers.ChoiceField(choices=("csv", "json"), default="csv")


class VerifyFlagsSerializer(serializers.Serializer):
    n_max = serializers.IntegerField(min_value=1)
    trials = serializers.IntegerField(min_value=0)
    tol = serializers.FloatField()
    seed = serializers.IntegerField(min_value=0)

    def validate_n_max(self, value):
        limit = getattr(settings, "COBOSON_ORACLE_MAX_N", 6)
        if value > limit:
            raise serializers.ValidationError(f"O oráculo aceita n ≤ {limit}.")
        return value

    def validate_tol(self, value):
        if not (value > 0 and math.isfinite(value)):
            raise serializers.ValidationError("tol deve ser > 0.")
        return value


# ─────────────────────────────────────────────────────────────────────────────
# OutputRecord
# ─────────────────────────────────────────────────────────────────────────────

class OutputRecordSerializer(serializers.Serializer):
    """Um EnergyReport achatado; a ordem dos campos é a das colunas do CSV."""
    n = serializers.IntegerField(source="params.n")
    d = serializers.IntegerField(source="params.d")
    q = serializers.FloatField(source="params.q")
    internal_width = serializers.SerializerMethodField()
    mode = serializers.CharField(source="params.mode")
    p_star = serializers.FloatField()
    width = serializers.FloatField()
    E = serializers.FloatField()
    E_per_boson = serializers.FloatField()
    E_internal_per_boson = serializers.FloatField()
    E_external_per_boson = serializers.FloatField()
    E_fermion_ref = serializers.FloatField()
    E_boson_ref = serializers.FloatField()
    mu = serializers.FloatField()
    converged = serializers.BooleanField()
    condition = serializers.FloatField()

    def get_internal_width(self, report):
        width = report.params.internal_width
        return "inf" if math.isinf(width) else width


OUTPUT_COLUMNS = tuple(OutputRecordSerializer().fields)
