"""
Base dos comandos: validação de flags por serializer e tradução de erros do
domínio em códigos de saída.

    0 sucesso · 1 verificação falhou · 2 uso inválido · 3 falha numérica
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from apps.shared.exceptions import CobosonError, NumericalError

logger = logging.getLogger(__name__)

EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _flatten(detail, prefix="") -> list:
    if isinstance(detail, dict):
        messages = []
        for key, value in detail.items():
            label = "" if key == "non_field_errors" else f"--{key.replace('_', '-')}: "
            messages.extend(_flatten(value, label))
        return messages
    if isinstance(detail, (list, tuple)):
        return [m for item in detail for m in _flatten(item, prefix)]
    return [f"{prefix}{detail}"]


class CobosonCommand(BaseCommand):
    flags_serializer = None

    def add_format_argument(self, parser, choices, default):
        parser.add_argument("--format", choices=choices, default=default, help="Formato da saída")

    def validate_flags(self, options) -> dict:
        fields = self.flags_serializer().fields
        data = {k: v for k, v in options.items() if k in fields and v is not None}
        serializer = self.flags_serializer(data=data)
        if not serializer.is_valid():
            raise CommandError("; ".join(_flatten(serializer.errors)), returncode=EXIT_USAGE)
        return serializer.validated_data

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except NumericalError as exc:
            logger.error("%s: %s", type(exc).__name__, exc)
            raise CommandError(str(exc), returncode=EXIT_NUMERICAL)
        except CobosonError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
