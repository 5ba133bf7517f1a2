"""
Compara a grade calculada com uma tabela de referência em CSV.

Uso:
    python manage.py compare --reference apps/energy/fixtures/reference_unit_width.csv \
        --n 1..8 --d 3 --width 1

O CSV de referência precisa da coluna n e de qualquer subconjunto de
E, width, E_per_boson, E_external_per_boson.
"""
import csv

from django.core.management.base import CommandError

from apps.core.exporters import emit
from apps.core.management.base import EXIT_USAGE, CobosonCommand
from apps.core.management.commands.sweep import add_grid_arguments
from apps.core.serializers import CompareFlagsSerializer
from apps.energy.services import COMPARED_FIELDS, compare_with_reference, sweep

COLUMNS = ("n", "error") + tuple(
    f"{name}_{suffix}"
    for name in COMPARED_FIELDS
    for suffix in ("computed", "reference", "delta", "relative")
)


def read_reference(path) -> list:
    try:
        with open(path, encoding="utf-8", newline="") as stream:
            rows = list(csv.DictReader(stream))
    except OSError as exc:
        raise CommandError(f"Não foi possível ler {path}: {exc}", returncode=EXIT_USAGE)
    if not rows or "n" not in rows[0]:
        raise CommandError(f"{path}: CSV sem coluna n ou sem linhas.", returncode=EXIT_USAGE)
    return rows


class Command(CobosonCommand):
    help = "Tabela lado a lado: calculado × referência, com desvios absolutos e relativos"
    flags_serializer = CompareFlagsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--reference", required=True, help="CSV com os valores de referência")
        add_grid_arguments(parser)
        self.add_format_argument(parser, ("csv", "json"), "csv")

    def handle(self, *args, **options):
        flags = self.validate_flags(options)
        reference = read_reference(flags["reference"])
        reports = sweep(flags["n"], flags["d"], flags["q_list"], flags["mode"], jobs=flags["jobs"])
        rows = compare_with_reference(reports, reference)
        emit(rows, COLUMNS, flags["format"], self.stdout)
