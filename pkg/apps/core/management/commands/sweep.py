"""
Varredura de energias otimizadas numa grade (q, n).

Uso:
    python manage.py sweep --n 1..8 --d 3 --width 1 --out t3.csv
    python manage.py sweep --n 1..4 --d 1 --width 0.5,1,2 --format json
    python manage.py sweep --n 1..6 --q 0.25,1,4 --out grade.xlsx --format xlsx --jobs 4
"""
from django.core.management.base import CommandError

from apps.core.exporters import emit, output_records, write_xlsx
from apps.core.management.base import EXIT_USAGE, CobosonCommand
from apps.core.serializers import OUTPUT_COLUMNS, SweepFlagsSerializer
from apps.energy.services import sweep


def add_grid_arguments(parser):
    parser.add_argument("--n", required=True, help='Intervalo "1..8" ou lista "1,2,4"')
    parser.add_argument("--d", type=int, default=3)
    coupling = parser.add_mutually_exclusive_group()
    coupling.add_argument("--q", help='Lista de acoplamentos "0.25,1,4"')
    coupling.add_argument("--width", help='Lista de larguras internas 1/√q "0.5,1,2"')
    parser.add_argument("--mode", default="fermionic", help="fermionic ou bosonic")
    parser.add_argument("--jobs", type=int, help="Threads (padrão: CPUs disponíveis)")


class Command(CobosonCommand):
    help = "Energias otimizadas para cada ponto da grade (q externo, n interno)"
    flags_serializer = SweepFlagsSerializer

    def add_arguments(self, parser):
        add_grid_arguments(parser)
        parser.add_argument("--out", help="Arquivo de saída (padrão: stdout)")
        self.add_format_argument(parser, ("csv", "json", "xlsx"), "csv")

    def handle(self, *args, **options):
        flags = self.validate_flags(options)
        out = flags.get("out")
        if out:
            # falha de escrita é erro de uso, detectado antes do cálculo
            try:
                with open(out, "w", encoding="utf-8"):
                    pass
            except OSError as exc:
                raise CommandError(f"Não foi possível escrever em {out}: {exc}", returncode=EXIT_USAGE)

        reports = sweep(flags["n"], flags["d"], flags["q_list"], flags["mode"], jobs=flags["jobs"])
        for report in reports:
            if not report.ok:
                self.stderr.write(f"n={report.params.n} q={report.params.q!r}: {report.error}")
        records = output_records(reports)

        if flags["format"] == "xlsx":
            write_xlsx(records, OUTPUT_COLUMNS, out)
        elif out:
            with open(out, "w", encoding="utf-8", newline="") as stream:
                emit(records, OUTPUT_COLUMNS, flags["format"], stream)
        else:
            emit(records, OUTPUT_COLUMNS, flags["format"], self.stdout)
