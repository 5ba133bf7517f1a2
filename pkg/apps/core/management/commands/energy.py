"""
Energia de um ponto (n, d, q), com p fixo ou otimizado.

Uso:
    python manage.py energy --n 1 --d 3 --q 0 --optimize
    python manage.py energy --n 2 --d 3 --internal-width 1 --optimize --format csv
"""
from apps.core.exporters import output_records, render_json, write_csv
from apps.core.management.base import CobosonCommand
from apps.core.serializers import OUTPUT_COLUMNS, EnergyFlagsSerializer
from apps.energy.domain import ModelParams
from apps.energy.services import evaluate_at, optimize_width


class Command(CobosonCommand):
    help = "Energia variacional do estado fundamental para um ponto"
    flags_serializer = EnergyFlagsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--d", type=int, default=3)
        coupling = parser.add_mutually_exclusive_group()
        coupling.add_argument("--q", type=float, help="Acoplamento do par")
        coupling.add_argument("--internal-width", type=float, help="Largura interna 1/√q")
        width = parser.add_mutually_exclusive_group()
        width.add_argument("--p", type=float, help="Largura externa fixa")
        width.add_argument("--optimize", action="store_true", help="Minimiza a energia em p")
        parser.add_argument("--mode", default="fermionic", help="fermionic ou bosonic")
        self.add_format_argument(parser, ("csv", "json"), "json")

    def handle(self, *args, **options):
        flags = self.validate_flags(options)
        params = ModelParams(n=flags["n"], d=flags["d"], q=flags["q"], mode=flags["mode"])
        if flags["optimize"]:
            report = optimize_width(params)
        else:
            report = evaluate_at(params, flags["p"])

        record = output_records([report])[0]
        if flags["format"] == "csv":
            write_csv([record], OUTPUT_COLUMNS, self.stdout)
        else:
            self.stdout.write(render_json(record))
