"""
Elementos de matriz por classe: overlap, cinética e potencial.

Uso:
    python manage.py elements --n 3 --p 1 --q 1
    python manage.py elements --n 3 --p 1 --q 1 --raw   # com potências de π
"""
from apps.core.exporters import emit
from apps.core.management.base import CobosonCommand
from apps.core.serializers import ElementsFlagsSerializer
from apps.elements.services import class_element
from apps.permutations.services import enumerate_classes, representative_permutation

COLUMNS = (
    "cycle_type", "permutation", "factor",
    "overlap", "kinetic", "potential",
    "kinetic_ratio", "moment_ratio", "kinetic_coordinate",
)


class Command(CobosonCommand):
    help = "Elementos de matriz de cada tipo de ciclo para (n, p, q, d)"
    flags_serializer = ElementsFlagsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--p", type=float, required=True, help="Largura externa: e^{-p x²}")
        parser.add_argument("--q", type=float, required=True, help="Acoplamento do par: e^{-q(a-b)²}")
        parser.add_argument("--d", type=int, default=3, help="Dimensão (1, 2 ou 3)")
        parser.add_argument("--mode", default="fermionic", help="fermionic ou bosonic")
        parser.add_argument("--raw", action="store_true", help="Valores sem normalizar pela identidade")
        self.add_format_argument(parser, ("table", "csv", "json"), "table")

    def handle(self, *args, **options):
        flags = self.validate_flags(options)
        rows = []
        for perm_class in enumerate_classes(flags["n"], flags["mode"]):
            element = class_element(
                perm_class.cycle_type, flags["p"], flags["q"], flags["d"], raw=flags["raw"],
            )
            rows.append({
                "cycle_type": str(perm_class.cycle_type),
                "permutation": " ".join(str(i) for i in representative_permutation(perm_class.cycle_type)),
                "factor": perm_class.factor,
                "overlap": float(element.O),
                "kinetic": float(element.T),
                "potential": float(element.V),
                "kinetic_ratio": float(element.tau_sum),
                "moment_ratio": float(element.nu_sum),
                # coordenada a_1: o maior ciclo do representante contém o índice 0
                "kinetic_coordinate": float(element.coordinate_ratios[0]),
            })
        emit(rows, COLUMNS, flags["format"], self.stdout)
