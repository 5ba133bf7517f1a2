"""
Classes de permutação (tipos de ciclo) de n pares.

Uso:
    python manage.py classes --n 3
    python manage.py classes --n 10 --marked
"""
from apps.core.exporters import emit
from apps.core.management.base import CobosonCommand
from apps.core.serializers import ClassesFlagsSerializer
from apps.permutations.services import count_marked_partitions, enumerate_classes, partition_count


class Command(CobosonCommand):
    help = "Lista tipos de ciclo com multiplicidade e assinatura, ou a contagem de elementos de matriz"
    flags_serializer = ClassesFlagsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Número de pares")
        parser.add_argument(
            "--marked",
            action="store_true",
            help="Conta partições com o ciclo de a_1 marcado, para n = 1..N",
        )
        parser.add_argument("--mode", default="fermionic", help="fermionic ou bosonic")
        self.add_format_argument(parser, ("table", "csv", "json"), "table")

    def handle(self, *args, **options):
        flags = self.validate_flags(options)
        n = flags["n"]

        if flags["marked"]:
            columns = ("n", "partitions", "marked_count")
            rows = [
                {"n": m, "partitions": partition_count(m), "marked_count": count_marked_partitions(m)}
                for m in range(1, n + 1)
            ]
        else:
            columns = ("cycle_type", "multiplicity", "signature", "factor")
            rows = [
                {
                    "cycle_type": str(c.cycle_type),
                    "multiplicity": c.multiplicity,
                    "signature": c.signature,
                    "factor": c.factor,
                }
                for c in enumerate_classes(n, flags["mode"])
            ]
        emit(rows, columns, flags["format"], self.stdout)
