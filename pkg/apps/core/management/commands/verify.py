"""
Confere o motor por classes contra a enumeração explícita das n!
permutações e contra os valores fechados conhecidos.

Uso:
    python manage.py verify --n-max 3 --trials 5 --tol 1e-10 --seed 7

Sai com código 1 se qualquer conferência falhar.
"""
from django.core.management.base import CommandError

from apps.core.management.base import EXIT_VERIFICATION, CobosonCommand
from apps.core.serializers import VerifyFlagsSerializer
from apps.oracle.services import cross_check, golden_checks


class Command(CobosonCommand):
    help = "Verificação cruzada oráculo × motor e valores de referência fechados"
    flags_serializer = VerifyFlagsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--n-max", type=int, default=6)
        parser.add_argument("--trials", type=int, default=20)
        parser.add_argument("--tol", type=float, default=1e-10)
        parser.add_argument("--seed", type=int, default=0)

    def handle(self, *args, **options):
        flags = self.validate_flags(options)
        failures = 0

        for check in golden_checks():
            if not check.passed:
                failures += 1
                self.stdout.write(f"FALHA {check.name}: {check.detail}")
            else:
                self.stdout.write(f"ok    {check.name}")

        summary = cross_check(flags["n_max"], flags["trials"], tol=flags["tol"], seed=flags["seed"])
        self.stdout.write(
            f"oráculo: seed={summary.seed} trials={summary.trials} tol={summary.tol:.1e}"
        )
        for entry in summary.entries:
            status = "ok   " if entry["max_delta"] <= summary.tol else "FALHA"
            self.stdout.write(
                f"{status} n={entry['n']} {entry['mode']}: max_delta={entry['max_delta']:.3e}"
            )
        for failure in summary.failures:
            self.stdout.write(
                f"FALHA n={failure['n']} {failure['mode']} trial={failure['trial']}: {failure['error']}"
            )
        if not summary.passed:
            failures += 1

        if failures:
            raise CommandError(f"{failures} conferência(s) falharam.", returncode=EXIT_VERIFICATION)
        self.stdout.write(self.style.SUCCESS("Todas as conferências passaram."))
