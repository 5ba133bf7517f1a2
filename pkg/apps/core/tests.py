"""
Testes da linha de comando: flags, códigos de saída e formatos.

Roda com: python manage.py test apps.core.tests -v 2
"""
import csv
import io
import json
import math
import tempfile
from pathlib import Path

from django.apps import apps as app_registry
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from openpyxl import load_workbook

from apps.core.exporters import format_cell
from apps.core.serializers import OUTPUT_COLUMNS, SweepFlagsSerializer
from apps.core.validators import parse_float_list, parse_int_range, width_to_q

FIXTURE = Path(__file__).resolve().parent.parent / "energy" / "fixtures" / "reference_unit_width.csv"


def _run(*args, **options):
    out = io.StringIO()
    call_command(*args, stdout=out, stderr=io.StringIO(), **options)
    return out.getvalue()


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class ValidatorsTest(SimpleTestCase):

    def test_int_range(self):
        self.assertEqual(parse_int_range("1..8"), list(range(1, 9)))
        self.assertEqual(parse_int_range("3"), [3])
        self.assertEqual(parse_int_range("1,3,5"), [1, 3, 5])
        self.assertEqual(parse_int_range(4), [4])

    def test_int_range_invalid(self):
        for value in ("5..1", "a", "1..x"):
            with self.assertRaises(ValidationError):
                parse_int_range(value)

    def test_float_list(self):
        self.assertEqual(parse_float_list("0.5,1,2"), [0.5, 1.0, 2.0])
        self.assertEqual(parse_float_list(""), [])
        with self.assertRaises(ValidationError):
            parse_float_list("1,inf")
        with self.assertRaises(ValidationError):
            parse_float_list("1,um")

    def test_width_to_q(self):
        self.assertEqual(width_to_q(0.5), 4.0)
        self.assertEqual(width_to_q(1.0), 1.0)
        with self.assertRaises(ValidationError):
            width_to_q(0.0)

    def test_format_cell(self):
        self.assertEqual(format_cell(None), "")
        self.assertEqual(format_cell(True), "true")
        self.assertEqual(float(format_cell(0.1 + 0.2)), 0.1 + 0.2)


class ClassesCommandTest(SimpleTestCase):

    def test_three_pairs(self):
        rows = _csv_rows(_run("classes", n=3, format="csv"))
        self.assertEqual([r["cycle_type"] for r in rows], ["[3]", "[2,1]", "[1,1,1]"])
        self.assertEqual([int(r["factor"]) for r in rows], [2, -3, 1])

    def test_marked_counts(self):
        rows = _csv_rows(_run("classes", n=10, marked=True, format="csv"))
        self.assertEqual(len(rows), 10)
        self.assertEqual(int(rows[-1]["marked_count"]), 97)

    def test_invalid_n(self):
        with self.assertRaises(CommandError) as ctx:
            _run("classes", n=0)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_table_output(self):
        output = _run("classes", n=2)
        self.assertIn("cycle_type", output.splitlines()[0])


class ElementsCommandTest(SimpleTestCase):

    def test_single_pair_ratio(self):
        rows = _csv_rows(_run("elements", n=1, p=0.5, q=0.0, format="csv"))
        self.assertEqual(len(rows), 1)
        self.assertAlmostEqual(float(rows[0]["kinetic_ratio"]), 1.0, places=14)

    def test_transposition_coordinate(self):
        rows = json.loads(_run("elements", n=3, p=1.0, q=1.0, format="json"))
        by_type = {r["cycle_type"]: r for r in rows}
        self.assertAlmostEqual(by_type["[2,1]"]["kinetic_coordinate"], 1.75, places=13)

    def test_raw_identity_overlap(self):
        rows = json.loads(_run("elements", n=3, p=1.0, q=1.0, raw=True, format="json"))
        identity = next(r for r in rows if r["cycle_type"] == "[1,1,1]")
        expected = math.pi ** 9 / (512 * 3 ** 4.5)
        self.assertLess(abs(identity["overlap"] - expected) / expected, 1e-13)

    def test_invalid_p(self):
        with self.assertRaises(CommandError) as ctx:
            _run("elements", n=2, p=0.0, q=1.0)
        self.assertEqual(ctx.exception.returncode, 2)


class EnergyCommandTest(SimpleTestCase):

    def test_free_pair(self):
        record = json.loads(_run("energy", n=1, d=3, q=0.0, optimize=True))
        self.assertEqual(list(record), list(OUTPUT_COLUMNS))
        self.assertAlmostEqual(record["E"], 6.0, delta=1e-9)
        self.assertAlmostEqual(record["width"], math.sqrt(2), delta=1e-5)
        self.assertEqual(record["internal_width"], "inf")
        self.assertEqual(record["mode"], "fermionic")

    def test_fixed_width(self):
        record = json.loads(_run("energy", n=1, d=3, q=1.0, p=0.25))
        self.assertAlmostEqual(record["E"], 3 * (2.5 + 1 + 1 / 9), places=12)
        self.assertFalse(record["converged"])

    def test_internal_width_flag(self):
        rows = _csv_rows(_run("energy", n=1, d=1, internal_width=0.5, p=1.0, format="csv"))
        self.assertEqual(float(rows[0]["q"]), 4.0)
        self.assertEqual(float(rows[0]["internal_width"]), 0.5)

    def test_usage_errors(self):
        for options in (
            {"n": 1, "q": 1.0, "internal_width": 1.0, "optimize": True},
            {"n": 1, "optimize": True},
            {"n": 1, "q": 1.0},
            {"n": 1, "q": 1.0, "p": 0.5, "optimize": True},
            {"n": 1, "q": 1.0, "p": 0.5, "mode": "anyonic"},
        ):
            with self.assertRaises(CommandError) as ctx:
                _run("energy", **options)
            self.assertEqual(ctx.exception.returncode, 2, options)

    def test_vanishing_norm(self):
        with self.assertRaises(CommandError) as ctx:
            _run("energy", n=2, q=0.0, optimize=True)
        self.assertEqual(ctx.exception.returncode, 3)


class SweepCommandTest(SimpleTestCase):

    def test_grid_to_stdout(self):
        rows = _csv_rows(_run("sweep", n="1..2", d=1, width="0.5,1", jobs=1))
        self.assertEqual(len(rows), 4)
        self.assertEqual(list(rows[0]), list(OUTPUT_COLUMNS))
        self.assertEqual([int(r["n"]) for r in rows], [1, 2, 1, 2])

    def test_output_independent_of_jobs(self):
        serial = _run("sweep", n="1..3", d=2, q="0.5,2", jobs=1, format="json")
        threaded = _run("sweep", n="1..3", d=2, q="0.5,2", jobs=3, format="json")
        self.assertEqual(serial, threaded)
        self.assertEqual(len(json.loads(serial)), 6)

    def test_failed_point_has_empty_fields(self):
        rows = _csv_rows(_run("sweep", n="1..2", q="0"))
        self.assertEqual(rows[1]["E"], "")
        self.assertEqual(rows[1]["mu"], "")
        self.assertEqual(float(rows[1]["condition"]), 0.0)
        self.assertNotEqual(rows[0]["E"], "")

    def test_grid_accepts_large_n(self):
        """O sweep nunca enumera permutações: n acima do limite explícito é aceito."""
        serializer = SweepFlagsSerializer(data={"n": "1..10", "q": "1"})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["n"][-1], 10)

    def test_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "grade.csv"
            _run("sweep", n="1", q="1", out=str(path))
            self.assertEqual(len(_csv_rows(path.read_text(encoding="utf-8"))), 1)

            xlsx = Path(tmp) / "grade.xlsx"
            _run("sweep", n="1..2", q="1", out=str(xlsx), format="xlsx")
            ws = load_workbook(xlsx).active
            self.assertEqual([c.value for c in ws[1]], list(OUTPUT_COLUMNS))
            self.assertEqual(ws.max_row, 3)

    def test_usage_errors(self):
        for options in (
            {"n": "1..2", "width": ""},
            {"n": "1..2"},
            {"n": "1..2", "q": "1", "width": "1"},
            {"n": "0..2", "q": "1"},
            {"n": "3..1", "q": "1"},
            {"n": "1", "q": "1", "format": "xlsx"},
            {"n": "1", "q": "1", "out": "/nonexistent/dir/grade.csv"},
        ):
            with self.assertRaises(CommandError) as ctx:
                _run("sweep", **options)
            self.assertEqual(ctx.exception.returncode, 2, options)


class CompareCommandTest(SimpleTestCase):

    def test_reference_table(self):
        rows = _csv_rows(_run("compare", reference=str(FIXTURE), n="1..2", width="1", jobs=1))
        self.assertEqual([int(r["n"]) for r in rows], [1, 2])
        self.assertEqual(float(rows[0]["E_reference"]), 9.375)
        self.assertGreater(float(rows[0]["E_delta"]), 1.0)

    def test_missing_reference(self):
        with self.assertRaises(CommandError) as ctx:
            _run("compare", reference="/nonexistent/ref.csv", n="1", width="1")
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTest(SimpleTestCase):

    def test_small_run_passes(self):
        output = _run("verify", n_max=2, trials=2, tol=1e-10, seed=7)
        self.assertIn("seed=7", output)
        self.assertNotIn("FALHA", output)

    def test_zero_trials(self):
        output = _run("verify", n_max=3, trials=0)
        self.assertIn("trials=0", output)

    def test_over_oracle_limit(self):
        with self.assertRaises(CommandError) as ctx:
            _run("verify", n_max=7, trials=1)
        self.assertEqual(ctx.exception.returncode, 2)

    @override_settings(COBOSON_PRECISION_LADDER=(53,))
    def test_failure_exit_code(self):
        """Sem precisão estendida a tolerância 1e-30 é inalcançável: falhas por sorteio."""
        with self.assertRaises(CommandError) as ctx:
            _run("verify", n_max=3, trials=1, tol=1e-30, seed=1)
        self.assertEqual(ctx.exception.returncode, 1)


class InstalledAppsTest(SimpleTestCase):

    def test_no_model_apps(self):
        """Sem banco nem autenticação: as apps de contrib ficam de fora."""
        self.assertFalse(app_registry.is_installed("django.contrib.auth"))
        self.assertFalse(app_registry.is_installed("django.contrib.contenttypes"))
