"""
Saída tabular dos comandos: texto alinhado, CSV, JSON e planilha.

Reais saem com 17 algarismos significativos no CSV e na tabela, o que basta
para reler exatamente o binary64 emitido. None vira célula vazia.
"""
import csv
import logging

from openpyxl import Workbook
from rest_framework.renderers import JSONRenderer

from apps.core.serializers import OutputRecordSerializer

logger = logging.getLogger(__name__)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def output_records(reports) -> list:
    return [dict(row) for row in OutputRecordSerializer(reports, many=True).data]


def write_csv(rows, columns, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row.get(column)) for column in columns])


def render_json(data) -> str:
    return JSONRenderer().render(data).decode("utf-8")


def render_table(rows, columns) -> str:
    cells = [list(columns)] + [[format_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(columns))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in cells]
    return "\n".join(lines) + "\n"


def write_xlsx(rows, columns, path, title="Energias"):
    wb = Workbook()
    ws = wb.active
    ws.title = title
    ws.append(list(columns))
    for row in rows:
        ws.append([_xlsx_cell(row.get(column)) for column in columns])
    wb.save(path)
    logger.info("Planilha gravada em %s (%d linhas)", path, len(rows))


def _xlsx_cell(value):
    if value is None:
        return None
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def emit(rows, columns, fmt: str, stream):
    """Escreve `rows` em `stream` no formato pedido (table/csv/json)."""
    if fmt == "json":
        stream.write(render_json([{c: row.get(c) for c in columns} for row in rows]) + "\n")
    elif fmt == "csv":
        write_csv(rows, columns, stream)
    else:
        stream.write(render_table(rows, columns))
