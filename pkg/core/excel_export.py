from __future__ import annotations

from pathlib import Path

from mpmath import mp
from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

from core.models import IterationResult
from core.parsing import as_mpf

SIGNIFICANT_DIGITS = 6
MIN_COLUMN_WIDTH = 6
MAX_COLUMN_WIDTH = 24


def _cell_text_length(value: object) -> int:
    if value is None:
        return 0
    text = str(value).strip()
    return max((len(part) for part in text.splitlines()), default=0)


def _cell_value(value: object) -> float | str:
    """Six significant digits as a number, the way the trajectory table prints them."""
    text = mp.nstr(as_mpf(value), SIGNIFICANT_DIGITS)
    try:
        return float(text)
    except ValueError:
        return text


def export_trajectory_workbook(result: IterationResult, path: Path, title: str = "Landen trajectory") -> Path:
    wb = Workbook()
    ws = wb.active
    ws.title = "Trajectory"
    ws.sheet_view.showGridLines = False

    p = result.trajectory[0].p if result.trajectory else 2
    headers = ["n", *(f"a{i}" for i in range(1, p)), *(f"b{i}" for i in range(p))]
    total_columns = len(headers)

    thin = Side(style="thin", color="CFCFCF")
    border = Border(left=thin, right=thin, top=thin, bottom=thin)
    center = Alignment(horizontal="center", vertical="center", wrap_text=True)
    title_font = Font(name="Arial", size=16, bold=True)
    header_font = Font(name="Arial", size=11, bold=True, color="FFFFFF")
    body_font = Font(name="Arial", size=10)
    header_fill = PatternFill("solid", fgColor="5B9BD5")

    row = 1
    ws.merge_cells(start_row=row, start_column=1, end_row=row, end_column=total_columns)
    cell = ws.cell(row=row, column=1, value=title)
    cell.font = title_font
    cell.alignment = center
    row += 1

    summary = (
        f"status {result.status.value}, {result.iterations} steps, "
        f"L = {mp.nstr(result.limit_L, SIGNIFICANT_DIGITS)}, integral = {mp.nstr(result.integral, SIGNIFICANT_DIGITS)}"
    )
    ws.merge_cells(start_row=row, start_column=1, end_row=row, end_column=total_columns)
    cell = ws.cell(row=row, column=1, value=summary)
    cell.font = Font(name="Arial", size=11)
    cell.alignment = center
    cell.border = border
    row += 2

    content_lengths = [_cell_text_length(value) for value in headers]
    for column, value in enumerate(headers, start=1):
        header_cell = ws.cell(row=row, column=column, value=value)
        header_cell.font = header_font
        header_cell.fill = header_fill
        header_cell.alignment = center
        header_cell.border = border
    ws.row_dimensions[row].height = 22
    row += 1

    for n, point in enumerate(result.trajectory):
        values = [n, *(_cell_value(v) for v in (*point.a, *point.b))]
        for column, value in enumerate(values, start=1):
            body_cell = ws.cell(row=row, column=column, value=value)
            body_cell.font = body_font
            body_cell.alignment = center
            body_cell.border = border
            content_lengths[column - 1] = max(content_lengths[column - 1], _cell_text_length(value))
        row += 1

    for index, length in enumerate(content_lengths, start=1):
        width = max(MIN_COLUMN_WIDTH, min(MAX_COLUMN_WIDTH, length * 1.1 + 2))
        ws.column_dimensions[get_column_letter(index)].width = width

    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(output_path)
    return output_path
