from fractions import Fraction
from pathlib import Path

from openpyxl import load_workbook

from core.excel_export import export_trajectory_workbook
from core.landen import iterate
from core.models import ParameterPoint


def test_trajectory_workbook_layout(tmp_path: Path):
    result = iterate(ParameterPoint(a=(1, 3000), b=(45, 25000, 1230)), tol=Fraction(1, 10**4))
    path = export_trajectory_workbook(result, tmp_path / "out" / "trajectory.xlsx", title="Example run")

    wb = load_workbook(path)
    ws = wb["Trajectory"]
    assert ws["A1"].value == "Example run"
    assert "Converged" in ws["A2"].value
    assert [ws.cell(row=4, column=c).value for c in range(1, 7)] == ["n", "a1", "a2", "b0", "b1", "b2"]
    assert ws.cell(row=5, column=3).value == 3000
    assert ws.cell(row=6, column=2).value == 0.415786
    assert ws.cell(row=4 + len(result.trajectory), column=1).value == result.iterations
    assert ws.column_dimensions["A"].width >= 6
