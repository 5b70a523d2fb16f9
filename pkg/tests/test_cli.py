import csv
import io

import pytest

from norcensus.cli import (EX_DATAERR, EX_USAGE, ReportRow, cmd_dispatch, read_records,
                           report_table, write_report)
from norcensus.families.registry import E63


def run(argv):
    out = io.StringIO()
    code = cmd_dispatch(argv, out=out)
    return code, out.getvalue()


def test_usage_errors():
    assert run([])[0] == EX_USAGE
    assert run(["frobnicate"])[0] == EX_USAGE
    assert run(["census"])[0] == EX_USAGE
    assert run(["census", "--tets", "2", "--jobs", "0"])[0] == EX_USAGE
    assert run(["construct", "lst", "2,3"])[0] == EX_USAGE
    assert run(["construct", "mystery", "x=1"])[0] == EX_USAGE


def test_data_errors(tmp_path):
    assert run(["homology", "not-a-signature!"])[0] == EX_DATAERR
    bad = tmp_path / "bad.txt"
    bad.write_text("tets 3\n")
    assert run(["isosig", str(bad)])[0] == EX_DATAERR
    assert run(["report", str(bad)])[0] == EX_DATAERR


def test_construct_then_homology_and_isosig(tmp_path):
    code, text = run(["construct", "exceptional", "E63"])
    assert code == 0
    assert text.splitlines()[-1] == "name T2xI/[0 1;1 0]"
    path = tmp_path / "e63.txt"
    path.write_text(text)
    assert run(["homology", str(path)]) == (0, "Z + Z\n")
    first = run(["isosig", str(path)])
    assert first == run(["isosig", str(path)]) == (0, E63 + "\n")


def test_construct_lst():
    code, text = run(["construct", "lst", "2,3,5"])
    assert code == 0
    assert text.startswith("tets 2\n")
    assert text.endswith("name LST(2,3,5)\n")


def test_homology_of_flat_bundle(family_census_6):
    rec = next(r for r in family_census_6 if str(r.name) == "T2xI/[1 0;0 -1]")
    assert run(["homology", rec.sig]) == (0, "Z + Z + Z_2\n")
    code, text = run(["construct"] + str(rec.spec).split())
    assert code == 0 and text.endswith("name T2xI/[1 0;0 -1]\n")


def test_central_surfaces_lines():
    code, text = run(["central-surfaces", E63])
    assert code == 0
    lines = text.splitlines()
    assert lines and all("chi=" in ln and "components=" in ln for ln in lines)
    assert len(lines[0].split("chi=")[0].split()) == 6


def test_census_writes_files(tmp_path):
    out = tmp_path / "c4"
    code, _ = run(["census", "--tets", "4", "--out", str(out)])
    assert code == 0
    assert read_records(out / "records.csv") == []
    assert (out / "sigs.txt").read_text() == ""


def test_report_table_shape():
    rows = [("T2xI/[1 1;1 0]", 6, "Z"), ("SFS(RP2: (2,1)(3,1))", 7, "Z"),
            ("SFS(RP2: (2,1)(3,1))", 7, "Z"), ("SFS(RP2: (2,1)(3,1))", 8, "Z")]
    table = report_table(rows)
    assert table == [ReportRow("T2xI/[1 1;1 0]", 6, 1, "Z"),
                     ReportRow("SFS(RP2: (2,1)(3,1))", 7, 2, "Z")]
    buf = io.StringIO()
    write_report(table, buf)
    back = list(csv.reader(io.StringIO(buf.getvalue())))
    assert back[0] == ["tetrahedra", "manifold", "triangulations", "homology"]
    assert back[1] == ["6", "T2xI/[1 1;1 0]", "1", "Z"]


def test_report_from_records(tmp_path):
    path = tmp_path / "records.csv"
    path.write_text("sig,tets,homology,hasCentral,classification\n"
                    f"{E63},6,Z + Z,true,T2xI/[0 1;1 0]\n"
                    "xyz,6,Z,true,Quarantined(no family match)\n")
    code, text = run(["report", str(path)])
    assert code == 0
    assert text.splitlines()[1] == "6,T2xI/[0 1;1 0],1,Z + Z"
