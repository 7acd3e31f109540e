import json
import subprocess
import sys

import pytest

from monomial_mckay.cli import main, parse_range


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_case_v(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, "v.json", {"case": "V"})], capsys)
    report = json.loads(out)
    assert code == 0 and report["verdict"]
    assert {report[k] for k in ("chi_formula", "chi_geometric", "classes_bruteforce")} == {6}


def test_analyze_rejects_r_divisible_by_3(tmp_path, capsys):
    code, _, err = run(["analyze", write(tmp_path, "b.json", {"case": "III", "r": 3})], capsys)
    assert code == 2 and "r must not be divisible by 3" in err


def test_analyze_identity_generators(tmp_path, capsys):
    spec = {"generators": [{"perm": [0, 1, 2], "phases": ["0", "0", "0"]}]}
    code, out, _ = run(["analyze", write(tmp_path, "id.json", spec)], capsys)
    report = json.loads(out)
    assert code == 0 and report["case"] == "abelian"
    assert report["chi_geometric"] == report["classes_bruteforce"] == 1


def test_analyze_generators_of_a_family(tmp_path, capsys):
    spec = {
        "generators": [
            {"perm": [0, 1, 2], "phases": ["0", "1/4", "3/4"]},
            {"perm": [0, 2, 1], "phases": ["1/2", "1/2", "1/2"]},
        ]
    }
    code, out, _ = run(["analyze", write(tmp_path, "g.json", spec)], capsys)
    report = json.loads(out)
    assert code == 0 and report["case"] == "I" and report["r"] == 4 and report["chi_geometric"] == 5


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"case": "VII"}, "case"),
        ({"case": "I", "r": "two"}, "r"),
        ({"case": "I", "generators": []}, "exactly one"),
        ({}, "exactly one"),
        ({"generators": [{"perm": [0, 0, 1], "phases": ["0", "0", "0"]}]}, "generators[0].perm"),
        ({"generators": [{"perm": [0, 1, 2], "phases": ["0", "x", "0"]}]}, "generators[0].phases[1]"),
        ({"generators": [{"perm": [0, 1, 2], "phases": ["1/2", "0", "0"]}]}, "SL"),
        ("{not json", "invalid JSON"),
    ],
)
def test_analyze_validation_errors(tmp_path, capsys, doc, field):
    code, _, err = run(["analyze", write(tmp_path, "bad.json", doc)], capsys)
    assert code == 2
    assert field in err


def test_analyze_missing_file(tmp_path, capsys):
    code, _, err = run(["analyze", str(tmp_path / "nope.json")], capsys)
    assert code == 2 and "cannot read" in err


def test_analyze_pretty(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, "iv.json", {"case": "IV", "r": 1}), "--pretty"], capsys)
    assert code == 0
    assert "chi geometric" in out and out.splitlines()[-1].split()[-1] == "ok"


def test_sweep_i(capsys):
    code, out, _ = run(["sweep", "I", "1..10", "--ndjson"], capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 10 and all(r["verdict"] for r in rows)


def test_sweep_iv_skips_multiples_of_3(capsys):
    code, out, err = run(["sweep", "IV", "1..7", "--ndjson"], capsys)
    assert code == 0
    assert [json.loads(line)["r"] for line in out.splitlines()] == [1, 2, 4, 5, 7]
    assert "skipping r = 3, 6" in err


def test_sweep_v_table(capsys):
    code, out, _ = run(["sweep", "V", "1..1"], capsys)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[-1].split()[4:9] == ["6"] * 5


@pytest.mark.parametrize("rng", ["3..1", "a..b", "0..4", "1..2..3"])
def test_sweep_bad_range(capsys, rng):
    code, _, err = run(["sweep", "I", rng], capsys)
    assert code == 2 and "range" in err


def test_sweep_bad_case(capsys):
    assert run(["sweep", "VI", "1..2"], capsys)[0] == 2


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("5") == [5]


def test_triangulate_svg_and_json(tmp_path, capsys):
    spec = write(tmp_path, "iv.json", {"case": "IV", "r": 1})
    out_svg = tmp_path / "iv.svg"
    code, out, _ = run(["triangulate", spec, "--format", "svg", "--out", str(out_svg)], capsys)
    assert code == 0 and "triangles: 3" in out and "verification: ok" in out
    svg = out_svg.read_text()
    assert svg.count("<polygon") == 3 and 'class="phi1"' in svg

    spec = write(tmp_path, "i4.json", {"case": "I", "r": 4})
    out_json = tmp_path / "i4.json.out"
    code, _, _ = run(["triangulate", spec, "--format", "json", "--out", str(out_json)], capsys)
    doc = json.loads(out_json.read_text())
    assert code == 0 and len(doc["triangles"]) == 4
    assert ["0/4", "2/4", "2/4"] in [v["coords"] for v in doc["vertices"]]


def test_triangulate_trivial_group(tmp_path, capsys):
    spec = write(tmp_path, "id.json", {"generators": [{"perm": [0, 1, 2], "phases": ["0", "0", "0"]}]})
    out_svg = tmp_path / "t.svg"
    code, _, _ = run(["triangulate", spec, "--format", "svg", "--out", str(out_svg)], capsys)
    assert code == 0 and out_svg.read_text().count("<polygon") == 1


def test_triangulate_unsupported_format(tmp_path, capsys):
    spec = write(tmp_path, "i.json", {"case": "I", "r": 2})
    code, _, err = run(["triangulate", spec, "--format", "png", "--out", str(tmp_path / "x")], capsys)
    assert code == 2 and "unsupported format" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["triangulate", "x.json"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    spec = write(tmp_path, "v.json", {"case": "V"})
    proc = subprocess.run([sys.executable, "-m", "monomial_mckay", "analyze", spec], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"]
