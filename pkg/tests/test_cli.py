import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from locale_lab.cli import main, parse_part
from locale_lab.corpus import generate
from locale_lab.laws import report_from_json, report_to_json
from locale_lab.presented import (
    Closed,
    CoCountable,
    CountablePoints,
    Generic,
    IntersectWithClosed,
    IntersectWithOpen,
    Open,
    Union,
    UnsupportedConstructor,
)


@pytest.fixture
def sierpinski(tmp_path):
    p = tmp_path / "sierp.json"
    p.write_text(json.dumps({"points": ["p", "q"], "opens": [[], ["p"], ["p", "q"]]}))
    return p


def test_frame_check_sierpinski(sierpinski, capsys):
    assert main(["frame-check", str(sierpinski)]) == 0
    out = capsys.readouterr().out
    assert "valid frame: 3 elements" in out
    assert "boolean: no" in out
    assert "regular: no" in out
    assert "points: 2" in out


def test_frame_check_parse_failure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["frame-check", str(bad)]) == 2
    assert main(["frame-check", str(tmp_path / "missing.json")]) == 2


def test_frame_check_invalid_frame(tmp_path, capsys):
    f = tmp_path / "cycle.json"
    f.write_text(json.dumps({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}))
    assert main(["frame-check", str(f)]) == 1
    assert "invalid" in capsys.readouterr().err


def test_measure_exact_open(capsys):
    assert main(["measure", "lebesgue", "(0,1/2)"]) == 0
    assert capsys.readouterr().out.strip() == "mu = 1/2 (exact)"


def test_measure_atom_generic_exact_zero(capsys):
    assert main(["measure", "atoms 1/2:1", "generic"]) == 0
    assert capsys.readouterr().out.strip() == "mu = 0 (exact)"


def test_measure_rationals_within_tolerance(capsys):
    assert main(["measure", "lebesgue", "rationals", "--tol", "1e-3"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("mu in [0, ")
    upper = Fraction(out[len("mu in [0, "):-1])
    assert upper <= Fraction(1, 1000)


def test_measure_closed_restricted(capsys):
    assert main(["measure", "restrict [0,1/2]", "closed (1/2,1]"]) == 0
    assert capsys.readouterr().out.strip() == "mu = 1/2 (exact)"


def test_measure_bad_descriptor(capsys):
    assert main(["measure", "bogus", "(0,1)"]) == 1
    assert "bogus" in capsys.readouterr().err


def test_measure_bad_interval(capsys):
    assert main(["measure", "lebesgue", "(1/2,1/4)"]) == 1
    assert capsys.readouterr().err


def test_parse_part_shapes():
    assert isinstance(parse_part("rationals"), CountablePoints)
    assert isinstance(parse_part("irrationals"), CoCountable)
    assert isinstance(parse_part("generic"), Generic)
    assert isinstance(parse_part("(0,1/2)|(1/2,1)"), Open)
    c = parse_part("closed (0,1/2)")
    assert isinstance(c, Closed)
    u = parse_part("union(rationals; (0,1/4); generic)")
    assert isinstance(u, Union) and len(u.parts) == 3
    m = parse_part("meet-open(union(rationals; generic); (0,1/2))")
    assert isinstance(m, IntersectWithOpen) and isinstance(m.part, Union)
    mc = parse_part("meet-closed(generic; (0,1/2))")
    assert isinstance(mc, IntersectWithClosed)
    with pytest.raises(UnsupportedConstructor):
        parse_part("meet-open(generic; (0,1); (0,1/2))")


def test_laws_json_round_trips(capsys):
    assert main(["laws", "frame", "--format", "json"]) == 0
    text = capsys.readouterr().out
    rep = report_from_json(text)
    assert rep.suite == "frame" and rep.ok
    assert report_to_json(rep) == text


def test_laws_all_with_size_cap(capsys):
    assert main(["laws", "all", "--format", "json", "--max-size", "4"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert [r["suite"] for r in reports] == ["frame", "sublocale", "morphism", "measure"]
    assert all(r["violations"] == [] for r in reports)


def test_laws_text_output(capsys):
    assert main(["laws", "frame"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("suite: frame\n")
    assert "violations: 0" in out


def test_laws_flag_tampered_corpus(tmp_path, capsys):
    generate(tmp_path)
    shutil.copy(tmp_path / "negative" / "m3.json", tmp_path / "frames" / "zz-m3.json")
    assert main(["laws", "frame", "--corpus", str(tmp_path)]) == 1
    assert "FAIL frame-valid" in capsys.readouterr().out


def test_laws_missing_corpus(capsys):
    assert main(["laws", "frame", "--corpus", "/nonexistent"]) == 2


def test_laws_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as e:
        main(["laws", "bogus"])
    assert e.value.code == 2


def test_demos_run_clean(capsys):
    for name in ("generic", "rationals", "reduction", "hidden-intersections"):
        assert main(["demo", name]) == 0
        out = capsys.readouterr().out
        assert out.strip()
    # spot checks on the last one
    assert main(["demo", "reduction"]) == 0
    out = capsys.readouterr().out
    assert "it equals c(u): True" in out
    assert "(0,1)" in out


def test_console_script_is_wired():
    exe = shutil.which("locale-lab")
    if exe is None:
        pytest.skip("console script not on PATH in this environment")
    r = subprocess.run(
        [exe, "measure", "lebesgue", "(0,1/4)"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout.strip() == "mu = 1/4 (exact)"


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "locale_lab.cli", "measure", "lebesgue", "(3/4,1)"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout.strip() == "mu = 1/4 (exact)"
