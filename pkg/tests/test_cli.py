import json

import pytest

from gpk.cli import main


def run(tmp_path, *argv):
    return main(list(argv))


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_verify_true_exit_zero(tmp_path):
    out = tmp_path / "rep.json"
    assert run(tmp_path, "verify", "--p", "2", "--e", "1", "--m", "3", "--out", str(out)) == 0
    rep = read_json(out)
    assert rep["overall"] is True
    assert rep["galois"]["degree"] == 9
    assert rep["schema_version"] == 1
    assert rep["groups"]["g1"]["order"] == 24
    assert "elements" not in rep["groups"]["g1"]


def test_verify_q3_m8(tmp_path):
    out = tmp_path / "rep.json"
    assert run(tmp_path, "verify", "--p", "3", "--e", "1", "--m", "8", "--out", str(out)) == 0
    rep = read_json(out)
    assert rep["overall"] is True
    assert rep["groups"]["g1"]["order"] == 216


def test_verify_usage_error_on_bad_m(tmp_path):
    out = tmp_path / "rep.json"
    assert run(tmp_path, "verify", "--p", "2", "--e", "1", "--m", "5", "--out", str(out)) == 2
    assert not out.exists()


def test_verify_dump_elements(tmp_path):
    out = tmp_path / "rep.json"
    assert run(tmp_path, "verify", "--p", "2", "--e", "1", "--m", "3",
               "--out", str(out), "--dump-elements") == 0
    rep = read_json(out)
    assert len(rep["groups"]["g1"]["elements"]) == 24


def test_reports_are_byte_identical(tmp_path):
    out1 = tmp_path / "rep1.json"
    out2 = tmp_path / "rep2.json"
    for out in (out1, out2):
        assert run(tmp_path, "verify", "--p", "2", "--e", "1", "--m", "3", "--out", str(out)) == 0
    assert out1.read_bytes() == out2.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ("construct", "--p", "2", "--e", "1", "--m", "3"),
        ("points", "--p", "3", "--e", "1"),
        ("quotient", "--p", "3", "--e", "1", "--m", "2"),
    ],
)
def test_every_command_is_deterministic(tmp_path, argv):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        assert run(tmp_path, *argv, "--out", str(out)) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_points_command(tmp_path, capsys):
    out = tmp_path / "pts.json"
    text = tmp_path / "pts.tsv"
    assert run(tmp_path, "points", "--p", "2", "--e", "1",
               "--out", str(out), "--text", str(text)) == 0
    rep = read_json(out)
    assert rep["count"] == 9
    assert len(rep["points"]) == 9
    lines = text.read_text().strip().splitlines()
    assert lines[0] == "X\tY\tZ"
    assert len(lines) == 10  # header + 9 points
    assert lines[1] == "10\t00\t00"  # the point at infinity, digit strings


def test_points_q4_count(tmp_path):
    out = tmp_path / "pts.json"
    assert run(tmp_path, "points", "--p", "2", "--e", "2", "--out", str(out)) == 0
    assert read_json(out)["count"] == 65


def test_construct_command(tmp_path):
    out = tmp_path / "model.json"
    assert run(tmp_path, "construct", "--p", "2", "--e", "1", "--m", "3",
               "--out", str(out)) == 0
    rep = read_json(out)
    assert rep["degree"] == 9
    assert len(rep["monomials"]) == 25
    assert rep["certificate"]["valid"] is True


def test_quotient_command(tmp_path):
    out = tmp_path / "q.json"
    assert run(tmp_path, "quotient", "--p", "2", "--e", "1", "--m", "3", "--out", str(out)) == 0
    rep = read_json(out)
    assert rep["relation"] == "x^2 + x = u"
    assert run(tmp_path, "quotient", "--p", "2", "--e", "1", "--m", "2", "--out", str(out)) == 2


def test_outer_command_exit_codes(tmp_path):
    out = tmp_path / "o.json"
    # the origin: verdict false for the standard instance
    code = run(tmp_path, "outer", "--p", "2", "--e", "1", "--m", "3",
               "--point", "00,00,10", "--out", str(out))
    assert code == 1
    rep = read_json(out)
    assert rep["verdict"] is False
    # malformed or off-curve points are usage errors:
    assert run(tmp_path, "outer", "--p", "2", "--e", "1", "--m", "3",
               "--point", "10,10,10", "--out", str(out)) == 2  # off the curve
    assert run(tmp_path, "outer", "--p", "2", "--e", "1", "--m", "3",
               "--point", "1,0", "--out", str(out)) == 2  # malformed
    assert run(tmp_path, "outer", "--p", "2", "--e", "1", "--m", "3",
               "--out", str(out)) == 2  # missing --point


def test_figures_rendered(tmp_path):
    figs = tmp_path / "figs"
    out = tmp_path / "rep.json"
    assert run(tmp_path, "verify", "--p", "2", "--e", "1", "--m", "3",
               "--out", str(out), "--figure-dir", str(figs)) == 0
    names = sorted(f.name for f in figs.iterdir())
    assert names == [
        "verify_p2_e1_m3_conditions.png",
        "verify_p2_e1_m3_divisors.png",
    ]
    assert all((figs / n).stat().st_size > 0 for n in names)


def test_points_figure_rendered(tmp_path):
    figs = tmp_path / "figs"
    out = tmp_path / "pts.json"
    assert run(tmp_path, "points", "--p", "2", "--e", "1",
               "--out", str(out), "--figure-dir", str(figs)) == 0
    assert (figs / "points_p2_e1_points.png").stat().st_size > 0


def test_construct_quotient_outer_figures(tmp_path):
    figs = tmp_path / "figs"
    assert run(tmp_path, "construct", "--p", "2", "--e", "1", "--m", "3",
               "--out", str(tmp_path / "m.json"), "--figure-dir", str(figs)) == 0
    assert run(tmp_path, "quotient", "--p", "2", "--e", "1", "--m", "3",
               "--out", str(tmp_path / "q.json"), "--figure-dir", str(figs)) == 0
    assert run(tmp_path, "outer", "--p", "2", "--e", "1", "--m", "3",
               "--point", "00,00,10", "--out", str(tmp_path / "o.json"),
               "--figure-dir", str(figs)) == 1
    names = {f.name for f in figs.iterdir()}
    assert {
        "construct_p2_e1_m3_support.png",
        "quotient_p2_e1_m3_solutions.png",
        "outer_p2_e1_m3_divisors.png",
    } <= names


def test_nonprime_p_is_usage_error(tmp_path):
    assert run(tmp_path, "verify", "--p", "4", "--e", "1", "--m", "3",
               "--out", str(tmp_path / "r.json")) == 2


def test_stdout_json_when_no_out(capsys):
    assert main(["points", "--p", "2", "--e", "1"]) == 0
    captured = capsys.readouterr()
    rep = json.loads(captured.out)
    assert rep["count"] == 9
