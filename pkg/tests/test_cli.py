"""End-to-end CLI behavior: parsing, formatting, exit codes, file outputs."""

import json
import math

import pytest

from e0kit import channels, cli, extremal
from e0kit.cli import (
    EXIT_CHECK,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    InvariantError,
    ParseError,
    main,
    parse_channel,
)
from e0kit.verify import VerificationReport

BSC_FILE = """\
# crossover channel, two outputs
2
0.8898 0.1102   # input 0
0.1102 0.8898   # input 1
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def bsc_path(tmp_path):
    path = tmp_path / "bsc.ch"
    path.write_text(BSC_FILE)
    return str(path)


def test_fmt_twelve_significant_digits():
    assert cli._fmt(math.pi) == "3.14159265359"
    assert cli._fmt(-0.0) == "0"
    assert cli._fmt(0.25) == "0.25"
    assert cli._fmt(1e-15) == "1e-15"


def test_parse_channel_comments_and_blanks():
    ch = parse_channel(BSC_FILE + "\n\n")
    assert list(ch.w0) == [0.8898, 0.1102]
    assert list(ch.w1) == [0.1102, 0.8898]


def test_parse_channel_syntax_errors():
    with pytest.raises(ParseError, match="no payload"):
        parse_channel("# only a comment\n")
    with pytest.raises(ParseError, match="3 payload lines"):
        parse_channel("2\n0.5 0.5\n")
    with pytest.raises(ParseError, match="line 4"):
        parse_channel("2\n0.5 0.5\n0.5 0.5\n0.5 0.5\n")
    with pytest.raises(ParseError, match="line 1.*integer"):
        parse_channel("two\n0.5 0.5\n0.5 0.5\n")
    with pytest.raises(ParseError, match="positive"):
        parse_channel("0\n\n\n0.5\n0.5\n".replace("\n\n\n", "\n"))
    with pytest.raises(ParseError, match="line 2: expected 3 entries"):
        parse_channel("3\n0.5 0.5\n0.2 0.3 0.5\n")
    with pytest.raises(ParseError, match="line 3, field 2"):
        parse_channel("2\n0.5 0.5\n0.5 oops\n")


def test_parse_channel_invariant_errors():
    with pytest.raises(InvariantError, match="input-0 row has negative"):
        parse_channel("2\n1.2 -0.2\n0.5 0.5\n")
    with pytest.raises(InvariantError, match="input-1 row sums to"):
        parse_channel("2\n0.5 0.5\n0.6 0.6\n")


def test_compute_e0_and_rate(capsys, bsc_path):
    code, out, err = run_cli(
        capsys, "compute", "--channel", bsc_path, "--rho", "1.0", "e0", "rate"
    )
    assert code == EXIT_OK
    ch = extremal.bsc_matrix(0.1102)
    expected_e0 = cli._fmt(channels.e0_raw(1.0, ch))
    expected_rate = cli._fmt(channels.r_slope(1.0, ch))
    assert out == f"e0={expected_e0}\nrate={expected_rate}\n"
    assert err == ""


def test_compute_capacity_cutoff_inline_sources(capsys):
    code, out, _ = run_cli(capsys, "compute", "--bec", "0.3", "capacity", "cutoff")
    assert code == EXIT_OK
    bec = extremal.bec_matrix(0.3)
    assert f"capacity={cli._fmt(channels.capacity(bec))}" in out
    assert f"cutoff={cli._fmt(channels.cutoff_rate(bec))}" in out


def test_compute_er_and_weighted_e0(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--bsc", "0.1102", "--er-rate", "0.15", "er"
    )
    assert code == EXIT_OK
    expected = channels.er_at_rate(0.15, extremal.bsc_matrix(0.1102))
    assert out == f"er={cli._fmt(expected)}\n"

    code, out, _ = run_cli(
        capsys, "compute", "--bsc", "0.2", "--rho", "0.5", "--q", "0.5", "e0"
    )
    assert code == EXIT_OK
    assert out == f"e0={cli._fmt(channels.e0_raw(0.5, extremal.bsc_matrix(0.2)))}\n"


def test_compute_usage_errors(capsys):
    code, _, err = run_cli(capsys, "compute", "--bsc", "0.1", "e0")
    assert code == EXIT_USAGE
    assert "--rho is required" in err
    code, _, err = run_cli(capsys, "compute", "--bsc", "0.1", "er")
    assert code == EXIT_USAGE
    assert "--er-rate is required" in err


def test_match_output(capsys, bsc_path):
    code, out, _ = run_cli(capsys, "match", "--channel", bsc_path, "--rho0", "1.0")
    assert code == EXIT_OK
    bec, bsc = extremal.match_at_rho(extremal.bsc_matrix(0.1102), 1.0)
    assert out == f"epsilon={cli._fmt(bec.eps)} x={cli._fmt(bsc.x)}\n"


def test_curves_full_header_and_grid(capsys, bsc_path):
    code, out, _ = run_cli(
        capsys, "curves", "--channel", bsc_path, "--bec", "0.5", "--bsc", "0.1102"
    )
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "rho,e0_w,r_w,e0_bec,r_bec,e0_bsc,r_bsc"
    # default 200 steps plus the inserted rho = 0 row
    assert len(lines) == 1 + 201
    zero_rows = [ln for ln in lines[1:] if ln.startswith("0,")]
    assert len(zero_rows) == 1
    # every E0 column vanishes at rho = 0 and prints without a minus sign
    assert zero_rows[0].split(",")[1] == "0"
    assert zero_rows[0].split(",")[3] == "0"
    assert zero_rows[0].split(",")[5] == "0"


def test_curves_subset_and_repeatability(capsys):
    code, first, _ = run_cli(capsys, "curves", "--bec", "0.5", "--steps", "11")
    assert code == EXIT_OK
    assert first.splitlines()[0] == "rho,e0_bec,r_bec"
    code, second, _ = run_cli(capsys, "curves", "--bec", "0.5", "--steps", "11")
    assert second == first


def test_curves_out_file_and_plot(tmp_path, capsys, bsc_path):
    out_csv = tmp_path / "table.csv"
    out_png = tmp_path / "figure.png"
    code, out, _ = run_cli(
        capsys,
        "curves",
        "--channel",
        bsc_path,
        "--steps",
        "16",
        "--rho-min",
        "-0.5",
        "--rho-max",
        "2.0",
        "--out",
        str(out_csv),
        "--plot",
        str(out_png),
    )
    assert code == EXIT_OK
    assert out == ""
    text = out_csv.read_text()
    assert text.splitlines()[0] == "rho,e0_w,r_w"
    # this grid hits rho = 0 exactly, so no extra row is inserted
    assert len(text.splitlines()) == 1 + 16
    assert any(line.startswith("0,") for line in text.splitlines())
    assert out_png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_curves_requires_some_source(capsys):
    code, _, err = run_cli(capsys, "curves")
    assert code == EXIT_USAGE
    assert "at least one" in err


def test_curves_empty_range_is_numeric_failure(capsys):
    code, _, err = run_cli(
        capsys, "curves", "--bec", "0.5", "--rho-min", "2.0", "--rho-max", "1.0"
    )
    assert code == EXIT_NUMERIC
    assert "numeric failure" in err


def test_intersect_transversal(capsys):
    code, out, _ = run_cli(capsys, "intersect", "--bec", "0.3", "--bsc", "0.1102")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "classification=second-in-(-1,0)"
    assert len(lines) == 2
    assert lines[1].startswith("root rho=-0.655")
    assert lines[1].endswith("kind=transversal")


def test_intersect_tangent_and_capacity_pair(capsys):
    code, out, _ = run_cli(capsys, "intersect", "--bec", "0.6777", "--bsc", "0.1102")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "classification=tangent-at-rho>1"
    assert "kind=tangent" in out

    code, out, _ = run_cli(
        capsys, "intersect", "--bec", "0.5005189239550928", "--bsc", "0.1102"
    )
    assert code == EXIT_OK
    assert out == "classification=only-zero\n"


def test_intersect_degenerate_params(capsys):
    code, _, err = run_cli(capsys, "intersect", "--bec", "0.0", "--bsc", "0.1102")
    assert code == EXIT_NUMERIC
    assert "numeric failure" in err


def test_verify_lemmas_green(capsys, tmp_path):
    report_path = tmp_path / "lemmas.jsonl"
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "lemmas", "--report", str(report_path)
    )
    assert code == EXIT_OK
    line = out.splitlines()[0]
    assert line.startswith("suite=lemmas trials=")
    assert "failures=0" in line
    blob = json.loads(report_path.read_text().splitlines()[0])
    assert blob["suite"] == "lemmas"
    assert blob["ok"] is True


def test_verify_small_all_suites(capsys):
    code, out, _ = run_cli(capsys, "verify", "--trials", "4", "--seed", "5")
    assert code == EXIT_OK
    suites = [ln.split()[0] for ln in out.splitlines()]
    assert suites == [
        "suite=theorem1",
        "suite=capacity",
        "suite=corollary1",
        "suite=lemmas",
    ]


def test_verify_failure_exit_code(capsys, tmp_path, monkeypatch):
    def broken(seed, trials, tol):
        report = VerificationReport(suite="lemmas")
        report.record(1.0, 0.0, 0.0, "forced failure", {"seed": seed})
        return report

    monkeypatch.setitem(cli._SUITE_RUNNERS, "lemmas", broken)
    report_path = tmp_path / "bad.jsonl"
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "lemmas", "--report", str(report_path)
    )
    assert code == EXIT_CHECK
    assert "failures=1" in out
    blob = json.loads(report_path.read_text().splitlines()[0])
    assert blob["ok"] is False
    assert blob["failures"][0]["check"] == "forced failure"


def test_usage_exit_codes(capsys, tmp_path):
    assert run_cli(capsys, "no-such-command")[0] == EXIT_USAGE
    assert run_cli(capsys, "--help")[0] == EXIT_OK
    missing = str(tmp_path / "missing.ch")
    code, _, err = run_cli(capsys, "compute", "--channel", missing, "capacity")
    assert code == EXIT_USAGE

    bad = tmp_path / "bad.ch"
    bad.write_text("2\n0.5 0.5\n0.9 0.3\n")
    code, _, err = run_cli(capsys, "compute", "--channel", str(bad), "capacity")
    assert code == EXIT_USAGE
    assert "input-1 row sums to" in err
