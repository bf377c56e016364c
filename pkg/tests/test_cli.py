"""Command-line interface: worked examples, file outputs, exit codes."""

import json
import subprocess

import pytest

from graphcoh.cli import main
from graphcoh.graphs import format_graph, format_graphs, k4_graph, theta_graph
from graphcoh.tensors import eps_tensor, format_tensor

THETA_TEXT = format_graph(theta_graph())


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ---------------------------------------------------------------------------
# Worked examples.
# ---------------------------------------------------------------------------


def test_mult_spin_one_cubed(capsys):
    rc, out, _ = run_cli(capsys, "mult", "--spins", "1,1,1")
    assert rc == 0
    assert out == "0:1 1:3 2:2 3:1\n"


def test_mult_power_of_a_direct_sum(capsys):
    rc, out, _ = run_cli(capsys, "mult", "--spins", "1/2,1", "--power", "3")
    assert rc == 0
    assert out == "0:4 1/2:8 1:9 3/2:7 2:5 5/2:3 3:1\n"


def test_pairing_eps_with_itself(capsys):
    rc, out, _ = run_cli(capsys, "pairing", "--tensor", "eps", "--tensor", "eps")
    assert rc == 0
    assert out == "6\n"


def test_pairing_accepts_tensor_files(capsys, tmp_path):
    path = tmp_path / "eps.txt"
    path.write_text(format_tensor(eps_tensor()))
    rc, out, _ = run_cli(capsys, "pairing", "--tensor", "eps", "--tensor", str(path))
    assert rc == 0
    assert out == "6\n"


def test_check_delta2_default_sweep(capsys):
    rc, out, _ = run_cli(capsys, "check", "--suite", "delta2", "--max-order", "3")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "# graphcoh check"
    assert lines[1] == "# suite delta2"
    assert lines[2] == "# mode all"
    assert "ok delta2+grading mode literal classes 2179" in lines
    assert "ok delta2+grading mode edge-renumbering classes 1208" in lines
    assert "total classes checked 3387" in lines
    assert lines[-1] == "PASS"


# ---------------------------------------------------------------------------
# enumerate / delta / cocycles reports.
# ---------------------------------------------------------------------------


def test_enumerate_report_is_exact(capsys):
    rc, out, _ = run_cli(capsys, "enumerate", "--order", "1", "--degree", "0")
    assert rc == 0
    assert out == (
        "# graphcoh enumerate\n"
        "# mode literal\n"
        "# order 1 degree 0 connected false\n"
        "# classes 1\n"
        "# id g1\n"
        "V 2 E 3\n"
        "1 2\n"
        "1 2\n"
        "1 2\n"
    )


def test_enumerate_is_deterministic(capsys):
    first = run_cli(capsys, "enumerate", "--order", "2", "--degree", "0",
                    "--mode", "edge-renumbering", "--connected")
    second = run_cli(capsys, "enumerate", "--order", "2", "--degree", "0",
                     "--mode", "edge-renumbering", "--connected")
    assert first == second
    assert first[0] == 0


def test_enumerate_json_mirror(capsys, tmp_path):
    out_json = tmp_path / "report.json"
    rc, _, _ = run_cli(
        capsys, "enumerate", "--order", "1", "--degree", "0", "--json", str(out_json)
    )
    assert rc == 0
    payload = json.loads(out_json.read_text())
    assert payload["command"] == "enumerate"
    assert payload["mode"] == "literal"
    assert payload["classes"] == {
        "g1": {"vertices": 2, "edges": [[1, 2], [1, 2], [1, 2]]}
    }


def test_out_file_silences_stdout(capsys, tmp_path):
    out_file = tmp_path / "report.txt"
    rc, stdout, _ = run_cli(
        capsys, "enumerate", "--order", "1", "--degree", "0", "--out", str(out_file)
    )
    assert rc == 0
    assert stdout == ""
    assert out_file.read_text().startswith("# graphcoh enumerate\n")


def test_delta_matrix_report(capsys):
    rc, out, _ = run_cli(capsys, "delta", "--order", "1", "--degree", "-1")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "# graphcoh delta"
    assert lines[1] == "# delta matrix order 1 degree -1 mode literal connected false"
    assert lines[2] == "# rows 1 cols 13"
    for entry in lines[3:]:
        row, col, value = entry.split()
        assert row == "1"
        assert 1 <= int(col) <= 13
        numerator, denominator = value.split("/")
        int(numerator), int(denominator)


def test_cocycles_report(capsys):
    rc, out, _ = run_cli(capsys, "cocycles", "--order", "1", "--degree", "0")
    assert rc == 0
    assert out == (
        "# graphcoh cocycles\n"
        "# mode literal\n"
        "# order 1 degree 0 connected false\n"
        "# basis 1 cocycles 1\n"
        "# id g1\n"
        "V 2 E 3\n"
        "1 2\n"
        "1 2\n"
        "1 2\n"
        "# cocycle 1\n"
        "1/1\tg1\n"
    )


# ---------------------------------------------------------------------------
# eval.
# ---------------------------------------------------------------------------


def test_eval_uniform_tensor(capsys, tmp_path):
    graph_file = tmp_path / "theta.txt"
    graph_file.write_text(THETA_TEXT)
    rc, out, _ = run_cli(capsys, "eval", "--in", str(graph_file), "--tensor", "eps")
    assert rc == 0
    assert out == "# graphcoh eval\n# mode literal\ng1\t6\n"


def test_eval_multiple_graphs(capsys, tmp_path):
    graph_file = tmp_path / "graphs.txt"
    graph_file.write_text(format_graphs([theta_graph(), k4_graph()]))
    rc, out, _ = run_cli(capsys, "eval", "--in", str(graph_file), "--tensor", "eps")
    assert rc == 0
    assert out.splitlines()[-2:] == ["g1\t6", "g2\t6"]


def test_eval_per_vertex_tensors(capsys, tmp_path):
    graph_file = tmp_path / "theta.txt"
    graph_file.write_text(THETA_TEXT)
    rc, out, _ = run_cli(
        capsys, "eval", "--in", str(graph_file), "--tensor", "eps", "--tensor", "eps"
    )
    assert rc == 0
    assert out.endswith("g1\t6\n")


def test_eval_decoration_file(capsys, tmp_path):
    graph_file = tmp_path / "theta.txt"
    graph_file.write_text(THETA_TEXT)
    dec_file = tmp_path / "decorations.txt"
    dec_file.write_text("vertex 1 tensor eps\nvertex 2 tensor eps\n")
    rc, out, _ = run_cli(
        capsys, "eval", "--in", str(graph_file), "--tensor", str(dec_file)
    )
    assert rc == 0
    assert out.endswith("g1\t6\n")


def test_eval_decoration_file_must_cover_all_vertices(capsys, tmp_path):
    graph_file = tmp_path / "theta.txt"
    graph_file.write_text(THETA_TEXT)
    dec_file = tmp_path / "decorations.txt"
    dec_file.write_text("vertex 1 tensor eps\n")
    rc, _, err = run_cli(
        capsys, "eval", "--in", str(graph_file), "--tensor", str(dec_file)
    )
    assert rc == 1
    assert "lacks vertices" in err


# ---------------------------------------------------------------------------
# Validation suites.
# ---------------------------------------------------------------------------


def test_check_canon_suite(capsys):
    rc, out, _ = run_cli(capsys, "check", "--suite", "canon")
    assert rc == 0
    lines = out.splitlines()
    assert "ok canon mode literal skeletons 86 random checks 86000" in lines
    assert "ok canon mode edge-renumbering skeletons 4 random checks 4000" in lines
    assert lines[-1] == "PASS"


def test_check_ihx_suite(capsys):
    rc, out, _ = run_cli(capsys, "check", "--suite", "ihx")
    assert rc == 0
    lines = out.splitlines()
    assert "ok ihx eps holds" in lines
    assert "ok ihx eps-block-sum holds" in lines
    assert "ok ihx perturbed-jacobi fails at index (2, 3, 4, 5)" in lines
    assert lines[-1] == "PASS"


def test_check_multiplicities_suite(capsys):
    rc, out, _ = run_cli(capsys, "check", "--suite", "multiplicities")
    assert rc == 0
    assert out.splitlines()[-1] == "PASS"


def test_check_decorated_delta2_suite(capsys):
    rc, out, _ = run_cli(capsys, "check", "--suite", "decorated-delta2")
    assert rc == 0
    lines = out.splitlines()
    assert "ok decorated-delta2 trivalent skeletons 86 (literal mode)" in lines
    assert lines[-1] == "PASS"


def test_check_respects_explicit_mode(capsys):
    rc, out, _ = run_cli(
        capsys, "check", "--suite", "delta2", "--max-order", "1", "--mode", "literal"
    )
    assert rc == 0
    lines = out.splitlines()
    assert lines[2] == "# mode literal"
    assert not any("edge-renumbering" in line for line in lines)


def test_check_json_payload(capsys, tmp_path):
    out_json = tmp_path / "check.json"
    rc, _, _ = run_cli(capsys, "check", "--suite", "ihx", "--json", str(out_json))
    assert rc == 0
    payload = json.loads(out_json.read_text())
    assert payload["ok"] is True
    assert payload["suite"] == "ihx"
    assert payload["witness"] == []


def test_check_is_deterministic(capsys):
    first = run_cli(capsys, "check", "--suite", "ihx")
    second = run_cli(capsys, "check", "--suite", "ihx")
    assert first == second


# ---------------------------------------------------------------------------
# Exit codes.
# ---------------------------------------------------------------------------


def test_validation_failures_exit_one(capsys, tmp_path):
    rc, _, err = run_cli(capsys, "pairing", "--tensor", "eps")
    assert rc == 1
    assert "exactly two" in err

    rc, _, err = run_cli(capsys, "pairing", "--tensor", "eps", "--tensor", "no-such")
    assert rc == 1
    assert "no-such" in err

    rc, _, err = run_cli(capsys, "mult", "--spins", "")
    assert rc == 1

    rc, _, err = run_cli(capsys, "eval", "--tensor", "eps")
    assert rc == 1

    graph_file = tmp_path / "theta.txt"
    graph_file.write_text(THETA_TEXT)
    rc, _, err = run_cli(capsys, "eval", "--in", str(graph_file))
    assert rc == 1

    rc, _, err = run_cli(
        capsys, "eval", "--in", str(tmp_path / "absent.txt"), "--tensor", "eps"
    )
    assert rc == 1


def test_usage_errors_exit_two(capsys):
    for argv in (
        ["mult"],  # missing required --spins
        ["check", "--suite", "no-such-suite"],
        ["enumerate", "--degree", "0"],  # missing required --order
        ["enumerate", "--order", "1", "--mode", "bogus"],
        ["no-such-command"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        capsys.readouterr()


# ---------------------------------------------------------------------------
# Installed entry point.
# ---------------------------------------------------------------------------


def test_console_script_round_trip():
    proc = subprocess.run(
        ["graphcoh", "mult", "--spins", "1,1,1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "0:1 1:3 2:2 3:1\n"
