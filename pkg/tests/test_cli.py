"""Command-line behavior: output shapes, determinism, exit codes."""

import dataclasses
import subprocess
import sys

import pytest

import freeq.cli as cli


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_proc(*argv):
    return subprocess.run(
        [sys.executable, "-m", "freeq.cli", *argv],
        capture_output=True,
        text=True,
    )


def test_solve_structured_golden(capsys):
    code, out, err = run_main(
        capsys, "solve", "--w", "xxyy", "--u", "aabb", "--format", "structured"
    )
    assert code == 0
    assert err == ""
    lines = out.splitlines()
    assert lines[0] == "freeq/1"
    assert "command: solve" in lines
    assert "kind: jsj" in lines
    assert "formula: hnn-twist" in lines
    assert "case: hnn" in lines
    assert "splitting.p: xy" in lines
    assert "minimal.0: a b" in lines


def test_structured_output_is_deterministic(capsys):
    args = ("solve", "--w", "xxyy", "--u", "aabb", "--format", "structured")
    _, first, _ = run_main(capsys, *args)
    _, second, _ = run_main(capsys, *args)
    assert first == second


def test_classify_human(capsys):
    code, out, _ = run_main(capsys, "classify", "--w", "XYxy")
    assert code == 0
    assert "case: qh" in out


def test_verify(capsys):
    code, out, _ = run_main(capsys, "verify", "--w", "xxyy", "--u", "aabb", "--g1", "a", "--g2", "b")
    assert code == 0
    assert "solution: yes" in out
    code, out, _ = run_main(capsys, "verify", "--w", "xxyy", "--u", "aabb", "--g1", "b", "--g2", "a")
    assert code == 0
    assert "solution: no" in out


def test_gen_hnn_golden(capsys):
    code, out, _ = run_main(
        capsys, "gen", "--w", "xxyy", "--u", "aabb", "--n", "0", "--m", "1"
    )
    assert code == 0
    assert "g1: aBA" in out
    assert "g2: abb" in out
    assert "verified: true" in out


def test_gen_parametric(capsys):
    code, out, _ = run_main(
        capsys, "gen", "--w", "xy", "--u", "ab", "--z", "ba", "--format", "structured"
    )
    assert code == 0
    assert "verified: true" in out


def test_gen_parse_error_exit(capsys):
    code, out, err = run_main(capsys, "verify", "--w", "xxyy", "--u", "aab)", "--g1", "a", "--g2", "b")
    assert code == 1
    assert "error" in err


def test_brute_structured(capsys):
    code, out, _ = run_main(
        capsys, "brute", "--w", "XYxy", "--u", "ABab", "-L", "1", "--format", "structured"
    )
    assert code == 0
    assert "total: 1" in out
    assert "solution.0: a b 2" in out


def test_certify_ok_exit(capsys):
    code, out, _ = run_main(capsys, "certify", "--w", "xxyy", "--u", "aabb", "-L", "4")
    assert code == 0
    assert "covered: true" in out


def test_certify_uncovered_exit(capsys, monkeypatch):
    real_certify = cli.certify

    def broken(eq, desc, max_len, jobs=1):
        report = real_certify(eq, dataclasses.replace(desc, minimal=()), max_len, jobs=jobs)
        return report

    monkeypatch.setattr(cli, "certify", broken)
    code, out, _ = run_main(capsys, "certify", "--w", "xxyy", "--u", "aabb", "-L", "4")
    assert code == 3
    assert "covered: false" in out
    assert "uncovered" in out


def test_unresolved_exit(capsys):
    code, out, err = run_main(capsys, "classify", "--w", "xxyyxy", "--hnn-budget", "1")
    assert code == 2
    assert "case: unresolved" in out


def test_demo_two_level(capsys):
    code, out, _ = run_main(capsys, "demo-two-level", "--n", "1", "--m", "0", "--verify")
    assert code == 0
    assert "g1: Ba" in out
    assert "g2: Bab" in out
    assert "holds: true" in out


def test_usage_errors_exit_1():
    proc = run_proc("solve", "--w", "xyx")
    assert proc.returncode == 1
    proc = run_proc("no-such-command")
    assert proc.returncode == 1
    proc = run_proc()
    assert proc.returncode == 1


def test_version_flag():
    proc = run_proc("--version")
    assert proc.returncode == 0
    assert proc.stdout.startswith("freeq ")


def test_structured_has_no_timings(capsys):
    _, out, _ = run_main(
        capsys, "certify", "--w", "xxyy", "--u", "aabb", "-L", "4", "--format", "structured"
    )
    assert "elapsed" not in out
    _, human, _ = run_main(capsys, "certify", "--w", "xxyy", "--u", "aabb", "-L", "4")
    assert "elapsed" in human
