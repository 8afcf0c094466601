import io
import subprocess
import sys
from pathlib import Path

import pytest

from symsets import cli
from symsets.errors import ReconstructionError

GOLDEN = Path(__file__).parent / "golden"
J4_GF2 = "2 4\n0 1 0 0\n1 0 0 0\n0 0 0 1\n0 0 1 0\n"


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def j_gram(tmp_path):
    p = tmp_path / "j.gram"
    p.write_text(J4_GF2)
    return p


@pytest.fixture
def j_set(tmp_path, j_gram):
    code, text, _ = run(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", str(j_gram)])
    assert code == 0
    p = tmp_path / "j.set"
    p.write_text(text)
    return p


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def test_enumerate_header_and_blocks():
    code, text, _ = run(["enumerate", "--q", "2", "--n", "4", "--k", "2"])
    assert code == 0
    head, *rest = text.split("\n\n")
    assert head == "2 4 2 35"
    assert len(rest) == 35
    assert all(len(b.strip().splitlines()) == 2 for b in rest)


def test_enumerate_k0_is_one_empty_block():
    code, text, _ = run(["enumerate", "--q", "2", "--n", "4", "--k", "0"])
    assert code == 0
    assert text.splitlines()[0] == "2 4 0 1"


@pytest.mark.parametrize("argv", [["--q", "1", "--n", "4", "--k", "2"], ["--q", "6", "--n", "2", "--k", "1"], ["--q", "2", "--n", "3", "--k", "5"]])
def test_enumerate_bad_parameters(argv):
    code, text, err = run(["enumerate", *argv])
    assert code == 2 and text == "" and err.startswith("error:")


# ---------------------------------------------------------------------------
# sset
# ---------------------------------------------------------------------------


def test_sset_gf2_has_15_blocks(j_gram):
    code, text, _ = run(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", str(j_gram)])
    assert code == 0
    assert text.splitlines()[0] == "2 4 2 15"
    assert text.count("\n\n") == 15


def test_sset_matches_golden():
    code, text, _ = run(["sset", "--q", "3", "--n", "4", "--k", "2", "--gram", str(GOLDEN / "J_q3_n4.gram")])
    assert code == 0
    assert text == (GOLDEN / "sset_q3_n4_k2.txt").read_text()


def test_sset_identity_is_not_symplectic(tmp_path):
    p = tmp_path / "id.gram"
    p.write_text("3 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")
    code, text, err = run(["sset", "--q", "3", "--n", "4", "--k", "2", "--gram", str(p)])
    assert code == 2 and text == "" and "not symplectic" in err


def test_sset_singular_alternating(tmp_path):
    p = tmp_path / "sing.gram"
    p.write_text("2 4\n0 1 0 0\n1 0 0 0\n0 0 0 0\n0 0 0 0\n")
    code, _, err = run(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", str(p)])
    assert code == 2 and "not non-singular" in err


def test_sset_odd_k_warns(j_gram):
    code, text, err = run(["sset", "--q", "2", "--n", "4", "--k", "3", "--gram", str(j_gram)])
    assert code == 0
    assert text.splitlines()[0] == "2 4 3 15"
    assert "odd" in err


def test_sset_flag_mismatch(j_gram):
    code, _, err = run(["sset", "--q", "3", "--n", "4", "--k", "2", "--gram", str(j_gram)])
    assert code == 2 and "flags" in err


def test_sset_from_stdin(monkeypatch):
    code, text, _ = run(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", "-"], J4_GF2, monkeypatch)
    assert code == 0 and text.startswith("2 4 2 15\n")


def test_missing_file():
    code, _, err = run(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", "/nonexistent/x.gram"])
    assert code == 2 and "cannot read" in err


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def test_check_accepts_sset(j_set):
    code, text, _ = run(["check", "--set", str(j_set)])
    assert code == 0
    assert text.splitlines()[0] == "accepted line 15"
    assert text.count("->") == 15


def test_check_hyperplane_direction(j_set):
    code, text, _ = run(["check", "--set", str(j_set), "--direction", "hyperplane"])
    assert code == 0 and text.splitlines()[0] == "accepted hyperplane 15"


def test_check_deleted_plane_gives_counterexample(tmp_path, j_set):
    lines = j_set.read_text().split("\n\n")
    header = lines[0].split()
    header[3] = "14"
    p = tmp_path / "minus.set"
    p.write_text("\n\n".join([" ".join(header)] + lines[2:]))
    code, text, _ = run(["check", "--set", str(p)])
    assert code == 1
    assert text.startswith("rejected ")
    assert "plane:" in text


def test_check_empty_set(tmp_path):
    p = tmp_path / "empty.set"
    p.write_text("2 4 2 0\n")
    code, text, _ = run(["check", "--set", str(p)])
    assert code == 1 and "empty" in text


@pytest.mark.parametrize("content", ["2 4 2\n", "x 4 2 1\n\n1 0 0 0\n0 1 0 0\n", "2 4 2 2\n\n1 0 0 0\n0 1 0 0\n", ""])
def test_check_malformed(tmp_path, content):
    p = tmp_path / "bad.set"
    p.write_text(content)
    code, text, err = run(["check", "--set", str(p)])
    assert code == 2 and text == "" and err.startswith("error:")


def test_check_pass_through(j_set):
    code, text, err = run(["check", "--set", str(j_set), "--pass-through"])
    assert code == 0
    assert text == j_set.read_text()
    assert err.startswith("accepted ")


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------


def test_reconstruct_round_trip(tmp_path, j_set):
    code, text, err = run(["reconstruct", "--set", str(j_set)])
    assert code == 0
    assert "symplectic=True non_singular=True sets_equal=True witness_matches=True" in text
    assert err.startswith("elapsed ")
    gram = tmp_path / "back.gram"
    gram.write_text(text)
    code, again, _ = run(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", str(gram)])
    assert code == 0 and again == j_set.read_text()


@pytest.mark.parametrize("via", ["direct", "dual"])
def test_reconstruct_via_flag(j_set, via):
    code, text, _ = run(["reconstruct", "--set", str(j_set), "--via", via])
    assert code == 0 and f"via={via}" in text


def test_reconstruct_empty_set(tmp_path):
    p = tmp_path / "empty.set"
    p.write_text("2 4 2 0\n")
    code, text, err = run(["reconstruct", "--set", str(p)])
    assert code == 1 and text == "" and "rejected" in err


def test_reconstruct_odd_n(tmp_path):
    code, text, _ = run(["enumerate", "--q", "2", "--n", "5", "--k", "3"])
    p = tmp_path / "odd.set"
    p.write_text(text)
    code, _, err = run(["reconstruct", "--set", str(p)])
    assert code == 2 and "odd" in err


def test_reconstruct_q2_n6_k4(tmp_path):
    gram = tmp_path / "j6.gram"
    rows = ["2 6"]
    for i in range(6):
        r = [0] * 6
        r[i ^ 1] = 1
        rows.append(" ".join(map(str, r)))
    gram.write_text("\n".join(rows) + "\n")
    code, text, _ = run(["sset", "--q", "2", "--n", "6", "--k", "4", "--gram", str(gram)])
    assert code == 0 and text.startswith("2 6 4 315\n")
    p = tmp_path / "s6.set"
    p.write_text(text)
    code, out, _ = run(["reconstruct", "--set", str(p)])
    assert code == 0 and "sets_equal=True" in out


def test_internal_failure_exit_3(monkeypatch, j_set):
    def broken(X, via=None):
        raise ReconstructionError("simulated solver fault")

    monkeypatch.setattr(cli, "reconstruct_form", broken)
    code, text, err = run(["reconstruct", "--set", str(j_set)])
    assert code == 3 and text == "" and "simulated solver fault" in err


# ---------------------------------------------------------------------------
# verify-theorem
# ---------------------------------------------------------------------------


def test_verify_theorem_exhaustive():
    code, text, _ = run(["verify-theorem", "--q", "2", "--n", "4", "--mode", "exhaustive"])
    assert code == 0
    assert "forms=28 failures=0" in text


def test_verify_theorem_seeded_output_is_stable():
    argv = ["verify-theorem", "--q", "3", "--n", "4", "--mode", "sampled", "--samples", "8", "--seed", "7"]
    first = run(argv)
    assert first == run(argv)
    assert first[0] == 0 and "forms=8 failures=0" in first[1]


def test_verify_theorem_failures_exit_3(monkeypatch):
    import symsets.reconstruct as rc

    def broken(X, via=None):
        raise ReconstructionError("x")

    monkeypatch.setattr(rc, "reconstruct_form", broken)
    code, text, _ = run(["verify-theorem", "--q", "2", "--n", "4"])
    assert code == 3 and "failures=28" in text


def test_unknown_subcommand_and_missing_flags():
    assert run(["frobnicate"])[0] == 2
    assert run(["enumerate", "--q", "2"])[0] == 2
    assert run(["--help"])[0] == 0


# ---------------------------------------------------------------------------
# real processes
# ---------------------------------------------------------------------------


def sh(args, stdin=None):
    return subprocess.run([sys.executable, "-m", "symsets", *args], input=stdin, capture_output=True, text=True)


def test_subprocess_byte_stable():
    a = sh(["enumerate", "--q", "3", "--n", "4", "--k", "2"])
    b = sh(["enumerate", "--q", "3", "--n", "4", "--k", "2"])
    assert a.returncode == 0 and a.stdout == b.stdout
    assert a.stdout.splitlines()[0] == "3 4 2 130"


def test_subprocess_pipe_sset_check_reconstruct():
    s = sh(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", "-"], J4_GF2)
    assert s.returncode == 0
    c = sh(["check", "--set", "-", "--pass-through"], s.stdout)
    assert c.returncode == 0 and c.stdout == s.stdout
    r = sh(["reconstruct", "--set", "-"], c.stdout)
    assert r.returncode == 0
    back = sh(["sset", "--q", "2", "--n", "4", "--k", "2", "--gram", "-"], r.stdout)
    assert back.stdout == s.stdout


def test_subprocess_exit_codes(tmp_path):
    assert sh(["enumerate", "--q", "1", "--n", "4", "--k", "2"]).returncode == 2
    p = tmp_path / "empty.set"
    p.write_text("2 4 2 0\n")
    assert sh(["check", "--set", str(p)]).returncode == 1
