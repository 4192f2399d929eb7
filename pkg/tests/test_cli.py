"""End-to-end tests of the command line surface.

Every test drives ``cli.main(argv)`` directly and checks stdout, stderr,
exit codes, and file output.  Expected payloads are frozen from hand-checked
runs so formatting regressions are caught byte for byte.
"""

from __future__ import annotations

import io
import json
import sys
from pathlib import Path

import pytest

from serreweights import cli, sweeps

GOLDEN = Path(__file__).parent / "golden"

QTABLE_PRIMES = [2, 3, 5, 7, 11, 13]


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# irred


def test_irred_json_default(capsys):
    code, out, err = run_cli(capsys, ["irred", "--ell", "3", "--f", "1", "--n", "2"])
    assert code == 0
    assert err == ""
    payload = json.loads(out)
    assert payload == [
        {"ell": 3, "f": 1, "a": 0, "b": [2]},
        {"ell": 3, "f": 1, "a": 1, "b": [2]},
    ]
    # the serializer is pinned to two-space indentation
    assert out.startswith("[\n  {\n    \"ell\": 3,")


def test_irred_labels_json(capsys):
    code, out, _ = run_cli(
        capsys, ["irred", "--ell", "3", "--f", "1", "--n", "2", "--labels"]
    )
    assert code == 0
    assert json.loads(out) == [
        {"weight": {"ell": 3, "f": 1, "a": 0, "b": [2]}, "B": [0]},
        {"weight": {"ell": 3, "f": 1, "a": 1, "b": [2]}, "B": []},
    ]


def test_irred_tsv(capsys):
    code, out, _ = run_cli(
        capsys,
        ["irred", "--ell", "3", "--f", "1", "--n", "2", "--format", "tsv", "--labels"],
    )
    assert code == 0
    assert out == "a\tb\tweight\tB\n0\t2\tV[0 ; 2]\t0\n1\t2\tV[1 ; 2]\t\n"


def test_irred_pretty(capsys):
    code, out, _ = run_cli(
        capsys, ["irred", "--ell", "3", "--f", "1", "--n", "2", "--format", "pretty"]
    )
    assert code == 0
    assert out == (
        "ell=3 f=1 n=2  labeled=2 weights=2 injective=yes\n"
        "  B={0}  V[0 ; 2]\n"
        "  B={}  V[1 ; 2]\n"
        "weights: {V[0 ; 2], V[1 ; 2]}\n"
    )


def test_irred_rejects_niveau_one_exponent(capsys):
    # n = 4 is divisible by q + 1 = 4 at ell = 3, f = 1
    code, out, err = run_cli(capsys, ["irred", "--ell", "3", "--f", "1", "--n", "4"])
    assert code == 1
    assert out == ""
    assert err.startswith("error: InvalidNiveauTwo")


def test_irred_rejects_bad_field(capsys):
    code, _, err = run_cli(capsys, ["irred", "--ell", "4", "--f", "1", "--n", "1"])
    assert code == 1
    assert "error:" in err


# ---------------------------------------------------------------------------
# red


def test_red_unknown_json(capsys):
    code, out, _ = run_cli(
        capsys,
        ["red", "--ell", "5", "--f", "1", "--n1", "2", "--n2", "0", "--ext", "unknown"],
    )
    assert code == 0
    assert json.loads(out) == {
        "certain": [{"ell": 5, "f": 1, "a": 0, "b": [2]}],
        "possible": [{"ell": 5, "f": 1, "a": 2, "b": [2]}],
    }


def test_red_unknown_pretty_shows_dims(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "red",
            "--ell", "5", "--f", "1", "--n1", "1", "--n2", "0",
            "--ext", "unknown", "--format", "pretty",
        ],
    )
    assert code == 0
    assert out == (
        "ell=5 f=1 n1=1 n2=0 ext=unknown  labeled=3 h1_dim=2\n"
        "  B={0}  V[0 ; 1]  dim=1\n"
        "  B={}  V[1 ; 3]  dim=0\n"
        "  B={0}  V[0 ; 5]  dim=2\n"
        "certain: {V[0 ; 5]}\n"
        "possible: {V[0 ; 1], V[1 ; 3]}\n"
    )


def test_red_split_pretty(capsys):
    code, out, _ = run_cli(
        capsys,
        ["red", "--ell", "3", "--f", "1", "--n1", "0", "--n2", "0", "--format", "pretty"],
    )
    assert code == 0
    assert out == (
        "ell=3 f=1 n1=0 n2=0 ext=split  labeled=2 weights=1 injective=no\n"
        "  B={}  V[0 ; 2]\n"
        "  B={0}  V[0 ; 2]\n"
        "weights: {V[0 ; 2]}\n"
    )


def test_red_unknown_tsv(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "red",
            "--ell", "5", "--f", "1", "--n1", "1", "--n2", "0",
            "--ext", "unknown", "--format", "tsv",
        ],
    )
    assert code == 0
    assert out == (
        "part\ta\tb\tweight\n"
        "certain\t0\t5\tV[0 ; 5]\n"
        "possible\t0\t1\tV[0 ; 1]\n"
        "possible\t1\t3\tV[1 ; 3]\n"
    )


def test_red_undecidable_dim_renders_bounds(capsys):
    # (2, 2) with n1 = n2 = 0 has an undecidable slot rendered as a range
    code, out, _ = run_cli(
        capsys,
        [
            "red",
            "--ell", "2", "--f", "2", "--n1", "0", "--n2", "0",
            "--ext", "unknown", "--format", "pretty",
        ],
    )
    assert code == 0
    assert "dim=1..2" in out


# ---------------------------------------------------------------------------
# qtable


@pytest.mark.parametrize("ell", QTABLE_PRIMES)
def test_qtable_pretty_matches_golden(capsys, ell):
    golden = (GOLDEN / f"qtable_ell{ell}.txt").read_text(encoding="utf-8")
    code, out, _ = run_cli(capsys, ["qtable", "--ell", str(ell), "--format", "pretty"])
    assert code == 0
    assert out == golden


def test_qtable_spotlight_rows(capsys):
    _, out, _ = run_cli(capsys, ["qtable", "--ell", "5", "--format", "pretty"])
    assert "ell=5 b=3 shape=split weights={V[3 ; 1], V[0 ; 3], V[3 ; 5]}" in out
    assert "ell=5 b=1 shape=tres weights={V[0 ; 5]}" in out


def test_qtable_json_row_count(capsys):
    expected_rows = {2: 4, 3: 7, 5: 13, 7: 19, 11: 31, 13: 37}
    for ell, count in expected_rows.items():
        _, out, _ = run_cli(capsys, ["qtable", "--ell", str(ell)])
        payload = json.loads(out)
        assert len(payload) == count
        assert all(row["ell"] == ell for row in payload)


def test_qtable_rejects_composite(capsys):
    code, _, err = run_cli(capsys, ["qtable", "--ell", "9"])
    assert code == 1
    assert "error:" in err


# ---------------------------------------------------------------------------
# global


GLOBAL_DATUM = {
    "ell": 3,
    "primes": [
        {"f": 1, "case": "irreducible", "n": 1},
        {"f": 1, "case": "reducible", "n1": 1, "n2": 0, "ext": "unknown"},
    ],
}


def test_global_from_file(capsys, tmp_path):
    src = tmp_path / "datum.json"
    src.write_text(json.dumps(GLOBAL_DATUM), encoding="utf-8")
    code, out, _ = run_cli(capsys, ["global", "--input", str(src)])
    assert code == 0
    payload = json.loads(out)
    assert payload["ell"] == 3
    assert len(payload["certain"]) == 2
    assert len(payload["possible"]) == 6
    assert payload["certain"][0] == [
        {"ell": 3, "f": 1, "a": 0, "b": [1]},
        {"ell": 3, "f": 1, "a": 0, "b": [3]},
    ]


def test_global_stdin_matches_file(capsys, tmp_path, monkeypatch):
    src = tmp_path / "datum.json"
    src.write_text(json.dumps(GLOBAL_DATUM), encoding="utf-8")
    _, from_file, _ = run_cli(capsys, ["global", "--input", str(src)])
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(GLOBAL_DATUM)))
    code, from_stdin, _ = run_cli(capsys, ["global", "--stdin"])
    assert code == 0
    assert from_stdin == from_file


def test_global_pretty(capsys, tmp_path):
    src = tmp_path / "datum.json"
    src.write_text(json.dumps(GLOBAL_DATUM), encoding="utf-8")
    code, out, _ = run_cli(capsys, ["global", "--input", str(src), "--format", "pretty"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "ell=3 primes=2 certain=2 possible=6"
    assert lines[1] == "  certain  (V[0 ; 1], V[0 ; 3])"
    assert lines[2] == "  certain  (V[0 ; 3], V[0 ; 3])"
    assert sum(1 for ln in lines if ln.startswith("  possible")) == 6


def test_global_requires_source(capsys):
    code, _, err = run_cli(capsys, ["global"])
    assert code == 1
    assert "provide --stdin or --input" in err


def test_global_bad_json(capsys, tmp_path):
    src = tmp_path / "broken.json"
    src.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(capsys, ["global", "--input", str(src)])
    assert code == 1
    assert "error:" in err


def test_global_bad_case(capsys, tmp_path):
    src = tmp_path / "datum.json"
    src.write_text(
        json.dumps({"ell": 3, "primes": [{"f": 1, "case": "mystery", "n": 1}]}),
        encoding="utf-8",
    )
    code, _, err = run_cli(capsys, ["global", "--input", str(src)])
    assert code == 1
    assert "error:" in err


def test_global_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, ["global", "--input", str(tmp_path / "absent.json")])
    assert code == 1
    assert "error:" in err


# ---------------------------------------------------------------------------
# factor


def test_factor_json_frozen(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "factor",
            "--ell", "3", "--q-mod-ell", "2",
            "--shape", "cyc_twist_ext", "--ext-nonzero",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "extension"
    assert payload["split"] is False
    assert payload["sub"] == "chi_inv_det"
    assert payload["quot"] == "chi_inv_omega_inv_det"
    assert payload["ext_space_dim"] == 1
    assert len(payload["notes"]) == 1


def test_factor_stdin_matches_flags(capsys, monkeypatch):
    _, from_flags, _ = run_cli(
        capsys,
        [
            "factor",
            "--ell", "3", "--q-mod-ell", "2",
            "--shape", "cyc_twist_ext", "--ext-nonzero",
        ],
    )
    blob = json.dumps(
        {"ell": 3, "q_mod_ell": 2, "shape": "cyc_twist_ext", "ext_nonzero": True}
    )
    monkeypatch.setattr(sys, "stdin", io.StringIO(blob))
    code, from_stdin, _ = run_cli(capsys, ["factor", "--stdin"])
    assert code == 0
    assert from_stdin == from_flags


def test_factor_jl_pretty(capsys):
    code, out, _ = run_cli(
        capsys,
        ["factor", "--ell", "5", "--q-mod-ell", "3", "--shape", "irreducible",
         "--format", "pretty"],
    )
    assert code == 0
    assert out == "kind=jl_reduction\n"


def test_factor_requires_shape_flags(capsys):
    code, _, err = run_cli(capsys, ["factor", "--ell", "3"])
    assert code == 1
    assert "factor needs --shape and --q-mod-ell" in err


def test_factor_invalid_combination(capsys):
    # a split extension class cannot simultaneously be nonzero
    code, _, err = run_cli(
        capsys,
        ["factor", "--ell", "3", "--q-mod-ell", "2",
         "--shape", "cyc_twist_ext", "--split", "--ext-nonzero"],
    )
    assert code == 1
    assert err.startswith("error: InvalidFactorInput")


# ---------------------------------------------------------------------------
# verify


def test_verify_pass_exit_zero(capsys):
    code, out, err = run_cli(
        capsys, ["verify", "counts-irred", "--ell", "3", "--f-max", "1"]
    )
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 1
    assert reports[0]["kind"] == "counts-irred"
    assert reports[0]["mismatch_count"] == 0
    assert reports[0]["checked"] == 6
    assert "elapsed_s" not in reports[0]
    assert "[counts-irred] elapsed" in err


def test_verify_alias_expands_in_order(capsys):
    code, out, _ = run_cli(capsys, ["verify", "counts", "--ell", "3", "--f-max", "1"])
    assert code == 0
    reports = json.loads(out)
    assert [r["kind"] for r in reports] == ["counts-irred", "counts-red"]


def test_verify_pretty_line(capsys):
    code, out, _ = run_cli(
        capsys,
        ["verify", "injectivity-red", "--ell", "3", "--f-max", "1",
         "--format", "pretty"],
    )
    assert code == 0
    assert out == "kind=injectivity-red tasks=1 checked=2 mismatches=0 PASS\n"


def test_verify_budget_exceeded_exit_one(capsys):
    code, out, err = run_cli(
        capsys,
        ["verify", "counts-irred", "--ell", "13", "--f-max", "3", "--budget", "100"],
    )
    assert code == 1
    assert out == ""
    assert err.startswith("error: BudgetExceeded")


def test_verify_mismatch_exit_two(capsys, monkeypatch):
    fake = sweeps.VerificationReport(
        kind="counts-irred",
        tasks=[(3, 1)],
        checked=6,
        mismatch_count=1,
        mismatches=[{"ell": 3, "f": 1, "n": 1}],
        elapsed_s=0.0,
    )
    monkeypatch.setattr(sweeps, "verify_sweep", lambda *a, **kw: fake)
    code, out, _ = run_cli(
        capsys,
        ["verify", "counts-irred", "--ell", "3", "--f-max", "1", "--format", "pretty"],
    )
    assert code == 2
    assert "FAIL" in out
    assert '  witness: {"ell": 3, "f": 1, "n": 1}' in out


def test_verify_unknown_kind(capsys):
    code, _, err = run_cli(capsys, ["verify", "sorcery", "--ell", "3"])
    assert code == 1
    assert "unknown verification kind" in err


def test_verify_bad_ell_list(capsys):
    for bad in ["3;5", ""]:
        code, _, err = run_cli(capsys, ["verify", "counts-irred", "--ell", bad])
        assert code == 1
        assert "error:" in err


# ---------------------------------------------------------------------------
# shared plumbing


def test_out_writes_file_and_silences_stdout(capsys, tmp_path):
    dest = tmp_path / "weights.json"
    code, out, _ = run_cli(
        capsys,
        ["irred", "--ell", "3", "--f", "1", "--n", "2", "--out", str(dest)],
    )
    assert code == 0
    assert out == ""
    text = dest.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert json.loads(text) == [
        {"ell": 3, "f": 1, "a": 0, "b": [2]},
        {"ell": 3, "f": 1, "a": 1, "b": [2]},
    ]


def test_repeated_runs_byte_identical(capsys):
    argvs = [
        ["irred", "--ell", "5", "--f", "2", "--n", "7", "--labels"],
        ["verify", "counts", "--ell", "2,3", "--f-max", "2"],
        ["qtable", "--ell", "7", "--format", "tsv"],
    ]
    for argv in argvs:
        _, first, _ = run_cli(capsys, argv)
        _, second, _ = run_cli(capsys, argv)
        assert first == second


def test_usage_errors_exit_one_not_two(capsys):
    # argparse would normally exit with status 2 on usage problems; the
    # contract reserves 2 for verification mismatches
    bad_argvs = [
        ["irred", "--ell", "3", "--f", "1"],  # missing --n
        ["irred", "--ell", "3", "--f", "1", "--n", "1", "--format", "yaml"],
        ["nonsense"],
        [],
    ]
    for argv in bad_argvs:
        code, _, err = run_cli(capsys, argv)
        assert code == 1, argv
        assert "error:" in err
