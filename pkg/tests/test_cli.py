"""Exit codes and JSON payloads of the semiring-fx command line."""

import json
import shutil
import subprocess
from pathlib import Path

import pytest

from semiring_fx.cli import main

PRESENTATIONS = Path(__file__).resolve().parent.parent / "presentations"

FLIP_SRC = "x <- flip; return x"
SWAP_LEFT = "#io {m} x <- flip; output m; return x"
SWAP_RIGHT = "#io {m} output m; x <- flip; return x"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- denote ----------------------------------------------------------------------


def test_denote_flip_json(capsys, tmp_path):
    f = write(tmp_path, "flip.sfx", FLIP_SRC)
    code, out, err = run(capsys, ["denote", f])
    assert code == 0
    assert out == ('{"theory": "T(bern_nat, one)", '
                   '"weights": {"H": "X", "T": "Xb"}}\n')
    assert err == ""


def test_denote_text_mode(capsys, tmp_path):
    f = write(tmp_path, "flip.sfx", FLIP_SRC)
    code, out, _ = run(capsys, ["denote", "--text", f])
    assert code == 0
    assert out.splitlines() == ["T(bern_nat, one)", "{H: X, T: Xb}"]


def test_denote_empty_program(capsys, tmp_path):
    f = write(tmp_path, "unit.sfx", "return ()")
    code, out, _ = run(capsys, ["denote", f])
    assert code == 0
    assert json.loads(out) == {"theory": "T(nat, one)", "weights": {"()": "1"}}


def test_denote_diagnoses_parse_errors(capsys, tmp_path):
    f = write(tmp_path, "bad.sfx", "x <- flip return x")
    code, out, err = run(capsys, ["denote", f])
    assert code == 2
    assert out == ""
    assert err.startswith("error: 1:11:")


def test_denote_unsupported_combination(capsys, tmp_path):
    f = write(tmp_path, "mix.sfx",
              "#io {m} #state {s} output m; write s; return ()")
    code, out, err = run(capsys, ["denote", f])
    assert code == 2
    assert "no theory for effect combination" in err


def test_denote_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, ["denote", str(tmp_path / "absent.sfx")])
    assert code == 2
    assert err.startswith("error:")


# -- equiv -----------------------------------------------------------------------


def test_equiv_commuting_swap(capsys, tmp_path):
    f1 = write(tmp_path, "a.sfx", SWAP_LEFT)
    f2 = write(tmp_path, "b.sfx", SWAP_RIGHT)
    code, out, _ = run(capsys, ["equiv", f1, f2])
    assert code == 0
    assert json.loads(out) == {"equivalent": True}


def test_equiv_output_order(capsys, tmp_path):
    f1 = write(tmp_path, "ab.sfx", "#io {a, b} output a; output b; return ()")
    f2 = write(tmp_path, "ba.sfx", "#io {a, b} output b; output a; return ()")
    code, out, _ = run(capsys, ["equiv", f1, f2])
    assert code == 1
    payload = json.loads(out)
    assert payload == {"equivalent": False, "outcome": "()",
                       "left": "{out_a.out_b}", "right": "{out_b.out_a}"}


def test_equiv_arity_mismatch(capsys, tmp_path):
    f1 = write(tmp_path, "one.sfx", "x <- flip; return x")
    f2 = write(tmp_path, "two.sfx", "x <- flip; return (x, x)")
    code, _, err = run(capsys, ["equiv", f1, f2])
    assert code == 2
    assert "result shapes" in err


# -- member ----------------------------------------------------------------------


def test_member_io_trees_positive(capsys, tmp_path):
    f = write(tmp_path, "v.json", json.dumps(
        {"semiring": "io_words(a,b)", "value": {"in_a": 1, "in_b.out_b": 1}}))
    code, out, _ = run(capsys, ["member", f, "io_trees"])
    assert code == 0
    payload = json.loads(out)
    assert payload["member"] is True
    assert payload["tree"] == {
        "node": "in",
        "children": [{"node": "leaf"},
                     {"node": "out", "index": "b", "child": {"node": "leaf"}}],
    }


def test_member_io_trees_negative(capsys, tmp_path):
    f = write(tmp_path, "v.json", json.dumps(
        {"semiring": "io_words(a,b)", "value": {"ε": 2}}))
    code, out, _ = run(capsys, ["member", f, "io_trees"])
    assert code == 1
    assert json.loads(out) == {"member": False}


def test_member_prob_io_unknown(capsys, tmp_path):
    f = write(tmp_path, "v.json", json.dumps(
        {"semiring": "io_weights(a,b)",
         "value": {"in_a": "2/3", "in_b": "2/3"}}))
    code, out, _ = run(capsys, ["member", f, "prob_io_trees"])
    assert code == 3
    assert json.loads(out) == {"member": "unknown"}


def test_member_certificate_verification(capsys, tmp_path):
    f = write(tmp_path, "v.json", json.dumps(
        {"semiring": "io_weights(a,b)",
         "value": {"out_a": "1/2", "out_b": "1/2"}}))
    cert = write(tmp_path, "cert.json", json.dumps({
        "node": "choice",
        "branches": [
            {"weight": "1/2", "tree": {"node": "out", "index": "a",
                                       "child": {"node": "leaf"}}},
            {"weight": "1/2", "tree": {"node": "out", "index": "b",
                                       "child": {"node": "leaf"}}},
        ]}))
    code, out, _ = run(capsys, ["member", f, "prob_io_trees",
                                "--certificate", cert])
    assert code == 0
    assert json.loads(out) == {"member": True, "certificate": "verified"}

    bad = write(tmp_path, "bad.json", json.dumps({"node": "leaf"}))
    code, out, err = run(capsys, ["member", f, "prob_io_trees",
                                  "--certificate", bad])
    assert code == 2
    assert "certificate does not denote" in err


def test_member_row_stochastic_decomposition(capsys, tmp_path):
    f = write(tmp_path, "m.json", json.dumps(
        {"semiring": "mat_rat(s1,s2)",
         "value": [["1/2", "1/2"], ["0", "1"]]}))
    code, out, _ = run(capsys, ["member", f, "row_stochastic"])
    assert code == 0
    payload = json.loads(out)
    assert payload["member"] is True
    assert payload["decomposition"] == [
        {"weight": "1/2", "transformer": {"s1": "s1", "s2": "s2"}},
        {"weight": "1/2", "transformer": {"s1": "s2", "s2": "s2"}},
    ]


def test_member_class_semiring_mismatch(capsys, tmp_path):
    f = write(tmp_path, "n.json", json.dumps({"semiring": "nat", "value": 3}))
    code, _, err = run(capsys, ["member", f, "io_trees"])
    assert code == 2
    assert "not defined over" in err


def test_member_unknown_class_is_usage_error(tmp_path, capsys):
    f = write(tmp_path, "n.json", json.dumps({"semiring": "nat", "value": 3}))
    with pytest.raises(SystemExit) as exc:
        main(["member", f, "open_balls"])
    assert exc.value.code == 2


# -- laws ------------------------------------------------------------------------


def test_laws_pass(capsys):
    code, out, _ = run(capsys, ["laws", "semiring", "--trials", "5",
                                "--seed", "3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["seed"] == 3
    assert payload["suites"] == ["semiring"]
    assert all(check["passed"] for check in payload["checks"])


def test_laws_mutation_is_caught(capsys):
    code, out, _ = run(capsys, ["laws", "semiring", "--trials", "5",
                                "--seed", "3", "--mutate", "bernstein-reduce"])
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    failing = [c for c in payload["checks"] if not c["passed"]]
    assert failing and all("failures" in c for c in failing)


def test_laws_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("SEMIRING_FX_SEED", "99")
    code, out, _ = run(capsys, ["laws", "theory", "--trials", "5"])
    assert code == 0
    assert json.loads(out)["seed"] == 99
    # an explicit flag wins over the environment
    code, out, _ = run(capsys, ["laws", "theory", "--trials", "5",
                                "--seed", "4"])
    assert json.loads(out)["seed"] == 4


# -- oracle ----------------------------------------------------------------------


def test_oracle_equal_with_chain(capsys):
    pres = str(PRESENTATIONS / "state_2.json")
    code, out, _ = run(capsys, ["oracle", pres, "rd_1", "rd_1*wr_1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "equal"
    assert payload["chain"][0] == "rd_1"
    assert payload["chain"][-1] == "rd_1*wr_1"
    assert payload["visited"] >= len(payload["chain"])


def test_oracle_distinct_with_witness(capsys):
    pres = str(PRESENTATIONS / "bernstein.json")
    code, out, _ = run(capsys, ["oracle", pres, "X", "Xb"])
    assert code == 1
    assert json.loads(out) == {"verdict": "distinct",
                               "left": "1/3", "right": "2/3"}


def test_oracle_unknown_under_tiny_bound(capsys):
    pres = str(PRESENTATIONS / "state_2.json")
    code, out, _ = run(capsys, ["oracle", pres, "rd_1", "rd_1*wr_1",
                                "--bound", "10"])
    assert code == 3
    payload = json.loads(out)
    assert payload["verdict"] == "unknown"
    assert payload["visited"] <= 10


def test_oracle_rejects_unknown_generators(capsys):
    pres = str(PRESENTATIONS / "state_2.json")
    code, _, err = run(capsys, ["oracle", pres, "rd_9", "rd_1"])
    assert code == 2
    assert err.startswith("error:")


def test_oracle_tensor_commutation(capsys):
    pres = str(PRESENTATIONS / "half_third_tensor.json")
    code, out, _ = run(capsys, ["oracle", pres, "h*t", "t*h"])
    assert code == 0
    assert json.loads(out)["verdict"] == "equal"


# -- determinism and packaging -----------------------------------------------------


def test_outputs_are_byte_deterministic(capsys, tmp_path):
    f = write(tmp_path, "p.sfx",
              "#io {m} x <- sample [1/2: a, 1/2: b]; output m; return x")
    _, first, _ = run(capsys, ["denote", f])
    _, second, _ = run(capsys, ["denote", f])
    assert first == second
    pres = str(PRESENTATIONS / "state_2.json")
    _, first, _ = run(capsys, ["oracle", pres, "rd_1", "rd_1*wr_1"])
    _, second, _ = run(capsys, ["oracle", pres, "rd_1", "rd_1*wr_1"])
    assert first == second


@pytest.mark.skipif(shutil.which("semiring-fx") is None,
                    reason="console script not installed")
def test_console_script(tmp_path):
    f = write(tmp_path, "flip.sfx", FLIP_SRC)
    proc = subprocess.run(["semiring-fx", "denote", f],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["weights"] == {"H": "X", "T": "Xb"}
