import json
import subprocess
import sys
from pathlib import Path

import pytest

from wittlink import cli

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
MALFORMED = sorted((FIXTURES / "malformed").glob("*.form"))


def fx(name):
    return str(FIXTURES / name)


def run(*argv):
    return cli.run(list(argv))


def run_process(*argv):
    proc = subprocess.run([sys.executable, "-m", "wittlink", *argv], capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout


class TestVerbs:
    def test_classify(self):
        code, out = run("classify", fx("n_t_1.form"))
        assert code == 0
        assert out == {"ring": "Zt+", "c1": "t", "c2": "0", "order": 4}

    def test_classify_alpha(self):
        assert run("classify", fx("alpha.form"))[1]["order"] == 4

    def test_classify_minus(self):
        assert run("classify", fx("n_t2_1_minus.form"))[1] == {"ring": "Zt-", "c": "t^2", "order": 2}

    def test_classify_over_integers(self):
        assert run("classify", fx("alpha_at_1.form"))[1] == {"ring": "Z", "rk": 0, "gs": 2, "order": 4}

    def test_invariants(self):
        code, out = run("invariants", fx("alpha_at_1.form"))
        assert code == 0 and out["Rk"] == 0 and out["GS"] == 2
        assert run("invariants", fx("n_t_1.form"))[1]["B"] == ["t", "0"]

    def test_verify_with_generators(self):
        code, out = run("verify-lagrangian", fx("p_t2_1_minus.form"), "--gens", '[["1", "t"]]')
        assert code == 0 and out == {"lagrangian": True, "sublagrangian": True}
        code, out = run("verify-lagrangian", fx("n_t_1.form"), "--gens", '[["0", "1"]]')
        assert out == {"lagrangian": False, "sublagrangian": False}

    def test_verify_search(self):
        code, out = run("verify-lagrangian", fx("p_t6_1_minus.form"))
        assert code == 0 and out["found"] and out["lagrangian"]
        assert run("verify-lagrangian", fx("n_t_1.form"), "--deg-cap", "2")[1] == {"found": False}

    def test_reduce(self):
        code, out = run("reduce", fx("n_t_1_plus_h4.form"))
        assert code == 0
        assert run("classify", json.dumps(out["form"]))[1]["c1"] == "t"

    def test_reduce_obstruction(self):
        code, out = run("reduce", fx("rank1Z4.form"))
        assert code == 1 and out["error"] == "ObstructionNonzero" and out["value"] == "1"

    def test_reduce_with_generators(self):
        code, out = run("reduce", fx("p_t2_1_minus.form"), "--gens", '[["1", "t"]]')
        assert code == 0 and out["form"]["pieces"] == []

    def test_vact(self):
        assert run("vact", fx("n_t_1.form"), "--k", "2")[1]["c1"] == "t^2"
        coord = '{"ring": "Zt+", "c1": "0", "c2": "t"}'
        assert run("vact", coord, "--k", "2")[1] == {"ring": "Zt+", "c1": "0", "c2": "0", "order": 1}
        assert run("vact", '{"ring": "Zt-", "c": "t^2"}', "--k", "2")[1]["error"] == "EvenVerschiebungOnMinusRing"

    def test_dihedral(self):
        code, out = run("dihedral", "--n", "1", "--eps", "-1,-1")
        assert code == 0
        kinds = [s["kind"] for s in out["summands"]]
        assert kinds == ["V-quot", "V-quot", "Z"]
        assert out["summands"][0]["ideal"] == ["4", "2V2-2"]
        assert run("dihedral", "--n", "0", "--eps", "1,-1")[1]["error"] == "BadSignOrder"

    def test_laurent(self):
        code, out = run("laurent", "--n", "0", "--sign", "-")
        assert code == 0 and "notes" in out
        assert run("laurent", "--n", "0")[1] == {"summands": [{"kind": "Z", "mult": 2}]}

    def test_demos(self):
        out = run("demo", "order4")[1]
        assert (out["Rk"], out["GS"], out["order"], out["four_times_zero"]) == (0, 2, 4, True)
        assert run("demo", "obstruction")[1]["Q"] == "1"
        assert run("demo", "minus-lagrangian")[1]["lagrangian"] is True

    def test_ring_flag(self):
        code, out = run("classify", fx("n_t_1.form"), "--ring", "Zt-")
        assert code == 1 and out["error"] == "RingMismatch"

    def test_exp_cap(self):
        code, out = run("classify", fx("n_t_1_plus_h4.form"), "--exp-cap", "1")
        assert code == 1 and out["error"] == "ExponentTooHigh"

    def test_gs_cap(self):
        code, out = run("invariants", fx("alpha_at_1.form"), "--gs-cap", "2")
        assert code == 1 and out["error"] == "ModuleTooLarge"


class TestErrors:
    @pytest.mark.parametrize("path", MALFORMED, ids=lambda p: p.stem)
    def test_malformed_is_structured(self, path):
        code, text = run_process("classify", str(path))
        assert code in (1, 2)
        out = json.loads(text)
        assert set(out) >= {"error", "message"}

    def test_parse_errors_exit_two(self):
        assert run("classify", fx("malformed/bad_json.form"))[0] == 2
        assert run("classify", fx("malformed/bad_poly.form"))[0] == 2
        assert run("classify", "no/such/file.form")[0] == 2

    def test_domain_errors_exit_one(self):
        assert run("classify", fx("malformed/bad_singular.form"))[0] == 1
        assert run("classify", fx("skew_hyperbolic.form"))[0] == 1

    def test_usage(self):
        assert run("bogus")[0] == 2
        assert run("dihedral", "--n", "1")[0] == 2
        assert run("dihedral", "--n", "1", "--eps", "-1")[0] == 2


class TestProcess:
    def test_repeat_runs_identical(self):
        first = run_process("demo", "order4")
        assert first[0] == 0
        assert run_process("demo", "order4") == first
        a = run_process("classify", fx("alpha.form"))
        assert a == run_process("classify", fx("alpha.form"))

    def test_output_file(self, tmp_path):
        target = tmp_path / "report.json"
        code, text = run_process("classify", fx("n_t_1.form"), "--out", str(target))
        assert code == 0 and text == ""
        assert json.loads(target.read_text()) == {"ring": "Zt+", "c1": "t", "c2": "0", "order": 4}

    def test_pretty(self):
        code, text = run_process("classify", fx("n_t_1.form"), "--pretty")
        assert code == 0 and "\n  " in text
        assert json.loads(text)["c1"] == "t"

    def test_compact_sorted(self):
        _, text = run_process("classify", fx("n_t_1.form"))
        assert text == '{"c1":"t","c2":"0","order":4,"ring":"Zt+"}\n'
