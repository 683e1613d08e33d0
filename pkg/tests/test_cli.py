import json
import logging

import pytest

from motivic import cli
from motivic.extension_classes import KatoPair
from motivic.log_model import ModelAlgebra
from motivic.motive import Motive, tate_motive


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return _write


def invoke(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    return code, json.loads(out)


def without_timing(rep):
    return {k: v for k, v in rep.items() if k != "timing"}


class TestCommands:
    def test_kato_pair_tate(self, capsys, write):
        path = write("t.json", tate_motive(2, 5, 2, 3).to_dict())
        code, rep = report(capsys, "kato-pair", "--motive", path, "--n", "5")
        assert code == 0
        pair = rep["results"]["kato_pair"]
        assert pair["classical"]["cls"] == [[{"c": "2/1", "k": 0}]]
        assert pair["N"] == [[3]]
        assert rep["results"]["extends_over_R"] is False
        assert all(i["passed"] for i in rep["invariants"])
        assert KatoPair.from_dict(pair) == KatoPair.from_dict(json.loads(json.dumps(pair)))

    def test_model_algebra_pi(self, capsys, write):
        path = write("pi.json", tate_motive(1, 1, 1, 0).to_dict())
        code, rep = report(capsys, "model-algebra", "--motive", path, "--n", "5")
        assert code == 0
        table = rep["results"]["algebra"]["b"][0]
        assert [table[str(a)]["k"] for a in range(5)] == [0, 1, 2, 3, 4]
        assert all(table[str(a)]["c"] == "1/1" for a in range(5))
        alg = ModelAlgebra.from_dict(rep["results"]["algebra"])
        assert alg.to_dict() == rep["results"]["algebra"]

    def test_monodromy(self, capsys, write):
        m = Motive.from_dict({"r": 2, "d": 1, "entries": [[{"c": "3", "k": 2}, {"c": "1/2", "k": -1}]]})
        code, rep = report(capsys, "monodromy", "--motive", write("m.json", m.to_dict()))
        assert code == 0
        assert rep["results"]["mu"] == [[2, -1]]
        assert rep["results"]["nu_dual"] == [[2], [-1]]
        assert rep["results"]["good_reduction"] is False

    def test_decompose(self, capsys, write):
        m = {"r": 2, "d": 1, "entries": [[{"c": "3", "k": 2}, {"c": "1/2", "k": -1}]]}
        code, rep = report(capsys, "decompose", "--motive", write("m.json", m))
        assert code == 0
        assert rep["results"]["u1"]["entries"] == [[{"c": "3/1", "k": 0}, {"c": "1/2", "k": 0}]]
        assert rep["results"]["u_plus"]["entries"] == [[{"c": "1/1", "k": 2}, {"c": "1/1", "k": 0}]]
        assert rep["results"]["u_minus"]["entries"] == [[{"c": "1/1", "k": 0}, {"c": "1/1", "k": -1}]]

    def test_eta_class(self, capsys, write):
        path = write("t.json", tate_motive(-5, 4, 1, 2).to_dict())
        code, rep = report(capsys, "eta-class", "--motive", path, "--n", "4")
        assert code == 0
        assert rep["results"]["class"]["cls"] == [[{"c": "-5/1", "k": 2}]]

    def test_dieudonne(self, capsys, write):
        code, rep = report(capsys, "dieudonne", "--mu", write("mu.json", [[13]]), "--p", "5", "--m", "2")
        assert code == 0
        assert rep["results"]["N"] == [[0, 0], [13, 0]]
        assert {i["name"] for i in rep["invariants"]} >= {"FV=p", "VF=p", "N^2=0", "FNV=N"}

    def test_dieudonne_object_form(self, capsys, write):
        code, rep = report(capsys, "dieudonne", "--mu", write("mu.json", {"mu": [[1, 2]]}), "--p", "3", "--m", "1")
        assert code == 0 and rep["results"]["N"][1][0] == 1 and rep["results"]["N"][2][0] == 2

    def test_verify_all(self, capsys):
        code, rep = report(capsys, "verify", "--suite", "all", "--seed", "0", "--size", "10")
        assert code == 0
        assert rep["seed"] == 0
        assert set(rep["results"]) == {"motive", "extension_classes", "log_model", "cocycles", "dieudonne"}
        assert all(i["passed"] for i in rep["invariants"])


class TestErrors:
    def test_parse_error_location(self, capsys, write):
        path = write("bad.json", '{"r": 1,\n  "d": }')
        code, out, err = invoke(capsys, "monodromy", "--motive", path)
        assert code == 1 and out == ""
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["error"] == "parse"
        assert (payload["line"], payload["column"]) == (2, 8)

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = invoke(capsys, "monodromy", "--motive", str(tmp_path / "nope.json"))
        assert code == 1 and json.loads(err)["error"] == "io"

    def test_invalid_motive(self, capsys, write):
        code, _, err = invoke(capsys, "monodromy", "--motive", write("m.json", {"r": 1}))
        assert code == 1 and json.loads(err)["error"] == "input"

    def test_limit_points(self, capsys, write):
        m = {"r": 3, "d": 1, "entries": [[{"c": "1", "k": 1}] * 3]}
        code, _, err = invoke(capsys, "model-algebra", "--motive", write("m.json", m), "--n", "5", "--limit-points", "100")
        payload = json.loads(err)
        assert code == 1 and payload["error"] == "limit" and payload["points"] == 125

    def test_factor_cap(self, capsys, write):
        m = {"r": 1, "d": 1, "entries": [[{"c": str(2**64 + 1), "k": 0}]]}
        code, _, err = invoke(capsys, "eta-class", "--motive", write("m.json", m), "--n", "2")
        assert code == 1 and json.loads(err)["error"] == "limit"

    def test_not_prime(self, capsys, write):
        code, _, err = invoke(capsys, "dieudonne", "--mu", write("mu.json", [[1]]), "--p", "4", "--m", "1")
        assert code == 1 and json.loads(err)["error"] == "input"

    def test_non_integer_mu(self, capsys, write):
        code, _, _ = invoke(capsys, "dieudonne", "--mu", write("mu.json", [[1.5]]), "--p", "3", "--m", "1")
        assert code == 1

    def test_missing_n(self, capsys, write):
        code, _, err = invoke(capsys, "eta-class", "--motive", write("t.json", tate_motive(2, 2, 0, 1).to_dict()))
        assert code == 1 and json.loads(err)["error"] == "usage"

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 1

    def test_invariant_failure_exit_2(self, capsys, write, monkeypatch):
        monkeypatch.setattr(cli, "push_theorem_check", lambda m, n: False)
        path = write("t.json", tate_motive(2, 5, 2, 3).to_dict())
        code, rep = report(capsys, "kato-pair", "--motive", path, "--n", "5")
        assert code == 2
        failed = [i for i in rep["invariants"] if not i["passed"]]
        assert failed and failed[0]["counterexample"] == {"motive": rep["inputs"]["motive"], "n": 5}


class TestReports:
    def test_deterministic(self, capsys, write):
        path = write("t.json", tate_motive("3/7", 3, 1, 2).to_dict())
        _, a = report(capsys, "kato-pair", "--motive", path, "--n", "3", "--seed", "7")
        _, b = report(capsys, "kato-pair", "--motive", path, "--n", "3", "--seed", "7")
        assert json.dumps(without_timing(a), sort_keys=True) == json.dumps(without_timing(b), sort_keys=True)
        assert a["seed"] == 7 and len(a["inputs_digest"]) == 64

    def test_verify_deterministic(self, capsys):
        _, a = report(capsys, "verify", "--suite", "cocycles", "--seed", "3", "--size", "20")
        _, b = report(capsys, "verify", "--suite", "cocycles", "--seed", "3", "--size", "20")
        assert without_timing(a) == without_timing(b)

    def test_digest_depends_on_seed(self, capsys, write):
        path = write("t.json", tate_motive(2, 2, 0, 1).to_dict())
        _, a = report(capsys, "monodromy", "--motive", path, "--seed", "1")
        _, b = report(capsys, "monodromy", "--motive", path, "--seed", "2")
        assert a["inputs_digest"] != b["inputs_digest"]

    def test_out_file(self, capsys, write, tmp_path):
        path = write("t.json", tate_motive(2, 5, 2, 3).to_dict())
        out = tmp_path / "report.json"
        code, stdout, _ = invoke(capsys, "kato-pair", "--motive", path, "--n", "5", "--out", str(out))
        assert code == 0 and stdout == ""
        assert json.loads(out.read_text())["results"]["kato_pair"]["N"] == [[3]]

    def test_human(self, capsys, write):
        path = write("t.json", tate_motive(2, 5, 2, 3).to_dict())
        code, out, _ = invoke(capsys, "kato-pair", "--motive", path, "--n", "5", "--human")
        assert code == 0
        assert "command: kato-pair" in out and "PASS push-out theorem" in out

    def test_motive_round_trip(self, capsys, write):
        m = {"r": 2, "d": 2, "entries": [[{"c": "2", "k": 1}, {"c": "-1", "k": 0}],
                                         [{"c": "5/3", "k": -2}, {"c": "7", "k": 4}]]}
        _, rep = report(capsys, "monodromy", "--motive", write("m.json", m))
        echoed = rep["inputs"]["motive"]
        assert Motive.from_dict(echoed) == Motive.from_dict(m)
        assert Motive.from_dict(echoed).to_dict() == echoed

    def test_log_level(self, capsys, write, monkeypatch):
        monkeypatch.setenv("MOTIVIC_LOG_LEVEL", "info")
        root = logging.getLogger()
        saved = (root.level, list(root.handlers))
        root.handlers.clear()
        try:
            path = write("t.json", tate_motive(2, 2, 0, 1).to_dict())
            code, _, err = invoke(capsys, "monodromy", "--motive", path)
            assert code == 0 and "running monodromy" in err
        finally:
            root.handlers[:] = saved[1]
            root.setLevel(saved[0])
