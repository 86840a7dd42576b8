import json

import pytest

from memorygame.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_n100(capsys):
    code, out, _ = run(capsys, "exact", "--n", "100")
    assert code == 0
    value = float(out.split("expected_length: ")[1].split()[0])
    assert round(value, 4) == 160.8589


def test_exact_n1(capsys):
    code, out, _ = run(capsys, "exact", "--n", "1", "--format", "json")
    d = json.loads(out)
    assert d["expected_length"]["fraction"] == "1"
    assert d["expected_lucky"]["fraction"] == "1"
    assert d["expected_first_match"]["fraction"] == "2"


def test_exact_n2_json(capsys):
    code, out, _ = run(capsys, "exact", "--n", "2", "--format", "json", "--table")
    d = json.loads(out)
    assert [d[k]["fraction"] for k in ("expected_length", "expected_lucky", "expected_first_match")] == ["8/3", "2/3", "8/3"]
    assert d["rows"][0]["j"] == 1 and d["rows"][0]["el"] is None
    assert d["rows"][1]["eb"] == "2/3"


def test_exact_csv_table(capsys):
    code, out, _ = run(capsys, "exact", "--n", "3", "--format", "csv", "--table")
    lines = out.splitlines()
    assert lines[0] == "j,eb,eb_decimal,el,el_decimal,db,db_decimal,dl,dl_decimal"
    assert len(lines) == 1 + 5


@pytest.mark.parametrize("argv", [("exact", "--n", "0"), ("asymptotic", "--n", "0"), ("verify", "--max-n", "0"),
                                  ("exact", "--n", "x"), ("simulate", "--n", "3", "--trials", "-1")])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2


def test_asymptotic(capsys):
    code, out, _ = run(capsys, "asymptotic", "--n", "100")
    assert code == 0
    assert round(float(out.split(": ")[1]), 4) == 160.8593


def test_asymptotic_with_exact(capsys):
    code, out, _ = run(capsys, "asymptotic", "--n", "10", "--with-exact", "--format", "json")
    d = json.loads(out)
    assert {"asymptotic_length", "expected_length", "epsilon"} <= set(d)
    assert abs(d["epsilon"]) <= d["epsilon_bound"]


def test_simulate_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "simulate", "--n", "2", "--trials", "100", "--seed", "7", "-o", str(a))[0] == 0
    assert run(capsys, "simulate", "--n", "2", "--trials", "100", "--seed", "7", "-o", str(b))[0] == 0
    assert a.read_text() == b.read_text()
    assert a.read_text().startswith("length,count")


def test_simulate_n20_mean(tmp_path, capsys):
    out = tmp_path / "h.json"
    code, line, _ = run(capsys, "simulate", "--n", "20", "--trials", "100000", "--seed", "1",
                        "--format", "json", "-o", str(out))
    assert code == 0 and "mean=" in line
    from memorygame.exact import expected_length_exact

    d = json.loads(out.read_text())
    assert abs(d["mean"] - float(expected_length_exact(20))) <= 3 * d["standard_error"]


def test_simulate_workers_env(monkeypatch, capsys):
    monkeypatch.setenv("MEMGAME_WORKERS", "3")
    code, out, _ = run(capsys, "simulate", "--n", "3", "--trials", "30", "--format", "json")
    assert json.loads(out)["workers"] == 3
    monkeypatch.setenv("MEMGAME_WORKERS", "zero")
    assert run(capsys, "simulate", "--n", "3", "--trials", "30")[0] == 2


def test_simulate_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", "--n", "2", "--trials", "10", "-o", str(tmp_path / "missing" / "x.csv"))
    assert code != 0 and "cannot write" in err


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "7", "--oracle")
    assert code == 0 and "checks passed" in out


def test_verify_200(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "200")
    assert code == 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    from memorygame import verify

    def broken(max_n):
        r = verify.Report()
        r.add("fake check", 3, False, "injected", j=4)
        return r

    monkeypatch.setattr(verify, "verify_all", broken)
    code, out, _ = run(capsys, "verify", "--max-n", "3")
    assert code == 1 and "FAIL fake check (n=3, j=4)" in out


def test_play_example(capsys):
    code, out, _ = run(capsys, "play", "1 2 1 6 2 3 3 5 4 4 5 6")
    assert "moves: 9" in out and "blocks: 3,2,2,3,1,1" in out


def test_play_extremal(capsys):
    assert "moves: 5" in run(capsys, "play", "--extremal", "shortest", "--n", "5")[1]
    assert "moves: 9" in run(capsys, "play", "--extremal", "longest", "--n", "5")[1]
    assert run(capsys, "play", "--extremal", "longest")[0] == 2


def test_play_json(capsys):
    code, out, _ = run(capsys, "play", "[1,2,1,3,2,3]", "--format", "json", "-v")
    d = json.loads(out)
    assert d["moves"] == 5 and len(d["log"]) == 5


def test_play_malformed(capsys):
    assert run(capsys, "play", "1 2 3")[0] == 2
    assert run(capsys, "play")[0] == 2


def test_export(capsys):
    code, out, _ = run(capsys, "export", "--n", "2", "--format", "json")
    d = json.loads(out)
    assert d["n"] == 2 and d["rows"][2]["el"] == "1/3"


def test_oracle_cmd(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "2")
    assert json.loads(out)["length_distribution"] == {"2": 1, "3": 2}
    code, out, _ = run(capsys, "oracle", "--n", "3", "--format", "csv")
    assert out.startswith("length,count")
    assert run(capsys, "oracle", "--n", "9")[0] == 2
