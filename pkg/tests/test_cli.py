import json
from pathlib import Path

import pytest

from fuzzitop.cli import main

SPACES = Path(__file__).resolve().parent.parent / "spaces"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_degree_t2p(capsys):
    assert run(capsys, "degree", "t2p", SPACES / "s1.json") == (0, "0/1", "")


def test_degree_with_arguments(capsys):
    code, out, _ = run(capsys, "degree", "cl_p", SPACES / "s2.json", "--set", "{b}")
    assert code == 0 and out.splitlines() == ["a 1/4", "b 1/1"]
    code, out, _ = run(capsys, "degree", "tau_p", SPACES / "s2.json", "--set", "a", "--json")
    assert json.loads(out) == {"degree": "tau_p", "value": "3/4"}
    code, _, err = run(capsys, "degree", "tau_p", SPACES / "s2.json")
    assert code == 2 and "--set" in err


def test_map_degrees(capsys):
    s2 = SPACES / "s2.json"
    code, out, _ = run(capsys, "degree", "op", s2, "--map", SPACES / "swap.json", "--target", s2)
    # τ_P({a}) = 3/4 maps onto τ_P({b}) = 1/2
    assert code == 0 and out == "3/4"


def test_validate_and_gen_pipeline(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "gen", "--points", 3, "--grid", 4, "--seed", 9)
    assert code == 0
    path = tmp_path / "g.json"
    path.write_text(out)
    assert run(capsys, "validate", path)[0] == 0
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    assert run(capsys, "validate", "-")[0] == 0


def test_invalid_space_exit_codes(capsys):
    bad = SPACES / "bad.json"
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1 and out.startswith("invalid")
    assert run(capsys, "degree", "t2p", bad)[0] == 1
    assert run(capsys, "degree", "t2p", bad, "--allow-invalid")[0] == 0


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "degree", "t2p", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "check", SPACES / "s2.json", "--theorem", "X9")[0] == 2
    assert run(capsys, "eval", SPACES / "s2.json", "-e", "preopen(A)")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["nope"])
    assert info.value.code == 2


def test_eval(capsys):
    assert run(capsys, "eval", SPACES / "s2.json", "-e", "~ open({b})")[1] == "1/2"
    out = run(capsys, "eval", SPACES / "s2.json", "-e", "pnbhd(x, A)", "--bind", "x=a", "--bind", "A={a}")[1]
    assert out == "3/4"


def test_check(capsys):
    code, out, _ = run(capsys, "check", SPACES / "s2.json", "--theorem", "T3.3")
    assert code == 0 and "PASS" in out and "slack=0/1" in out
    code, out, _ = run(capsys, "check", SPACES / "s2.json", "--theorem", "T3.3", "--json")
    assert json.loads(out)["results"][0]["tight"]["args"] == {"A": "{a}"}


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--theorem", "L3.4", "--points", 2, "--grid", 2,
                       "--exhaustive", "--converse", "--json")
    assert code == 0 and json.loads(out)["violations"]
    code, out, _ = run(capsys, "search", "--theorem", "L3.3", "--points", 3, "--grid", 4, "--samples", 20)
    assert code == 0 and "0 violations" in out


def test_product_and_subspace(capsys):
    code, out, _ = run(capsys, "product", SPACES / "s2.json", SPACES / "s2.json")
    doc = json.loads(out)
    assert code == 0 and doc["points"] == ["a|a", "a|b", "b|a", "b|b"]
    code, out, _ = run(capsys, "subspace", SPACES / "s2.json", "--set", "{a}")
    assert json.loads(out)["points"] == ["a"]
    assert run(capsys, "subspace", SPACES / "s2.json", "--set", "{}")[0] == 2
