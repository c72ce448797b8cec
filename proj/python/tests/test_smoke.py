import json

import pytest

import scid

MODEXP = """
width 8;
func modexp(base, exponent) {
  result = 1;
  i = 0;
  while (i < 8) bound 8 {
    if (exponent & 1) { result = result * base; }
    exponent = exponent >> 1;
    base = base * base;
    i = i + 1;
  }
  return result;
}
"""


def test_interpret_matches_pow():
    for b, e in [(3, 5), (7, 255), (0, 0), (2, 9)]:
        assert scid.interpret(MODEXP, [b, e]) == [pow(b, e, 256)]


def test_path_summary():
    nodes, edges, paths, basis = scid.path_summary(MODEXP)
    assert paths == 256
    assert basis == 9
    assert edges - nodes + 2 >= basis


def test_syntax_error():
    with pytest.raises(ValueError):
        scid.interpret("width 8; func f(a) { while (a) { a = 0; } return a; }", [1])


def test_gametime_report():
    r = scid.gametime("modexp.mc", "zero.json", seed=1)
    assert r["subcommand"] == "gametime"
    assert r["result"]["answer"] == "YES"
    assert r["result"]["n_trials"] == 540
    assert "wall_clock_seconds" not in r
    assert r == scid.gametime("modexp.mc", "zero.json", seed=1)
    tstar = r["result"]["tau_star"]
    no = scid.gametime("modexp.mc", "zero.json", tau=str(int(tstar) - 1), seed=1)
    assert no["result"]["answer"] == "NO"
    assert no["result"]["witness_test"][1] == 255


def test_synth_report(tmp_path):
    log = tmp_path / "audit.jsonl"
    r = scid.synth("xor3.json", "interchange_obs.mc", audit_log=log)
    assert r["result"]["status"] == "SUCCESS"
    assert r["result"]["equivalence"] == "EQUIVALENT"
    assert r["result"]["lines"] == 3
    lines = log.read_text().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["run_outcome"] == r["audit"]["run_outcome"]


def test_switch_report():
    r = scid.switch()
    assert r["result"]["status"] == "SUCCESS"
    assert r["result"]["replay"]["safe"]
    assert r["result"]["replay"]["goal_reached"]
    guards = {g["name"]: g for g in r["result"]["guards"]}
    lo, hi = guards["g_12U"]["box"]["omega"]
    assert abs(lo - 13.29) <= 1.0 and abs(hi - 26.70) <= 1.0


def test_bad_inputs():
    with pytest.raises(Exception):
        scid.gametime("missing.mc", "zero.json")
    with pytest.raises(Exception):
        scid.synth("xor3.json", "builtin:nope")
