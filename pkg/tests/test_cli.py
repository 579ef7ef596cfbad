"""Command line contract: output formats, exit codes, option precedence."""

import json
import os
from pathlib import Path

import pytest

from symbraid.algebra import KhPolynomial, LaurentPoly
from symbraid.braid import BraidWord
from symbraid.cli import main
from symbraid.jones import jones_closure
from symbraid.khovanov import kh_ranks_closure

GOLDEN = Path(__file__).parent / "golden"

TREFOIL_TEXT = "1 1 1"


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    # ambient SYMBRAID_* settings must not leak into the assertions
    for key in list(os.environ):
        if key.startswith("SYMBRAID_"):
            monkeypatch.delenv(key)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------- invariants


def test_invariants_trefoil_matches_golden_text(capsys):
    code, out, _ = run(capsys, "invariants", TREFOIL_TEXT)
    assert code == 0
    assert out == (GOLDEN / "invariants_trefoil.txt").read_text()


def test_invariants_trefoil_matches_golden_json(capsys):
    code, out, _ = run(capsys, "invariants", TREFOIL_TEXT, "--json")
    assert code == 0
    assert out == (GOLDEN / "invariants_trefoil.json").read_text()


def test_invariants_json_round_trips(capsys):
    _, out, _ = run(capsys, "invariants", TREFOIL_TEXT, "--json")
    payload = json.loads(out)
    trefoil = BraidWord(2, [1, 1, 1])
    assert LaurentPoly({e: c for e, c in payload["jones"]}) == \
        jones_closure(trefoil)
    assert KhPolynomial({(i, j): r for i, j, r in payload["kh"]}) == \
        kh_ranks_closure(trefoil)
    assert payload["det"] == 3
    assert payload["kh_qmax"] == 9


def test_invariants_unknot(capsys):
    code, out, _ = run(capsys, "invariants", "", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["det"] == 1
    assert payload["jones"] == [[0, 1]]
    assert payload["kh"] == [[0, -1, 1], [0, 1, 1]]


def test_invariants_bad_word_exits_2(capsys):
    code, _, err = run(capsys, "invariants", "1 1 x")
    assert code == 2
    assert "bad braid word" in err


def test_invariants_link_partial_report(capsys):
    code, out, _ = run(capsys, "invariants", "1 1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["components"] == 2
    assert "det" not in payload
    assert "skipped" in payload["warning"]


def test_invariants_over_cap_drops_khovanov(capsys):
    code, out, _ = run(capsys, "invariants", TREFOIL_TEXT,
                       "--kh-cap", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["det"] == 3
    assert "kh" not in payload
    assert "over cap 2" in payload["warning"]


def test_invariants_deterministic(capsys):
    _, first, _ = run(capsys, "invariants", "2 -1 2 3 -2 1 -2 1 -3")
    _, second, _ = run(capsys, "invariants", "2 -1 2 3 -2 1 -2 1 -3")
    assert first == second


# ------------------------------------------------------------- obstruct


def test_obstruct_10_99_matches_goldens(capsys):
    code, out, _ = run(capsys, "obstruct", "10_99")
    assert code == 1
    assert out == (GOLDEN / "obstruct_10_99.txt").read_text()
    code, out, _ = run(capsys, "obstruct", "10_99", "--json")
    assert code == 1
    assert out == (GOLDEN / "obstruct_10_99.json").read_text()
    payload = json.loads(out)
    assert sorted(row["q_max"] for row in payload["bs3_candidates"]) == \
        [13, 17, 17, 19, 23, 23]


def test_obstruct_unknot_possible(capsys):
    code, out, _ = run(capsys, "obstruct", "unknot", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["overall"] == "possible"
    assert payload["qsum"] == 0


def test_obstruct_6_1_qsum(capsys):
    code, out, _ = run(capsys, "obstruct", "6_1", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["qsum"] == 4
    assert payload["qsum_verdict"] == "none"


def test_obstruct_unknown_name_exits_2(capsys):
    code, _, err = run(capsys, "obstruct", "99_999")
    assert code == 2
    assert "unknown knot name" in err


def test_obstruct_red_row_exits_2(capsys):
    # names present in the table without a braid word cannot be computed
    code, _, err = run(capsys, "obstruct", "11a103")
    assert code == 2
    assert "no braid word" in err


def test_obstruct_det_gate_needs_no_ranks(capsys):
    code, out, _ = run(capsys, "obstruct", TREFOIL_TEXT,
                       "--kh-cap", "2", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["bs3_verdict"] == "obstructed"
    assert payload["qsum_verdict"] == "unavailable"


def test_obstruct_square_det_over_cap_exits_2(capsys):
    code, _, err = run(capsys, "obstruct", "6_1", "--kh-cap", "2")
    assert code == 2
    assert "Khovanov ranks" in err


# --------------------------------------------------------------- search


def test_search_8_20_hits(capsys):
    code, out, _ = run(capsys, "search", "8_20", "--n", "3",
                       "--gamma-max", "4")
    assert code == 0
    assert "n=3 gamma=1 1 1 C1=2 C2=2" in out


def test_search_json_hit_schema(capsys):
    code, out, _ = run(capsys, "search", "8_20", "--n", "3",
                       "--gamma-max", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["target"] == "8_20"
    hit = payload["hits"][0]
    assert set(hit) == {"n", "gamma", "c1", "c2"}
    assert {"n": 3, "gamma": [1, 1, 1], "c1": [2], "c2": [2]} in \
        payload["hits"]


def test_search_no_hit_exits_1(capsys):
    code, out, _ = run(capsys, "search", "10_123", "--n", "3",
                       "--gamma-max", "3")
    assert code == 1
    assert "0 hit(s)" in out


def test_search_env_overrides_and_flag_wins(capsys, monkeypatch):
    monkeypatch.setenv("SYMBRAID_N", "3")
    monkeypatch.setenv("SYMBRAID_GAMMA_MAX", "3")
    _, env_out, _ = run(capsys, "search", "8_20", "--json")
    _, flag_out, _ = run(capsys, "search", "8_20", "--n", "3",
                         "--gamma-max", "3", "--json")
    assert env_out == flag_out
    monkeypatch.setenv("SYMBRAID_N", "2")
    _, out, _ = run(capsys, "search", "8_20", "--n", "3",
                    "--gamma-max", "3", "--json")
    assert json.loads(out)["n_range"] == [3]


def test_search_bad_env_integer_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("SYMBRAID_GAMMA_MAX", "four")
    code, _, err = run(capsys, "search", "8_20", "--n", "3")
    assert code == 2
    assert "SYMBRAID_GAMMA_MAX" in err


# --------------------------------------------------------- verify-table


def test_verify_table_named_rows(capsys):
    code, out, _ = run(capsys, "verify-table", "--rows", "6_1,8_20,9_46")
    assert code == 0
    assert "3/3 rows match" in out


def test_verify_table_json_lines(capsys):
    code, out, _ = run(capsys, "verify-table", "--rows", "6_1,8_20",
                       "--json")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 3
    assert list(lines[0]) == ["name", "strands", "match", "kh_compared",
                              "det", "det_reference", "partial_det",
                              "thm_det_square"]
    assert lines[-1]["all_match"] is True


def test_verify_table_unknown_row_exits_2(capsys):
    code, _, err = run(capsys, "verify-table", "--rows", "nope")
    assert code == 2
    assert "not in the bundled rows" in err


# ----------------------------------------------------------- montesinos


def test_montesinos_matches_golden(capsys):
    code, out, _ = run(capsys, "montesinos", "1/9,1/2,-1/9", "--json")
    assert code == 0
    assert out == (GOLDEN / "montesinos_9_1_2.json").read_text()
    assert json.loads(out)["q_max"] == 23


def test_montesinos_bad_slopes_exit_2(capsys):
    code, _, err = run(capsys, "montesinos", "1/9,1/2")
    assert code == 2
    assert "tangle slopes" in err


# ------------------------------------------------------------ classify3


def test_classify3_braid_matches_golden(capsys):
    code, out, _ = run(capsys, "classify3", "1 -2 1 -2 1 -2")
    assert code == 0
    assert out == (GOLDEN / "classify3_braid.txt").read_text()


def test_classify3_string_input(capsys):
    code, out, _ = run(capsys, "classify3", "3,2,2", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["dual"] == "2,4"
    assert payload["family_b"] == "no"


def test_classify3_rejects_non_alternating(capsys):
    code, _, err = run(capsys, "classify3", "1 1 2")
    assert code == 2
    assert "alternating" in err


# ------------------------------------------------------- global options


def test_json_env_switch(capsys, monkeypatch):
    monkeypatch.setenv("SYMBRAID_JSON", "1")
    _, out, _ = run(capsys, "invariants", TREFOIL_TEXT)
    assert json.loads(out)["det"] == 3


def test_kh_cap_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("SYMBRAID_KH_CAP", "2")
    _, out, _ = run(capsys, "invariants", TREFOIL_TEXT, "--kh-cap", "16",
                    "--json")
    assert "kh" in json.loads(out)


def test_table_flag_reads_alternate_csv(capsys, tmp_path):
    alt = tmp_path / "mine.csv"
    alt.write_text("name,braid_word,strands,det\npet,1 1 1,2,3\n")
    code, out, _ = run(capsys, "obstruct", "pet", "--table", str(alt),
                       "--json")
    assert code == 1
    assert json.loads(out)["det"] == 3


def test_help_and_usage_exit_codes(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()
    assert main(["invariants"]) == 2
    capsys.readouterr()
