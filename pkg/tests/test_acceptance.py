"""The nine acceptance gates.

Each test prints one ``ACCEPTANCE Cn: PASS`` or ``FAIL`` line directly to
the terminal (bypassing capture) and enforces its wall-clock budget.
"""

import itertools
import sys
import time
from contextlib import contextmanager
from math import gcd

import pytest

import test_properties as props
from symbraid.algebra import KhPolynomial, LaurentPoly
from symbraid.braid import BraidWord
from symbraid.cli import main
from symbraid.jones import connected_sum, determinant, jones_closure
from symbraid.khovanov import kh_ranks_closure, kh_ranks_diagram
from symbraid.rational import (
    MontesinosSpec,
    TwoBridge,
    kh_formula,
    montesinos_diagram,
    partial_knot_candidates,
    twobridge_jones,
)
from symbraid.su import (
    fingerprint_of_braid,
    load_knot_table,
    load_su_table,
    obstruct_bs3,
    qsum_obstruction,
    verify_table,
)


ACCEPTANCE_LINES: list[str] = []


@contextmanager
def gate(name: str, budget: float):
    t0 = time.time()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.time() - t0
        verdict = "PASS" if ok and elapsed <= budget else "FAIL"
        line = (f"ACCEPTANCE {name}: {verdict} "
                f"({elapsed:.1f} s, budget {budget:.0f} s)")
        ACCEPTANCE_LINES.append(line)
        print(line, file=sys.__stdout__, flush=True)
    if elapsed > budget:
        pytest.fail(f"{name} took {elapsed:.1f} s, budget {budget:.0f} s")


def _mirror_square(p: int, q: int) -> LaurentPoly:
    v = twobridge_jones(TwoBridge(p, q))
    return connected_sum(v, v.mirror())


def test_c1_unknot_baseline():
    with gate("C1", 1.0):
        unknot = BraidWord(1, [])
        assert kh_ranks_closure(unknot) == \
            KhPolynomial({(0, -1): 1, (0, 1): 1})
        v = jones_closure(unknot)
        assert v == LaurentPoly.one()
        assert determinant(v) == 1


def test_c2_nine_one_mirror_square_polynomial():
    coeffs = [-1, 1, -2, 3, -4, 5, -6, 7, -7, 9,
              -7, 7, -6, 5, -4, 3, -2, 1, -1]
    frozen = LaurentPoly(dict(zip(range(-18, 19, 2), coeffs)))
    with gate("C2", 1.0):
        assert _mirror_square(9, 1) == frozen


def test_c3_extrema_and_obstructions():
    with gate("C3", 120.0):
        v91 = _mirror_square(9, 1)
        v94 = _mirror_square(9, 4)
        assert kh_formula(MontesinosSpec(9, 1, 0), v91).q_max == 19
        assert kh_formula(MontesinosSpec(9, 1, 2), v91).q_max == 23
        assert kh_formula(MontesinosSpec(9, 4, 0), v94).q_max == 13
        assert kh_formula(MontesinosSpec(9, 4, 2), v94).q_max == 17

        su_word = {r.name: r for r in load_su_table()}["10_99"].su.word
        assert len(su_word.letters) == 16
        table = kh_ranks_closure(su_word)
        assert table.q_max == 11
        assert table.q_min == -11

        records = load_knot_table()
        for name in ("10_99", "10_123"):
            fp = fingerprint_of_braid(records[name].braid)
            assert obstruct_bs3(fp).verdict == "obstructed"


def test_c4_partial_knot_candidate_sets():
    with gate("C4", 1.0):
        assert partial_knot_candidates(81) == \
            {TwoBridge(9, 1), TwoBridge(9, 4)}
        assert partial_knot_candidates(121) == \
            {TwoBridge(11, 1), TwoBridge(11, 3), TwoBridge(11, 5)}
        assert partial_knot_candidates(1) == {TwoBridge(1, 0)}


C5_ROWS = ("6_1", "8_8", "8_9", "8_20", "9_27", "9_46", "10_48",
           "10_129", "10_155", "10_99", "11n50", "11n132")


def test_c5_table_rows_fingerprint_match():
    with gate("C5", 600.0):
        records = load_knot_table()
        rows = {r.name: r for r in load_su_table()}
        pairs = [(records[name], rows[name].su) for name in C5_ROWS]
        reports = verify_table(pairs, kh=True)
        for report in reports:
            assert report["match"], report
        assert len(reports) == len(C5_ROWS)


def test_c6_search_rediscovers_table_rows(capsys):
    with gate("C6", 300.0):
        rows = {r.name: r for r in load_su_table()}
        for name, n in (("8_20", 3), ("6_1", 4)):
            code = main(["search", name, "--n", str(n), "--gamma-max", "3"])
            out = capsys.readouterr().out
            assert code == 0
            su = rows[name].su
            assert f"n={su.n} {su}" in out


def test_c7_quantum_grading_sums():
    with gate("C7", 600.0):
        records = load_knot_table()
        verdict = qsum_obstruction(fingerprint_of_braid(records["6_1"].braid))
        assert (verdict.total, verdict.verdict) == (4, "none")

        fig8 = kh_ranks_closure(BraidWord(3, [1, -2, 1, -2]))
        assert fig8.q_max + fig8.q_min == 0

        # every knot closure of gamma s2^e gamma^-1 s2^e', |gamma| <= 4
        seen: set[tuple[int, ...]] = set()
        for k in range(5):
            for gamma in itertools.product((1, -1, 2, -2), repeat=k):
                inv = tuple(-g for g in reversed(gamma))
                for e1, e2 in itertools.product((2, -2), repeat=2):
                    letters = gamma + (e1,) + inv + (e2,)
                    word = BraidWord(3, letters)
                    key = word.simplified().letters
                    if key in seen:
                        continue
                    seen.add(key)
                    if word.closure_components() != 1:
                        continue
                    table = kh_ranks_closure(word)
                    assert table.q_max + table.q_min in (0, 8, -8), letters


def test_c8_formula_matches_cube_oracle():
    with gate("C8", 600.0):
        checked = 0
        for p in (3, 5):
            for q in range(1, p):
                if gcd(p, q) != 1:
                    continue
                v = _mirror_square(p, q)
                for n in (0, 1, -1, 2, -2):
                    spec = MontesinosSpec(p, q, n)
                    cube = kh_ranks_diagram(montesinos_diagram(spec))
                    assert kh_formula(spec, v) == cube, (p, q, n)
                    checked += 1
        assert checked == 30


def test_c9_property_suites():
    with gate("C9", 900.0):
        props.CASES.clear()
        props.test_linear_dual_is_an_involution()
        props.test_euler_characteristic_matches_jones()
        props.test_bracket_paths_agree()
        props.test_su_closure_det_is_partial_det_squared()
        props.test_mirror_reflects_ranks()
        props.test_family1_rewrite_identity()
        for suite in ("dual", "euler", "bracket", "su_det",
                      "mirror", "family1"):
            assert props.CASES[suite] >= 1000, (suite, props.CASES[suite])
