"""Tests for both homology engines: pinned tables, agreement, gradings."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import symbraid.khscan as khscan
from symbraid.algebra import KhPolynomial, LaurentPoly
from symbraid.braid import BraidWord, PlanarDiagram, standard_closure
from symbraid.jones import jones_closure
from symbraid.khovanov import (
    kh_extrema,
    kh_ranks_closure,
    kh_ranks_closure_cube,
    kh_ranks_diagram,
    unlink_kh,
)

KH_UNKNOT = KhPolynomial({(0, 1): 1, (0, -1): 1})
KH_TREFOIL_RH = KhPolynomial({(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1})
KH_FIG8 = KhPolynomial(
    {(-2, -5): 1, (-1, -1): 1, (0, -1): 1, (0, 1): 1, (1, 1): 1, (2, 5): 1}
)
KH_CINQUEFOIL_RH = KhPolynomial(
    {(0, 3): 1, (0, 5): 1, (2, 7): 1, (3, 11): 1, (4, 11): 1, (5, 15): 1}
)


def knot_words(max_strands=4, max_len=9):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1).flatmap(
                lambda i: st.sampled_from([i, -i])),
            max_size=max_len,
        ).map(lambda ls: BraidWord(n, ls)))


# ---------------------------------------------------------------- pinned


def test_unknot_many_routes():
    assert kh_ranks_closure(BraidWord(1, [])) == KH_UNKNOT
    assert kh_ranks_closure(BraidWord(2, [1])) == KH_UNKNOT
    assert kh_ranks_closure(BraidWord(2, [-1])) == KH_UNKNOT
    assert kh_ranks_closure(BraidWord(3, [1, 2])) == KH_UNKNOT
    assert kh_ranks_closure_cube(BraidWord(2, [1])) == KH_UNKNOT


def test_trefoil_both_engines():
    w = BraidWord(2, [1, 1, 1])
    assert kh_ranks_closure(w) == KH_TREFOIL_RH
    assert kh_ranks_closure_cube(w) == KH_TREFOIL_RH
    assert kh_ranks_closure(w.mirror()) == KH_TREFOIL_RH.mirror()


def test_figure_eight():
    w = BraidWord(3, [1, -2, 1, -2])
    table = kh_ranks_closure(w)
    assert table == KH_FIG8
    assert table == table.mirror()
    assert kh_ranks_closure_cube(w) == KH_FIG8


def test_cinquefoil():
    assert kh_ranks_closure(BraidWord(2, [1] * 5)) == KH_CINQUEFOIL_RH


def test_unlinks():
    assert kh_ranks_closure(BraidWord(2, [])) == unlink_kh(2)
    assert kh_ranks_closure(BraidWord(3, [])) == unlink_kh(3)
    assert unlink_kh(2) == KhPolynomial({(0, -2): 1, (0, 0): 2, (0, 2): 1})


def test_kinked_diagram_free_loops():
    # one-crossing kink diagram, both chiralities, through the cube
    kink = PlanarDiagram([(0, 1, 1, 0)], free_loops=0)
    assert kh_ranks_diagram(kink) == KH_UNKNOT
    assert kh_ranks_diagram(kink.mirror()) == KH_UNKNOT


def test_sixteen_crossing_probe():
    # symmetric-union word whose closure is a thin 10-crossing knot:
    # total rank must be determinant + 1 and the table mirror-symmetric
    w = BraidWord(5, [1, 1, 1, 3, -4, 3, 2, 4, -3, 4, -3, -1, -1, -1, -2, -4])
    table = kh_ranks_closure(w)
    assert table.total_rank() == 82
    assert table == table.mirror()


# ---------------------------------------------------------------- gradings


def test_extrema_trefoil():
    ex = kh_extrema(KH_TREFOIL_RH)
    assert ex == {"i_min": 0, "i_max": 3, "j_min": 1, "j_max": 9}


def test_euler_characteristic_is_jones():
    for letters, n in [
        ([1, 1, 1], 2),
        ([1, -2, 1, -2], 3),
        ([1, 1, 1, 2, 2, 2], 3),
        ([1, 1, -2, 1], 3),
    ]:
        w = BraidWord(n, letters)
        table = kh_ranks_closure(w)
        expect = jones_closure(w) * LaurentPoly({1: 1, -1: 1})
        assert table.euler_poly() == expect


@settings(max_examples=40, deadline=None)
@given(knot_words())
def test_mirror_symmetry(w):
    if not w.is_knot():
        return
    assert kh_ranks_closure(w.mirror()) == kh_ranks_closure(w).mirror()


# ---------------------------------------------------------------- agreement


@settings(max_examples=40, deadline=None)
@given(knot_words())
def test_engines_agree_on_knots(w):
    if not w.is_knot():
        return
    assert kh_ranks_closure(w) == kh_ranks_closure_cube(w)


def test_scan_internal_checks():
    # grading homogeneity and d.d == 0 validated inside the engine
    khscan.DEBUG_CHECKS = True
    try:
        assert khscan.kh_ranks_scan(BraidWord(3, [1, -2, 1, -2])) == KH_FIG8
        assert khscan.kh_ranks_scan(BraidWord(3, [2, -1, 2, 2])) is not None
    finally:
        khscan.DEBUG_CHECKS = False


@settings(max_examples=25, deadline=None)
@given(knot_words(max_strands=3, max_len=7))
def test_markov_moves_preserve_scan(w):
    if not w.is_knot():
        return
    table = kh_ranks_closure(w)
    conj = BraidWord(w.n_strands, [1] + list(w.letters) + [-1])
    stab = BraidWord(w.n_strands + 1, list(w.letters) + [w.n_strands])
    assert kh_ranks_closure(conj) == table
    assert kh_ranks_closure(stab) == table


# ---------------------------------------------------------------- guards


def test_cube_cap(monkeypatch):
    monkeypatch.setenv("SYMBRAID_KHOVANOV_CAP", "3")
    w = BraidWord(2, [1, 1, 1, 1, 1])
    with pytest.raises(ValueError, match="SYMBRAID_KHOVANOV_CAP"):
        kh_ranks_closure_cube(w)
    # the scanning engine does not care about the cube cap
    assert kh_ranks_closure(w) == KH_CINQUEFOIL_RH


def test_scan_object_guard(monkeypatch):
    monkeypatch.setenv("SYMBRAID_SCAN_OBJECTS", "2")
    with pytest.raises(RuntimeError, match="SYMBRAID_SCAN_OBJECTS"):
        kh_ranks_closure(BraidWord(3, [1, -2, 1, -2]))
