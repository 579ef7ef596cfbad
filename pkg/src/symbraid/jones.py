"""Jones polynomials through the Kauffman bracket.

Two independent engines compute the bracket:

* a Temperley-Lieb transfer-matrix pass over the braid word, linear in word
  length with state space bounded by the Catalan numbers (the fast path);
* a brute-force sum over all ``2^c`` smoothings of a planar diagram (the
  oracle path, capped by ``bracket_cap``).

Output convention: variable ``q``, unknot ``1``.  For knots the polynomial
matches the substitution ``t = q^2`` of the classical normalization, so the
graded Euler characteristic of Khovanov homology equals ``(q + q^-1) * V``.
For links of two or more components the bracket exponents are kept verbatim
in ``q`` after writhe correction; in particular the two-component unlink
evaluates to ``-q^2 - q^-2``.
"""

from __future__ import annotations

from . import config
from .algebra import LaurentPoly
from .braid import BraidWord, PlanarDiagram, plat_closure, standard_closure

__all__ = [
    "DELTA",
    "bracket_standard",
    "bracket_plat",
    "bracket_diagram",
    "jones_closure",
    "jones_plat",
    "jones_diagram",
    "connected_sum",
    "determinant",
    "breadth",
]

# bracket variable A lives only inside this module; delta is the loop value
DELTA = LaurentPoly({2: -1, -2: -1})

_A = LaurentPoly({1: 1})
_AI = LaurentPoly({-1: 1})


# ------------------------------------------------------- Temperley-Lieb pass

# A state is a perfect matching on 2n points: 0..n-1 the bottom boundary,
# n..2n-1 the current top boundary.  match[p] is the partner of p.


def _identity_state(n: int) -> tuple[int, ...]:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _cap_state(match: tuple[int, ...], n: int, col: int):
    """Compose a cup-cap generator at columns col, col+1 onto the top.

    Returns (new_state, closed_loop) where closed_loop flags a circle that
    must be absorbed as a factor of delta.
    """
    a = n + col
    b = n + col + 1
    u, v = match[a], match[b]
    m = list(match)
    if u == b:
        # the two top points were partners: pinching them off closes a loop
        # and the fresh cap restores the same matching
        return match, True
    m[u], m[v] = v, u
    m[a], m[b] = b, a
    return tuple(m), False


def tl_element(word: BraidWord) -> dict[tuple[int, ...], LaurentPoly]:
    """Expand the braid into the Temperley-Lieb algebra over Z[A, A^-1].

    Every crossing resolves as A * (straight strands) + A^-1 * (cup-cap)
    for a positive letter, and with the coefficients swapped for a negative
    letter.  The result maps each planar matching to its coefficient.
    """
    n = word.n_strands
    state: dict[tuple[int, ...], LaurentPoly] = {
        _identity_state(n): LaurentPoly.one()}
    for x in word.letters:
        col = abs(x) - 1
        straight, capped = (_A, _AI) if x > 0 else (_AI, _A)
        nxt: dict[tuple[int, ...], LaurentPoly] = {}
        for m, coeff in state.items():
            c1 = coeff * straight
            prev = nxt.get(m)
            nxt[m] = c1 if prev is None else prev + c1
            m2, closed = _cap_state(m, n, col)
            c2 = coeff * capped
            if closed:
                c2 = c2 * DELTA
            prev = nxt.get(m2)
            nxt[m2] = c2 if prev is None else prev + c2
        state = {m: c for m, c in nxt.items() if not c.is_zero()}
    return state


def _trace_loops(match: tuple[int, ...], n: int, pairing) -> int:
    """Count circles after gluing boundary points along ``pairing``."""
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = match[p]
            seen[q] = True
            p = pairing(q)
    return loops


def bracket_standard(word: BraidWord) -> LaurentPoly:
    """Kauffman bracket of the standard closure, in the variable A."""
    n = word.n_strands

    def pairing(p: int) -> int:
        return p + n if p < n else p - n

    total = LaurentPoly.zero()
    for m, coeff in tl_element(word).items():
        loops = _trace_loops(m, n, pairing)
        total = total + coeff * DELTA ** (loops - 1)
    return total


def bracket_plat(word: BraidWord) -> LaurentPoly:
    """Kauffman bracket of the plat closure (caps below, cups above)."""
    n = word.n_strands
    if n % 2:
        raise ValueError("plat closure needs an even strand count")

    def pairing(p: int) -> int:
        return p ^ 1 if p < n else n + ((p - n) ^ 1)

    total = LaurentPoly.zero()
    for m, coeff in tl_element(word).items():
        loops = _trace_loops(m, n, pairing)
        total = total + coeff * DELTA ** (loops - 1)
    return total


# --------------------------------------------------------- state-sum oracle


def bracket_diagram(diagram: PlanarDiagram) -> LaurentPoly:
    """Bracket by summing all smoothings; exponential, for cross-checking.

    Refuses diagrams above the ``bracket_cap`` limit.
    """
    c = diagram.n_crossings()
    cap = config.get_limit("bracket_cap")
    if c > cap:
        raise ValueError(f"{c} crossings exceed the state-sum cap {cap}")
    if c == 0 and diagram.free_loops == 0:
        raise ValueError("empty diagram has no bracket")
    n_arcs = diagram.n_arcs
    # (A-exponent, circle count) -> number of states, then one delta pass
    tally: dict[tuple[int, int], int] = {}
    for mask in range(1 << c):
        parent = list(range(n_arcs))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        a_count = 0
        for ci, (e0, e1, e2, e3) in enumerate(diagram.crossings):
            if mask >> ci & 1:
                union(e0, e1)
                union(e2, e3)
            else:
                a_count += 1
                union(e0, e3)
                union(e1, e2)
        circles = len({find(a) for a in range(n_arcs)}) + diagram.free_loops
        key = (2 * a_count - c, circles)  # exponent of A^(a-b)
        tally[key] = tally.get(key, 0) + 1
    out = LaurentPoly.zero()
    for (exp, circles), mult in tally.items():
        out = out + mult * LaurentPoly.monomial(1, exp) * DELTA ** (circles - 1)
    return out


# ----------------------------------------------------------- normalization


def _writhe_correct(bracket_a: LaurentPoly, writhe: int) -> LaurentPoly:
    sign = -1 if writhe % 2 else 1
    return LaurentPoly.monomial(sign, -3 * writhe) * bracket_a


def _to_q(f_poly: LaurentPoly, components: int) -> LaurentPoly:
    if components < 1:
        raise ValueError("need at least one component")
    if components == 1:
        out = {}
        for e, v in f_poly.items():
            if e % 2:
                raise ValueError("odd bracket exponent on a knot")
            out[-e // 2] = v
        return LaurentPoly(out)
    return f_poly


def jones_closure(word: BraidWord) -> LaurentPoly:
    """Jones polynomial of the standard closure of a braid word."""
    word = word.simplified()
    f = _writhe_correct(bracket_standard(word), word.writhe())
    return _to_q(f, word.closure_components())


def jones_plat(word: BraidWord) -> LaurentPoly:
    """Jones polynomial of the plat closure of an even-strand word."""
    diagram = plat_closure(word)
    f = _writhe_correct(bracket_plat(word), diagram.writhe())
    return _to_q(f, diagram.component_count())


def jones_diagram(diagram: PlanarDiagram) -> LaurentPoly:
    """Jones polynomial straight from a diagram; the slow reference path."""
    f = _writhe_correct(bracket_diagram(diagram), diagram.writhe())
    return _to_q(f, diagram.component_count())


# ------------------------------------------------------- derived quantities


def connected_sum(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Jones polynomial of a connected sum: the product of the factors'."""
    return a * b


def determinant(v_poly: LaurentPoly) -> int:
    """Knot determinant: absolute value of the Jones polynomial at t = -1.

    With the knot convention used here (t = q^2, even exponents) that is
    the alternating sum of coefficients by exponent half.
    """
    if v_poly.is_zero():
        raise ValueError("zero polynomial is not a Jones polynomial")
    total = 0
    for e, c in v_poly.items():
        if e % 2:
            raise ValueError("determinant is defined here for knots only")
        total += c if (e // 2) % 2 == 0 else -c
    return abs(total)


def breadth(v_poly: LaurentPoly) -> int:
    """Spread between extreme exponents; 2 * crossing number for alternating knots."""
    return v_poly.breadth()
