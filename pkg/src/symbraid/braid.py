"""Braid words, their closures as planar diagrams, and word-level utilities.

A braid word on ``n`` strands is a sequence of nonzero integers: letter
``+i`` crosses the strand in column ``i`` over the strand in column ``i+1``
(columns are 1-based, the word reads bottom to top), and ``-i`` is the
inverse crossing.  Closures produce :class:`PlanarDiagram` objects that the
invariant modules consume.

Diagram encoding: a crossing is a 4-tuple of arc ids listed counterclockwise,
with the over-strand occupying positions 0 and 2.  Every arc id appears
exactly twice across the diagram; closed circles that meet no crossing are
counted separately in ``free_loops``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .algebra import LaurentPoly

__all__ = [
    "BraidWord",
    "PlanarDiagram",
    "parse_braid",
    "standard_closure",
    "plat_closure",
    "burau3",
    "burau3_equal",
]


class BraidWord:
    """An element of the braid group on ``n_strands`` strands.

    Immutable.  Letters are validated on construction: letter ``x`` must
    satisfy ``1 <= abs(x) <= n_strands - 1``.
    """

    __slots__ = ("n_strands", "letters")

    def __init__(self, n_strands: int, letters: Iterable[int] = ()) -> None:
        letters = tuple(int(x) for x in letters)
        if n_strands < 1:
            raise ValueError("need at least one strand")
        for x in letters:
            if x == 0 or abs(x) >= n_strands:
                raise ValueError(
                    f"letter {x} invalid on {n_strands} strands")
        object.__setattr__(self, "n_strands", n_strands)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("BraidWord is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BraidWord)
                and self.n_strands == other.n_strands
                and self.letters == other.letters)

    def __hash__(self) -> int:
        return hash((self.n_strands, self.letters))

    def __repr__(self) -> str:
        return f"BraidWord({self.n_strands}, {list(self.letters)})"

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        """Concatenation; both words must live on the same strand count."""
        if not isinstance(other, BraidWord):
            return NotImplemented
        if self.n_strands != other.n_strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n_strands, [-x for x in reversed(self.letters)])

    def mirror(self) -> "BraidWord":
        """Negate every letter; the closure is the mirror image link."""
        return BraidWord(self.n_strands, [-x for x in self.letters])

    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """perm[j] = top column reached by the strand entering at bottom column j."""
        cur = list(range(self.n_strands))  # cur[col] = strand occupying col
        for x in self.letters:
            i = abs(x)
            cur[i - 1], cur[i] = cur[i], cur[i - 1]
        perm = [0] * self.n_strands
        for col, strand in enumerate(cur):
            perm[strand] = col
        return tuple(perm)

    def closure_components(self) -> int:
        """Component count of the standard closure (cycles of the permutation)."""
        perm = self.permutation()
        seen = [False] * self.n_strands
        count = 0
        for j in range(self.n_strands):
            if seen[j]:
                continue
            count += 1
            k = j
            while not seen[k]:
                seen[k] = True
                k = perm[k]
        return count

    def is_knot(self) -> bool:
        """True when the standard closure is a single circle."""
        return self.closure_components() == 1

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def free_reduced(self) -> "BraidWord":
        return BraidWord(self.n_strands, _free_reduce(self.letters))

    def to_text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def simplified(self) -> "BraidWord":
        """Shrink the word without changing the closure link type.

        Applies, until stable: free reduction, cyclic reduction (conjugation
        leaves the closure alone), and strand removal when the top or bottom
        generator index occurs exactly once in the word.  Strands the word
        never touches are kept: each one is a split unknot component of the
        closure and removing it would change the link.
        """
        n = self.n_strands
        letters = list(self.letters)
        while True:
            letters = _cyclic_reduce(letters)
            if n == 1 or not letters:
                break
            hi = [x for x in letters if abs(x) == n - 1]
            if len(hi) == 1:
                letters.remove(hi[0])
                n -= 1
                continue
            lo = [x for x in letters if abs(x) == 1]
            if len(lo) == 1 and n > 2:
                letters.remove(lo[0])
                letters = [x - 1 if x > 0 else x + 1 for x in letters]
                n -= 1
                continue
            break
        return BraidWord(n, letters)


def _free_reduce(letters: Sequence[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(letters: Sequence[int]) -> list[int]:
    out = _free_reduce(letters)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = _free_reduce(out[1:-1])
    return out


def parse_braid(text: str, n_strands: int | None = None) -> BraidWord:
    """Parse a whitespace- or comma-separated word such as ``"2 -1 2"``.

    When ``n_strands`` is omitted it is inferred as the smallest strand
    count carrying the word (max letter index plus one, at least one).
    """
    toks = text.replace(",", " ").split()
    letters = []
    for tok in toks:
        try:
            letters.append(int(tok))
        except ValueError as exc:
            raise ValueError(f"bad braid letter: {tok!r}") from exc
    if n_strands is None:
        n_strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(n_strands, letters)


def _canonical_crossing(cr) -> tuple[int, int, int, int]:
    """Rotate a crossing tuple by two when that lowers it lexicographically.

    The half-turn keeps the over-strand on positions 0 and 2 and keeps the
    counterclockwise order, so it never changes meaning; normalizing makes
    equal crossings compare equal.
    """
    cr = tuple(int(a) for a in cr)
    if len(cr) == 4 and cr[2:] + cr[:2] < cr:
        return cr[2:] + cr[:2]
    return cr


class PlanarDiagram:
    """A link diagram as a 4-valent graph with over/under data.

    Args:
        crossings: 4-tuples of arc ids in counterclockwise order; the
            over-strand occupies positions 0 and 2.  Tuples are stored up to
            rotation by two, which is a symmetry of the encoding.
        free_loops: count of circles that meet no crossing.

    Arc ids must be exactly the integers ``0 .. n_arcs-1``, each appearing
    exactly twice (a single crossing may carry both occurrences).
    """

    __slots__ = ("crossings", "free_loops", "n_arcs", "_cache")

    def __init__(self, crossings: Iterable[tuple[int, int, int, int]],
                 free_loops: int = 0) -> None:
        crossings = [_canonical_crossing(cr) for cr in crossings]
        counts: dict[int, int] = {}
        for cr in crossings:
            if len(cr) != 4:
                raise ValueError("crossing needs exactly 4 arc ends")
            for a in cr:
                counts[a] = counts.get(a, 0) + 1
        if counts:
            ids = sorted(counts)
            if ids != list(range(len(ids))):
                raise ValueError("arc ids must be dense from 0")
            bad = [a for a, k in counts.items() if k != 2]
            if bad:
                raise ValueError(f"arcs {bad} do not appear exactly twice")
        if free_loops < 0:
            raise ValueError("free_loops must be nonnegative")
        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "free_loops", int(free_loops))
        object.__setattr__(self, "n_arcs", len(counts))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("PlanarDiagram is immutable")

    def __repr__(self) -> str:
        return (f"PlanarDiagram({len(self.crossings)} crossings, "
                f"{self.n_arcs} arcs, free_loops={self.free_loops})")

    def n_crossings(self) -> int:
        return len(self.crossings)

    def mirror(self) -> "PlanarDiagram":
        """Swap over- and under-strand at every crossing."""
        return PlanarDiagram(
            [(e1, e2, e3, e0) for (e0, e1, e2, e3) in self.crossings],
            self.free_loops)

    # -- orientation traversal ------------------------------------------

    def _traverse(self) -> tuple[int, list[list[bool]]]:
        """Walk every strand circle once.

        Returns (circle count excluding free loops, inflow) where
        ``inflow[ci][p]`` is True when the traversal enters crossing ``ci``
        at end ``p``.  Strand continuation inside a crossing joins end ``p``
        to end ``(p + 2) % 4``.
        """
        if "traverse" in self._cache:
            return self._cache["traverse"]
        occ: dict[int, list[tuple[int, int]]] = {}
        for ci, cr in enumerate(self.crossings):
            for p, a in enumerate(cr):
                occ.setdefault(a, []).append((ci, p))
        visited: set[tuple[int, int]] = set()
        inflow = [[False] * 4 for _ in self.crossings]
        circles = 0
        for ci0 in range(len(self.crossings)):
            for p0 in range(4):
                if (ci0, p0) in visited:
                    continue
                circles += 1
                ci, p = ci0, p0
                while True:
                    visited.add((ci, p))
                    inflow[ci][p] = True
                    q = (p + 2) % 4
                    visited.add((ci, q))
                    a = self.crossings[ci][q]
                    o1, o2 = occ[a]
                    ci, p = o2 if o1 == (ci, q) else o1
                    if (ci, p) == (ci0, p0):
                        break
        self._cache["traverse"] = (circles, inflow)
        return circles, inflow

    def component_count(self) -> int:
        circles, _ = self._traverse()
        return circles + self.free_loops

    def crossing_signs(self) -> list[int]:
        """Orientation signs, one per crossing.

        Components are oriented in traversal order; for a knot the signs do
        not depend on that choice, for links the usual orientation ambiguity
        between components applies.
        """
        _, inflow = self._traverse()
        # over-strand flows 0->2 iff inflow at 0; under flows 1->3 iff at 1.
        # parallel flow (both from the low ends, or both from the high) is +1.
        return [1 if inf[0] == inf[1] else -1 for inf in inflow]

    def writhe(self) -> int:
        return sum(self.crossing_signs())

    def sign_counts(self) -> tuple[int, int]:
        """(positive crossings, negative crossings)."""
        signs = self.crossing_signs()
        pos = sum(1 for s in signs if s > 0)
        return pos, len(signs) - pos


def _braid_crossings(word: BraidWord, cur: list[int], nxt: int):
    """Run the letters over the column state ``cur``, allocating arc ids.

    Mutates ``cur`` to the top-of-braid arcs and returns (crossings, nxt).
    """
    crossings: list[tuple[int, int, int, int]] = []
    for x in word.letters:
        i = abs(x)
        left, right = cur[i - 1], cur[i]
        left_out, right_out = nxt, nxt + 1
        nxt += 2
        if x > 0:
            # ends ccw from bottom-left; the left strand passes over
            crossings.append((left, right, right_out, left_out))
        else:
            crossings.append((right, right_out, left_out, left))
        cur[i - 1], cur[i] = left_out, right_out
    return crossings, nxt


def _identify(crossings, n_ids: int, pairs) -> PlanarDiagram:
    """Glue arc ids along ``pairs`` and relabel densely.

    Union-find classes that end up in no crossing are the free loops.
    """
    parent = list(range(n_ids))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    used_roots: dict[int, int] = {}
    relabeled = []
    for cr in crossings:
        relabeled.append(tuple(
            used_roots.setdefault(find(a), len(used_roots)) for a in cr))
    all_roots = {find(a) for a in range(n_ids)}
    free = len(all_roots) - len(used_roots)
    return PlanarDiagram(relabeled, free_loops=free)


def standard_closure(word: BraidWord) -> PlanarDiagram:
    """Close the braid by joining top column j back to bottom column j."""
    n = word.n_strands
    cur = list(range(n))
    crossings, nxt = _braid_crossings(word, cur, n)
    return _identify(crossings, nxt, [(cur[j], j) for j in range(n)])


def plat_closure(word: BraidWord) -> PlanarDiagram:
    """Close an even-strand braid with caps below and cups above.

    Bottom columns (1,2), (3,4), ... share an arc each; the top is closed
    the same way.
    """
    n = word.n_strands
    if n % 2:
        raise ValueError("plat closure needs an even strand count")
    cur = [k // 2 for k in range(n)]
    crossings, nxt = _braid_crossings(word, cur, n // 2)
    pairs = [(cur[2 * k], cur[2 * k + 1]) for k in range(n // 2)]
    return _identify(crossings, nxt, pairs)


# -- reduced Burau representation on three strands --------------------------

_T = LaurentPoly({1: 1})
_TI = LaurentPoly({-1: 1})
_ONE = LaurentPoly.one()
_ZERO = LaurentPoly.zero()

_BURAU3 = {
    1: ((-1 * _T, _ONE), (_ZERO, _ONE)),
    -1: ((-1 * _TI, _TI), (_ZERO, _ONE)),
    2: ((_ONE, _ZERO), (_T, -1 * _T)),
    -2: ((_ONE, _ZERO), (_ONE, -1 * _TI)),
}

Mat2 = tuple[tuple[LaurentPoly, LaurentPoly], tuple[LaurentPoly, LaurentPoly]]


def _mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0],
         a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0],
         a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def burau3(word: BraidWord) -> Mat2:
    """Reduced Burau matrix of a three-strand word, over Z[t, t^-1].

    This representation is faithful on three strands, so matrix equality
    decides word equality in the group.
    """
    if word.n_strands != 3:
        raise ValueError("burau3 is for three-strand words")
    out: Mat2 = ((_ONE, _ZERO), (_ZERO, _ONE))
    for x in word.letters:
        out = _mat_mul(out, _BURAU3[x])
    return out


def burau3_equal(w1: BraidWord, w2: BraidWord) -> bool:
    """Group equality of two three-strand words."""
    return burau3(w1) == burau3(w2)
