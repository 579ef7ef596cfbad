"""Two-bridge knots and the three-tangle family K[q/p, 1/n, -q/p].

The pieces here connect a determinant to concrete candidate knots: continued
fractions and their mixed-sign variants, two-bridge fractions p/q with their
canonical forms, 4-plat braid words, planar diagrams for the three-tangle
family, and the closed-form Khovanov rank table of that family.

Two-bridge fractions are equivalent when q matches q' or an inverse of q'
modulo p; folding in mirror images also identifies q with p - q.  Candidate
sets produced from a determinant always fold mirrors together, since the
determinant cannot tell a knot from its reflection.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .algebra import KhPolynomial, LaurentPoly
from .braid import BraidWord, PlanarDiagram, _identify
from .jones import jones_plat

__all__ = [
    "TwoBridge",
    "MontesinosSpec",
    "continued_fraction",
    "mixed_expansions",
    "fold_expansion",
    "partial_knot_candidates",
    "fourplat_braid",
    "twobridge_jones",
    "montesinos_diagram",
    "kh_formula",
]


# ------------------------------------------------------ continued fractions


def _check_fraction(p: int, q: int) -> None:
    if not 0 < q < p:
        raise ValueError(f"need 0 < q < p, got {p}/{q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not reduced")


def continued_fraction(p: int, q: int) -> list[int]:
    """All-positive expansion [a1, ..., ak] of p/q.

    Folds back as a1 + 1/(a2 + 1/(...)), every ai >= 1.  The unknot
    fraction (1, 0) gives the empty expansion.
    """
    if (p, q) == (1, 0):
        return []
    _check_fraction(p, q)
    out = []
    while q:
        out.append(p // q)
        p, q = q, p % q
    return out


def fold_expansion(expansion: Sequence[int]) -> tuple[int, int]:
    """Collapse an expansion back into a reduced fraction (p, q).

    The empty expansion folds to (1, 0).  Works for mixed-sign expansions;
    intermediate zeros are fine because no division happens.
    """
    p, q = 1, 0
    for a in reversed(expansion):
        p, q = a * p + q, p
    if p < 0:
        p, q = -p, -q
    return p, q


def mixed_expansions(p: int, q: int) -> Iterator[list[int]]:
    """Every expansion of p/q built from floor-or-ceiling choices.

    Yields the all-positive expansion first, then variants where a ceiling
    step makes the following coefficients negative.  Each yielded list
    folds back to (p, q) exactly, and the whole iterator is finite: both
    branch remainders shrink the denominator strictly.
    """
    if (p, q) == (1, 0):
        yield []
        return
    _check_fraction(p, q)

    def rec(num: int, den: int, prefix: list[int]) -> Iterator[list[int]]:
        a, r = divmod(num, den)
        if r == 0:
            yield prefix + [a]
            return
        for choice in (a, a + 1):
            num2 = num - choice * den
            if num2 > 0:
                yield from rec(den, num2, prefix + [choice])
            else:
                yield from rec(-den, -num2, prefix + [choice])

    yield from rec(p, q, [])


# ------------------------------------------------------- two-bridge knots


@dataclass(frozen=True)
class TwoBridge:
    """A two-bridge knot named by its fraction p/q.

    p is odd and positive, 0 < q < p, gcd(p, q) = 1; the unknot is (1, 0).
    Distinct fractions can name the same knot, so comparisons should go
    through canonical() or canonical_mirrored().
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if (self.p, self.q) == (1, 0):
            return
        if self.p < 1 or self.p % 2 == 0:
            raise ValueError(f"p must be odd and positive, got {self.p}")
        _check_fraction(self.p, self.q)

    @property
    def is_unknot(self) -> bool:
        return self.p == 1

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> "TwoBridge":
        """Read the ``p/q`` text form."""
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise ValueError(f"expected 'p/q', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    def mirror(self) -> "TwoBridge":
        return self if self.is_unknot else TwoBridge(self.p, self.p - self.q)

    def equivalence_class(self, mirrors: bool = False) -> frozenset[int]:
        """All q' with p/q' naming this knot.

        With ``mirrors`` the reflection p/(p - q) is folded in as well;
        the set is closed because inverting mod p commutes with negating.
        """
        if self.is_unknot:
            return frozenset({0})
        qs = {self.q, pow(self.q, -1, self.p)}
        if mirrors:
            qs |= {self.p - x for x in qs}
        return frozenset(qs)

    def canonical(self) -> "TwoBridge":
        """Smallest fraction naming this knot with its handedness kept."""
        if self.is_unknot:
            return self
        return TwoBridge(self.p, min(self.equivalence_class()))

    def canonical_mirrored(self) -> "TwoBridge":
        """One name per mirror pair.

        Picks the smallest member of the mirror-merged class whose q is a
        nonzero square mod p, and the smallest member outright when the
        class contains no square.  The square rule decides which of the
        two reflections represents the pair; plain min would sometimes
        pick the opposite one and break the published candidate sets.
        """
        if self.is_unknot:
            return self
        cls_ = self.equivalence_class(mirrors=True)
        squares = {x * x % self.p for x in range(1, self.p)}
        hits = [x for x in sorted(cls_) if x in squares]
        return TwoBridge(self.p, hits[0] if hits else min(cls_))


def partial_knot_candidates(det: int) -> set[TwoBridge]:
    """Two-bridge knots, up to mirror image, whose determinant squares to det.

    A symmetric union has the determinant of its partial knot squared, so
    this is the full candidate list for a given knot determinant.  A value
    that is not an odd perfect square cannot arise that way; the function
    then warns and returns the empty set.
    """
    if det < 1:
        raise ValueError("determinant must be positive")
    root = math.isqrt(det)
    if root * root != det:
        warnings.warn(
            f"determinant {det} is not a perfect square, so it is not the "
            "determinant of any symmetric union", stacklevel=2)
        return set()
    if root == 1:
        return {TwoBridge(1, 0)}
    if root % 2 == 0:
        warnings.warn(
            f"determinant {det} is an even square; knot determinants are "
            "odd", stacklevel=2)
        return set()
    return {TwoBridge(root, q).canonical_mirrored()
            for q in range(1, root) if math.gcd(q, root) == 1}


# ------------------------------------------------------------ 4-plat words


def fourplat_braid(t: TwoBridge,
                   expansion: Sequence[int] | None = None) -> BraidWord:
    """A 4-strand word whose plat closure is the knot t.

    Twist runs alternate between the middle strand pair and the left pair,
    one run per continued-fraction coefficient.  Pass a mixed-sign
    expansion of the same fraction to get a different word for the same
    knot.  The unknot gets a single crossing so its plat closure is one
    circle rather than two.
    """
    if t.is_unknot:
        return BraidWord(4, [2])
    if expansion is None:
        expansion = continued_fraction(t.p, t.q)
    else:
        if fold_expansion(expansion) != (t.p, t.q):
            raise ValueError(f"expansion does not fold to {t}")
    expansion = list(expansion)
    if len(expansion) % 2 == 0:
        # a trailing run on the capped strand pair would dissolve into the
        # plat; split the last coefficient so the word ends mid-braid
        last = expansion.pop()
        sgn = 1 if last > 0 else -1
        expansion += [last - sgn, sgn]
    letters: list[int] = []
    for pos, a in enumerate(expansion):
        gen = 2 if pos % 2 == 0 else -1
        letters.extend([gen if a > 0 else -gen] * abs(a))
    return BraidWord(4, letters)


def twobridge_jones(t: TwoBridge) -> LaurentPoly:
    """Jones polynomial of t, computed through its 4-plat closure."""
    return jones_plat(fourplat_braid(t))


# -------------------------------------------------------- tangle assembly


class _Tangle(NamedTuple):
    nw: int
    ne: int
    sw: int
    se: int


class _Assembly:
    """Arc-id allocator and crossing store shared by one diagram build.

    Ids are provisional; gluing and dense relabeling happen in one pass at
    the end, so builders never worry about reuse.
    """

    def __init__(self) -> None:
        self.crossings: list[tuple[int, int, int, int]] = []
        self.pairs: list[tuple[int, int]] = []
        self.n_ids = 0

    def fresh(self) -> int:
        self.n_ids += 1
        return self.n_ids - 1

    def zero_tangle(self) -> _Tangle:
        a, b = self.fresh(), self.fresh()
        return _Tangle(a, a, b, b)

    def infinity_tangle(self) -> _Tangle:
        a, b = self.fresh(), self.fresh()
        return _Tangle(a, b, a, b)

    def htwist(self, t: _Tangle, sign: int) -> _Tangle:
        """Add one crossing on the east side; sign +1 raises the slope."""
        ne2, se2 = self.fresh(), self.fresh()
        # ends counterclockwise from the crossing's SW corner; the tuple
        # rotated by one flips which diagonal runs on top
        if sign > 0:
            self.crossings.append((se2, ne2, t.ne, t.se))
        else:
            self.crossings.append((t.se, se2, ne2, t.ne))
        return _Tangle(t.nw, ne2, t.sw, se2)

    def rational_tangle(self, f: Fraction) -> _Tangle:
        """Build the tangle of slope f by twisting and quarter-turns."""
        if f == 0:
            return self.zero_tangle()
        if f >= 1:
            return self.htwist(self.rational_tangle(f - 1), +1)
        if f <= -1:
            return self.htwist(self.rational_tangle(f + 1), -1)
        t = self.rational_tangle(-1 / f)
        # a quarter-turn counterclockwise sends the slope to -1/f
        return _Tangle(t.ne, t.se, t.nw, t.sw)

    def glue(self, a: int, b: int) -> None:
        self.pairs.append((a, b))

    def finish(self) -> PlanarDiagram:
        return _identify(self.crossings, self.n_ids, self.pairs)


# ------------------------------------------------------- Montesinos family


@dataclass(frozen=True)
class MontesinosSpec:
    """The three-tangle knot K[q/p, 1/n, -q/p].

    The outer tangles are mirror images with slopes +-q/p; the middle
    tangle is the vertical twist region 1/n.  n = 0 encodes the 1/0
    tangle, which splits the closure into a connected sum of the
    two-bridge knot p/q and its mirror.
    """

    p: int
    q: int
    n: int = 0

    def __post_init__(self) -> None:
        TwoBridge(self.p, self.q)  # reuse the fraction validation

    def two_bridge(self) -> TwoBridge:
        return TwoBridge(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.q}/{self.p},1/{self.n},-{self.q}/{self.p}"

    @classmethod
    def parse(cls, text: str) -> "MontesinosSpec":
        """Read the ``q/p,1/n,-q/p`` text form."""
        parts = text.strip().split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three tangle slopes, got {text!r}")
        nums, dens = [], []
        for part in parts:
            bits = part.split("/")
            if len(bits) != 2:
                raise ValueError(f"bad tangle slope {part!r}")
            nums.append(int(bits[0]))
            dens.append(int(bits[1]))
        if abs(nums[1]) != 1:
            raise ValueError("middle tangle must have slope 1/n")
        if nums[2] != -nums[0] or dens[2] != dens[0]:
            raise ValueError("outer tangles must be mirror slopes q/p, -q/p")
        return cls(dens[0], nums[0], nums[1] * dens[1])


def montesinos_diagram(spec: MontesinosSpec) -> PlanarDiagram:
    """Planar diagram of K[q/p, 1/n, -q/p] as a closed three-tangle row.

    The tangles sit side by side, glued east to west, and the row is
    closed by arcs joining its top corners and its bottom corners.
    """
    asm = _Assembly()
    f = Fraction(spec.q, spec.p)
    left = asm.rational_tangle(f)
    if spec.n == 0:
        middle = asm.infinity_tangle()
    else:
        middle = asm.rational_tangle(Fraction(1, spec.n))
    right = asm.rational_tangle(-f)
    for a, b in ((left, middle), (middle, right)):
        asm.glue(a.ne, b.nw)
        asm.glue(a.se, b.sw)
    asm.glue(left.nw, right.ne)
    asm.glue(left.sw, right.se)
    return asm.finish()


# --------------------------------------------------- closed-form Khovanov


def _b_coefficients(a: dict[int, int], m: int) -> dict[int, int]:
    """Tail-sum coefficients b_k for k in [-m, m), from V = sum a_i q^(2i).

    b_k for k >= 0 is an alternating tail sum of the a_i; negative k is
    filled by the symmetry b_k = b_(-k-1).
    """
    b = {}
    for k in range(m):
        tail = sum(a.get(i, 0) for i in range(k + 1, m + 1))
        b[k] = tail if (k + 1) % 2 == 0 else -tail
    for k in range(-m, 0):
        b[k] = b[-k - 1]
    return b


def kh_formula(spec: MontesinosSpec, v: LaurentPoly) -> KhPolynomial:
    """Khovanov rank table of K[q/p, 1/n, -q/p], from a closed formula.

    ``v`` must be the Jones polynomial of the connected sum of the
    two-bridge knot p/q with its own mirror; the table is assembled from
    alternating tail sums of its coefficients and two unknot-like
    generators at homological degree zero.  For p = 1 the knot is the
    unknot regardless of n.
    """
    if spec.p == 1:
        return KhPolynomial({(0, -1): 1, (0, 1): 1})
    if v.is_zero():
        raise ValueError("zero polynomial is not a Jones polynomial")
    a: dict[int, int] = {}
    for e, c in v.items():
        if e % 2:
            raise ValueError("expected even exponents only")
        a[e // 2] = c
    m = max(a)
    if m < 1:
        raise ValueError("a two-bridge connected sum never has a constant "
                         "Jones polynomial")
    b = _b_coefficients(a, m)
    n = spec.n
    table: dict[tuple[int, int], int] = {(0, -1): 1, (0, 1): 1}
    for k in range(-m, m):
        bk = b[k]
        if not bk:
            continue
        for cell in ((n + k, 2 * n + 2 * k - 1),
                     (n + k + 1, 2 * n + 2 * k + 3)):
            table[cell] = table.get(cell, 0) + bk
    bad = {cell: r for cell, r in table.items() if r < 0}
    if bad:
        raise RuntimeError(
            f"internal error: negative ranks {bad}; the input polynomial "
            "cannot belong to this family")
    return KhPolynomial(table)
