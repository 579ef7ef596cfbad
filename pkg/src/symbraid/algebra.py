"""Exact arithmetic building blocks: Laurent polynomials, bigraded rank
tables, and integer matrix rank.

Everything in this module works over plain Python integers.  There is no
floating point anywhere: polynomial coefficients are ``int``, and matrix
rank is computed by division-free integer elimination, so results are
exact regardless of size.
"""

from __future__ import annotations

import heapq
import math
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "KhPolynomial",
    "SparseIntMatrix",
    "laurent_mul",
    "rank_over_rationals",
    "sparse_rank",
]


class LaurentPoly:
    """A Laurent polynomial in one variable ``q`` with integer coefficients.

    Instances are immutable value objects: they hash and compare by their
    coefficient dictionaries, so they can key caches and fingerprints.

    Args:
        coeffs: mapping exponent -> coefficient.  Zero coefficients are
            dropped on construction.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None) -> None:
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        object.__setattr__(self, "_c", c)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        """The single term ``coeff * q**exp``."""
        return cls({exp: coeff})

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def items(self) -> list[tuple[int, int]]:
        """Terms as (exponent, coefficient) pairs, ascending in exponent."""
        return sorted(self._c.items())

    def exponents(self) -> list[int]:
        return sorted(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def breadth(self) -> int:
        """max exponent minus min exponent (0 for monomials)."""
        return self.max_exp - self.min_exp

    def mirror(self) -> "LaurentPoly":
        """Substitute q -> 1/q; sends a Jones polynomial to its mirror's."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            elif e in c:
                del c[e]
        return LaurentPoly(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                elif e in out:
                    del out[e]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def eval_int(self, x: int) -> int:
        """Evaluate at an integer x (requires x = +-1 if negative exponents occur)."""
        total = 0
        for e, v in self._c.items():
            if e >= 0:
                total += v * x**e
            else:
                if x not in (1, -1):
                    raise ValueError("negative exponent at non-unit point")
                total += v * x ** (-e)
        return total

    # -- comparisons / hashing ------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __bool__(self) -> bool:
        return bool(self._c)

    def sort_key(self) -> tuple:
        """A total-order key; used to pick canonical mirror representatives."""
        return tuple(sorted(self._c.items()))

    # -- text form ------------------------------------------------------

    def to_text(self) -> str:
        """Render as e.g. ``1 q^-2 + 9 q^0 - 7 q^2`` (ascending exponents)."""
        if not self._c:
            return "0"
        parts: list[str] = []
        for e, v in self.items():
            if not parts:
                sign = "-" if v < 0 else ""
                parts.append(f"{sign}{abs(v)} q^{e}")
            else:
                sep = " - " if v < 0 else " + "
                parts.append(f"{sep}{abs(v)} q^{e}")
        return "".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        """Parse the format produced by :meth:`to_text`."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        out: dict[int, int] = {}
        # normalize separators, then read "<coeff> q^<exp>" chunks
        toks = text.replace(" - ", " + -").split(" + ")
        for tok in toks:
            tok = tok.strip()
            if not tok:
                continue
            try:
                coeff_s, exp_s = tok.split("q^")
                coeff_s = coeff_s.strip()
                if coeff_s in ("", "-"):
                    coeff_s += "1"
                e = int(exp_s)
                v = int(coeff_s)
            except ValueError as exc:
                raise ValueError(f"bad polynomial term: {tok!r}") from exc
            out[e] = out.get(e, 0) + v
        return cls(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Product of two Laurent polynomials (function form of ``a * b``)."""
    return a * b


class KhPolynomial:
    """A bigraded rank table: (homological degree i, quantum degree j) -> rank.

    Stored ranks are strictly positive; absent pairs mean rank zero.
    """

    __slots__ = ("_r",)

    def __init__(self, ranks: Mapping[tuple[int, int], int] | None = None) -> None:
        r = {}
        if ranks:
            for (i, j), v in ranks.items():
                v = int(v)
                if v < 0:
                    raise ValueError(f"negative rank at ({i}, {j})")
                if v:
                    r[(int(i), int(j))] = v
        object.__setattr__(self, "_r", r)

    def items(self) -> list[tuple[tuple[int, int], int]]:
        """Rows as ((i, j), rank), sorted lexicographically by (i, j)."""
        return sorted(self._r.items())

    def rank(self, i: int, j: int) -> int:
        return self._r.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._r

    def total_rank(self) -> int:
        return sum(self._r.values())

    @property
    def q_max(self) -> int:
        if not self._r:
            raise ValueError("empty rank table")
        return max(j for _, j in self._r)

    @property
    def q_min(self) -> int:
        if not self._r:
            raise ValueError("empty rank table")
        return min(j for _, j in self._r)

    def mirror(self) -> "KhPolynomial":
        """Reflect (i, j) -> (-i, -j)."""
        return KhPolynomial({(-i, -j): v for (i, j), v in self._r.items()})

    def euler_poly(self) -> LaurentPoly:
        """Graded Euler characteristic: sum of (-1)^i q^j rank(i, j)."""
        out: dict[int, int] = {}
        for (i, j), v in self._r.items():
            w = out.get(j, 0) + (v if i % 2 == 0 else -v)
            if w:
                out[j] = w
            elif j in out:
                del out[j]
        return LaurentPoly(out)

    def to_rows(self) -> str:
        """Render as sorted ``i j rank`` rows, one per line."""
        return "\n".join(f"{i} {j} {v}" for (i, j), v in self.items())

    @classmethod
    def from_rows(cls, text: str) -> "KhPolynomial":
        out: dict[tuple[int, int], int] = {}
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            i_s, j_s, v_s = line.split()
            out[(int(i_s), int(j_s))] = int(v_s)
        return cls(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KhPolynomial) and self._r == other._r

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._r.items())))

    def sort_key(self) -> tuple:
        return tuple(sorted(self._r.items()))

    def __repr__(self) -> str:
        return f"KhPolynomial({dict(sorted(self._r.items()))!r})"


class SparseIntMatrix:
    """A sparse integer matrix stored as row -> {col: value}.

    Only nonzero values are stored.  ``n_rows``/``n_cols`` give the ambient
    shape; indices outside it are rejected.
    """

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int,
                 entries: Iterable[tuple[int, int, int]] = ()) -> None:
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: dict[int, dict[int, int]] = {}
        for r, c, v in entries:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise IndexError(f"entry ({r}, {c}) outside {n_rows} x {n_cols}")
            if v:
                row = self.rows.setdefault(r, {})
                w = row.get(c, 0) + v
                if w:
                    row[c] = w
                else:
                    del row[c]
        # drop rows emptied by cancellation
        for r in [r for r, row in self.rows.items() if not row]:
            del self.rows[r]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def entry(self, r: int, c: int) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def transpose(self) -> "SparseIntMatrix":
        t = SparseIntMatrix(self.n_cols, self.n_rows)
        for r, row in self.rows.items():
            for c, v in row.items():
                t.rows.setdefault(c, {})[r] = v
        return t

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"


def rank_over_rationals(m: SparseIntMatrix) -> int:
    """Rank of an integer matrix over the rationals.

    Exact and division-free: see :func:`sparse_rank`.
    """
    rows = {r: dict(row) for r, row in m.rows.items()}
    return sparse_rank(rows)


def sparse_rank(rows: dict[int, dict[int, int]]) -> int:
    """Rank of a sparse integer matrix given as row -> {col: value}.

    The input is consumed.  Strategy, chosen for the cube-of-resolutions
    workload where almost all entries are +-1:

    1. Pendant cascade.  A row (or column) with a single nonzero entry is a
       valid pivot for any entry value: eliminating it deletes that row and
       column with *zero* fill-in, so these are processed first via a work
       queue; most of the rank falls out in this linear-time phase.
    2. Core elimination.  On the remaining 2-core, pick pivots preferring
       unit entries with minimal Markowitz cost (nnz_row-1)*(nnz_col-1) and
       update rows as r2 <- p*r2 - v*r1 followed by gcd renormalization.
       Scaling a row by a nonzero integer and adding multiples of other rows
       preserve row space dimension, so the count of pivots is the rank.

    Pivot selection runs over a lazily revalidated heap of candidate
    entries: stale candidates are dropped or re-keyed on pop, so each
    pivot costs about the fill-in it causes instead of a full rescan.
    """
    # column index: col -> set of row ids holding a nonzero there
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        if not row:
            raise ValueError("explicit zero row in sparse input")
        for c in row:
            cols.setdefault(c, set()).add(r)

    rank = 0
    row_queue = [r for r, row in rows.items() if len(row) == 1]
    col_queue = [c for c, s in cols.items() if len(s) == 1]

    def delete_col(c: int) -> None:
        """Remove column c entirely, enqueueing rows that become pendant."""
        for r2 in cols.pop(c, ()):
            row2 = rows.get(r2)
            if row2 is None:
                continue
            row2.pop(c, None)
            if len(row2) == 1:
                row_queue.append(r2)
            elif not row2:
                del rows[r2]

    def delete_row(r: int) -> None:
        """Remove row r entirely, enqueueing columns that become pendant."""
        row = rows.pop(r, None)
        if row is None:
            return
        for c2 in row:
            s = cols.get(c2)
            if s is None:
                continue
            s.discard(r)
            if len(s) == 1:
                col_queue.append(c2)
            elif not s:
                del cols[c2]

    heap: list[tuple[int, int, int, int]] = []
    for r, row in rows.items():
        for c, v in row.items():
            heap.append((0 if v in (1, -1) else 1,
                         (len(row) - 1) * (len(cols[c]) - 1), r, c))
    heapq.heapify(heap)

    while True:
        # phase 1: pendant cascade
        progressed = True
        while progressed:
            progressed = False
            while row_queue:
                r = row_queue.pop()
                row = rows.get(r)
                if row is None or len(row) != 1:
                    continue
                (c,) = row
                rank += 1
                del rows[r]
                cols.get(c, set()).discard(r)
                delete_col(c)
                progressed = True
            while col_queue:
                c = col_queue.pop()
                s = cols.get(c)
                if s is None or len(s) != 1:
                    continue
                (r,) = s
                rank += 1
                del cols[c]
                rows.get(r, {}).pop(c, None)
                delete_row(r)
                progressed = True

        if not rows:
            return rank

        # phase 2: pop one core pivot, then loop back to the cascade.
        # Heap keys are frozen at push time; a popped candidate is taken
        # only if its recomputed key is still no worse than the runner-up,
        # otherwise it goes back with the fresh key.
        best = None
        while best is None:
            if not heap:
                for r, row in rows.items():
                    for c, v in row.items():
                        heap.append((0 if v in (1, -1) else 1,
                                     (len(row) - 1) * (len(cols[c]) - 1),
                                     r, c))
                heapq.heapify(heap)
            nu, cost, r, c = heapq.heappop(heap)
            row = rows.get(r)
            if row is None:
                continue
            v = row.get(c)
            if v is None:
                continue
            key = (0 if v in (1, -1) else 1,
                   (len(row) - 1) * (len(cols[c]) - 1))
            if key <= (nu, cost) or not heap or key <= heap[0][:2]:
                best = (r, c, v)
            else:
                heapq.heappush(heap, key + (r, c))

        r, c, p = best
        prow = rows[r]
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            v2 = row2[c]
            if p == 1:
                f1, f2 = 1, -v2
            elif p == -1:
                f1, f2 = 1, v2
            else:
                f1, f2 = p, -v2
            row2_get = row2.get
            for c2, pv in prow.items():
                old = row2_get(c2, 0)
                w = f1 * old + f2 * pv
                if w:
                    row2[c2] = w
                    if old == 0:
                        cols.setdefault(c2, set()).add(r2)
                        heapq.heappush(
                            heap,
                            (0 if w in (1, -1) else 1,
                             (len(row2) - 1) * (len(cols[c2]) - 1), r2, c2))
                    elif w in (1, -1) and old not in (1, -1):
                        # unit status improved; a fresh key makes it findable
                        heapq.heappush(
                            heap,
                            (0, (len(row2) - 1) * (len(cols[c2]) - 1),
                             r2, c2))
                else:
                    if c2 in row2:
                        del row2[c2]
                    s = cols.get(c2)
                    if s is not None:
                        s.discard(r2)
                        if len(s) == 1:
                            col_queue.append(c2)
            if f1 != 1:
                for c2 in row2:
                    if c2 not in prow:
                        row2[c2] *= f1
            # renormalize to keep integers small
            if row2:
                g = math.gcd(*row2.values())
                if g > 1:
                    for c2 in row2:
                        w = row2[c2] // g
                        row2[c2] = w
                        if w in (1, -1) and c2 != c:
                            heapq.heappush(
                                heap,
                                (0, (len(row2) - 1) * (len(cols[c2]) - 1),
                                 r2, c2))
                if len(row2) == 1:
                    row_queue.append(r2)
            else:
                del rows[r2]
            s = cols.get(c)
            if s is not None:
                s.discard(r2)
        rank += 1
        cols.get(c, set()).discard(r)
        delete_row(r)
        if c in cols and not cols[c]:
            del cols[c]
