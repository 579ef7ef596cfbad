"""Print rational Khovanov rank tables for a few small knots.

Also cross-checks the graded Euler characteristic against the Jones
polynomial, which ties the two engines together.
"""

from symbraid.algebra import LaurentPoly
from symbraid.braid import BraidWord
from symbraid.jones import jones_closure
from symbraid.khovanov import kh_extrema, kh_ranks_closure

EXAMPLES = [
    ("unknot", BraidWord(1, [])),
    ("trefoil", BraidWord(2, [1, 1, 1])),
    ("figure eight", BraidWord(3, [1, -2, 1, -2])),
    ("cinquefoil", BraidWord(2, [1, 1, 1, 1, 1])),
]

for name, word in EXAMPLES:
    table = kh_ranks_closure(word)
    print(f"--- {name} ---")
    print("   i    j  rank")
    for (i, j), r in table.items():
        print(f"{i:>4} {j:>4} {r:>5}")
    print("extrema:", kh_extrema(table))

    euler = table.euler_poly()
    jones_spread = jones_closure(word) * LaurentPoly({1: 1, -1: 1})
    assert euler == jones_spread
    print("euler characteristic matches (q + 1/q) * V:", euler.to_text())
    print()
