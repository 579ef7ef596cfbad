"""Build a symmetric-union braid and check the determinant identity.

The running example is the stevedore knot 6_1: conjugating the axis
letters by gamma = s2 s1^-1 s2 in B_4 produces a 9-crossing word whose
closure is 6_1 and whose partial knot is the trefoil.
"""

from symbraid.jones import determinant, jones_closure, jones_diagram
from symbraid.su import make_su_braid, partial_knot

su = make_su_braid(4, [2, -1, 2], signs1=(1,), signs2=(1, -1))
print("symmetric-union braid:", su)
print("full word:            ", su.word.to_text())
print("closure components:   ", su.closure_components())

v = jones_closure(su.word)
det_closure = determinant(v)
print("det(closure) =", det_closure)

pk = partial_knot(su)
det_partial = determinant(jones_diagram(pk))
print("det(partial knot) =", det_partial)

# the closure determinant is always the square of the partial one
assert det_closure == det_partial ** 2
print("check: %d = %d^2" % (det_closure, det_partial))
