"""Alternating 3-braids, their integer strings, and the family tests.

A 3-braid in alternating run form compresses to a string of integers
at least 2; the linear dual is an involution on those strings, and the
family membership test decides a structural alternative with an honest
'ambiguous' bucket for the degenerate patterns.
"""

from symbraid.braid import BraidWord
from symbraid.threebraid import (
    AlternatingForm,
    IntString,
    associated_string,
    is_family_B,
    linear_dual,
    verify_family1_rewrite,
)

form = AlternatingForm.from_braid_word(BraidWord(3, [1, -2, 1, -2, 1, -2]))
print("run form: t =", form.t, " x =", form.x, " y =", form.y)

s = associated_string(form)
print("associated string:", s)
print("linear dual:      ", linear_dual(s))
assert linear_dual(linear_dual(s)) == s
print("dual of dual returns the original string")
print()

for text in ("3,3,3", "2,2,4", "3,2,2"):
    verdict = is_family_B(IntString.parse(text))
    wit = ""
    if verdict.witness is not None:
        wit = "  witness: %s | %s" % verdict.witness
    print(f"{text:>6}  family B: {verdict.verdict}{wit}")
print()

# the conjugation rewrite behind the family-A construction, checked
# through the Burau representation on a sample word
zeta = BraidWord(3, [1, 2, -1, 2, 1])
print("rewrite identity holds for zeta =", zeta.to_text(), ":",
      verify_family1_rewrite(zeta))
