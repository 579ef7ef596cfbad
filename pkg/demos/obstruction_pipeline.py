"""Run the symmetric-index-3 obstruction on two knots from the table.

10_99 has square determinant 81, so it passes the determinant gate and
the decision comes down to comparing Khovanov tables against all
candidate partial knots.  6_1 fails by its quantum-grading sum instead.
"""

from symbraid.su import (
    fingerprint_of_braid,
    load_knot_table,
    obstruct_bs3,
    qsum_obstruction,
)

records = load_knot_table()

for name in ("10_99", "6_1"):
    fp = fingerprint_of_braid(records[name].braid)
    print(f"--- {name}  (det {fp.det}) ---")
    result = obstruct_bs3(fp)
    print("verdict:", result.verdict)
    print("reason: ", result.reason)
    for p, q, n, q_max, hit in result.comparisons:
        mark = "match" if hit else "no"
        print(f"  candidate ({p},{q}) n={n:>2}: q_max {q_max:>3}  {mark}")
    qs = qsum_obstruction(fp)
    print(f"q_max + q_min = {qs.total} -> {qs.verdict!r}")
    print()

print("a verdict of 'obstructed' rules out any symmetric braid")
print("presentation on three strands for that knot")
