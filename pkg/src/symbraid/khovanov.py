"""Rational Khovanov homology from the cube of resolutions.

The 0-smoothing of a crossing is the bracket A-smoothing (join ends 0-3 and
1-2), the 1-smoothing joins ends 0-1 and 2-3.  For a state ``s`` with ``w``
one-bits and a circle carrying labels from {+, -}:

* homological degree  i = w - n_minus
* quantum degree      j = (#plus - #minus) + w + n_plus - 2 * n_minus

where ``n_plus``/``n_minus`` count positive and negative crossings of the
oriented diagram.  Differentials merge two circles or split one, with the
usual Frobenius rules, and edge (s, k) carries sign (-1)^(ones of s below
bit k).  Ranks of every graded block are computed exactly over the
rationals, so the output is the free part of Khovanov homology.

The cube over all ``2^c`` states is enumerated with numpy: circle labels
for every state at once by iterated minimum propagation along the smoothing
joins, then per-crossing batches emit the differential entries in grouped
vector operations.  Block ranks go through a batched pendant-pivot peel
(no fill-in) before the leftover core, usually tiny, is eliminated exactly.
"""

from __future__ import annotations

from math import comb

import numpy as np

from . import config
from .algebra import KhPolynomial, sparse_rank
from .braid import BraidWord, PlanarDiagram, standard_closure

__all__ = [
    "kh_ranks_diagram",
    "kh_ranks_closure",
    "kh_ranks_closure_cube",
    "kh_extrema",
    "unlink_kh",
]

# cap on elements in one emission batch; keeps transient arrays ~30 MB
_BATCH_ELEMS = 1 << 22


def unlink_kh(components: int) -> KhPolynomial:
    """Khovanov table of the crossingless unlink."""
    if components < 1:
        raise ValueError("need at least one component")
    return KhPolynomial({
        (0, components - 2 * k): comb(components, k)
        for k in range(components + 1)
        if comb(components, k)})


def kh_extrema(table: KhPolynomial) -> dict[str, int]:
    """Extreme gradings of a rank table, keyed i_min/i_max/j_min/j_max."""
    items = table.items()
    if not items:
        raise ValueError("empty rank table")
    i_vals = [i for (i, _), _ in items]
    j_vals = [j for (_, j), _ in items]
    return {"i_min": min(i_vals), "i_max": max(i_vals),
            "j_min": min(j_vals), "j_max": max(j_vals)}


def kh_ranks_closure(word: BraidWord) -> KhPolynomial:
    """Khovanov ranks of the standard closure of a braid word.

    Delegates to the scanning engine, which simplifies as it goes and
    handles far larger words than the resolution cube.  Multi-component
    closures are graded with the braid orientation (all strands upward);
    for knots this agrees with ``kh_ranks_diagram`` on the closure.
    """
    from .khscan import kh_ranks_scan

    return kh_ranks_scan(word)


def kh_ranks_closure_cube(word: BraidWord) -> KhPolynomial:
    """Closure homology through the full resolution cube.

    Independent of the scanning engine; kept as a second opinion for
    cross-checks.  Subject to the cube crossing caps.
    """
    return kh_ranks_diagram(standard_closure(word.simplified()))


def kh_ranks_diagram(diagram: PlanarDiagram) -> KhPolynomial:
    """Khovanov ranks of a diagram; exact, so cost grows as 2^crossings.

    Multi-component diagrams are graded with the traversal orientation.
    """
    nc = diagram.n_crossings()
    hard = config.get_limit("khovanov_hard_cap")
    cap = min(config.get_limit("khovanov_cap"), hard)
    if nc > cap:
        raise ValueError(
            f"{nc} crossings exceed the homology cap {cap}"
            " (raise SYMBRAID_KHOVANOV_CAP if you mean it)")
    if nc == 0:
        if diagram.free_loops == 0:
            raise ValueError("empty diagram has no homology")
        return unlink_kh(diagram.free_loops)

    n_pos, n_neg = diagram.sign_counts()
    table = _cube_ranks(diagram, n_pos, n_neg)
    for _ in range(diagram.free_loops):
        spread: dict[tuple[int, int], int] = {}
        for (i, j), v in table.items():
            spread[(i, j - 1)] = spread.get((i, j - 1), 0) + v
            spread[(i, j + 1)] = spread.get((i, j + 1), 0) + v
        table = spread
    return KhPolynomial(table)


# ------------------------------------------------------------ cube internals


def _state_circles(diagram: PlanarDiagram):
    """Circle structure of every smoothing at once.

    Returns (DLAB, n_circ): DLAB[s, a] is the dense circle index of arc
    ``a`` in state ``s`` (circles ordered by smallest arc id), n_circ[s]
    the circle count.  Labels propagate as running minima along the joins
    that are active in each state until nothing changes.
    """
    nc = diagram.n_crossings()
    n_arcs = diagram.n_arcs
    n_states = 1 << nc
    states = np.arange(n_states, dtype=np.int64)
    lab = np.tile(np.arange(n_arcs, dtype=np.uint8), (n_states, 1))
    zero_rows = []
    one_rows = []
    for k in range(nc):
        bit = (states >> k) & 1
        zero_rows.append(np.nonzero(bit == 0)[0])
        one_rows.append(np.nonzero(bit == 1)[0])
    joins = []
    for k, (e0, e1, e2, e3) in enumerate(diagram.crossings):
        joins.append((zero_rows[k], ((e0, e3), (e1, e2))))
        joins.append((one_rows[k], ((e0, e1), (e2, e3))))
    while True:
        before = lab.copy()
        for rows, pairs in joins:
            for x, y in pairs:
                if x == y:
                    continue
                lo = np.minimum(lab[rows, x], lab[rows, y])
                lab[rows, x] = lo
                lab[rows, y] = lo
        if np.array_equal(lab, before):
            break
    present = np.zeros((n_states, n_arcs), dtype=np.int16)
    present[np.arange(n_states)[:, None], lab] = 1
    cum = present.cumsum(axis=1, dtype=np.int16)
    dlab = (np.take_along_axis(cum, lab.astype(np.int64), axis=1) - 1
            ).astype(np.uint8)
    n_circ = cum[:, -1].astype(np.int64)
    return dlab, n_circ


def _popcount_table(up_to_bits: int) -> np.ndarray:
    vals = np.arange(1 << up_to_bits, dtype=np.int64)
    out = np.zeros(1 << up_to_bits, dtype=np.int16)
    for b in range(up_to_bits):
        out += ((vals >> b) & 1).astype(np.int16)
    return out


def _cube_ranks(diagram: PlanarDiagram, n_pos: int, n_neg: int) -> dict:
    nc = diagram.n_crossings()
    n_states = 1 << nc
    states = np.arange(n_states, dtype=np.int64)
    dlab, n_circ = _state_circles(diagram)
    shift = n_pos - 2 * n_neg

    weight = np.zeros(n_states, dtype=np.int16)
    parity_below = np.zeros((n_states, nc), dtype=np.int8)
    par = np.zeros(n_states, dtype=np.int8)
    for k in range(nc):
        parity_below[:, k] = par
        bit = ((states >> k) & 1).astype(np.int8)
        par ^= bit
        weight += bit.astype(np.int16)

    gens = (np.int64(1) << n_circ)
    offset = np.zeros(n_states, dtype=np.int64)
    members = []
    level_dim = []
    for w in range(nc + 1):
        m = np.nonzero(weight == w)[0]
        members.append(m)
        g = gens[m]
        if len(m):
            offset[m] = np.concatenate(([0], np.cumsum(g)[:-1]))
        level_dim.append(int(g.sum()))
    if max(level_dim) >= 1 << 31:
        raise ValueError("chain groups too large for this cube builder")

    max_c = int(n_circ.max())
    popm = _popcount_table(max_c) if max_c else np.zeros(1, np.int16)

    # dim of every (level, quantum) block
    dims: dict[tuple[int, int], int] = {}
    for w in range(nc + 1):
        m = members[w]
        if not len(m):
            continue
        cs = n_circ[m]
        for c_val in np.unique(cs):
            cnt = int((cs == c_val).sum())
            for minus in range(int(c_val) + 1):
                j = int(c_val) - 2 * minus + w + shift
                key = (w, j)
                dims[key] = dims.get(key, 0) + cnt * comb(int(c_val), minus)

    ranks: dict[tuple[int, int], int] = {}
    for w in range(nc):
        parts = _emit_level(diagram, w, members[w], dlab, n_circ,
                            offset, parity_below, popm, shift)
        if parts is None:
            continue
        cols, rows, vals, quantum = parts
        for j in np.unique(quantum):
            sel = quantum == j
            ranks[(w, int(j))] = _block_rank(
                rows[sel], cols[sel], vals[sel])

    table: dict[tuple[int, int], int] = {}
    for (w, j), dim in dims.items():
        h = dim - ranks.get((w, j), 0) - ranks.get((w - 1, j), 0)
        if h < 0:
            raise AssertionError(
                f"negative rank at level {w}, quantum {j}: broken cube")
        if h:
            table[(w - n_neg, j)] = h
    return table


def _emit_level(diagram, w, level_members, dlab, n_circ, offset,
                parity_below, popm, shift):
    """All differential entries leaving chain level ``w`` as flat arrays."""
    nc = diagram.n_crossings()
    out_cols = []
    out_rows = []
    out_vals = []
    out_quantum = []
    for k, (e0, e1, e2, e3) in enumerate(diagram.crossings):
        src = level_members[((level_members >> k) & 1) == 0]
        if not len(src):
            continue
        dst = src + (1 << k)
        sign = (1 - 2 * parity_below[src, k]).astype(np.int8)
        u = dlab[src, e0].astype(np.int64)
        v = dlab[src, e1].astype(np.int64)
        g = dlab[dst, e0].astype(np.int64)
        h = dlab[dst, e3].astype(np.int64)
        pi = np.zeros((len(src), int(n_circ[src].max())), dtype=np.int64)
        pi[np.arange(len(src))[:, None], dlab[src]] = dlab[dst]
        merge = u != v
        for is_merge in (True, False):
            pick = merge if is_merge else ~merge
            if not pick.any():
                continue
            rows_pick = np.nonzero(pick)[0]
            cs = n_circ[src[rows_pick]]
            for c_val in np.unique(cs):
                bucket = rows_pick[cs == c_val]
                step = max(1, _BATCH_ELEMS >> int(c_val))
                for lo in range(0, len(bucket), step):
                    b = bucket[lo:lo + step]
                    parts = _emit_batch(
                        int(c_val), src[b], dst[b], sign[b], u[b], v[b],
                        g[b], h[b], pi[b], is_merge, offset, popm)
                    q = parts[3] + w + shift
                    out_cols.append(parts[0])
                    out_rows.append(parts[1])
                    out_vals.append(parts[2])
                    out_quantum.append(q)
    if not out_cols:
        return None
    return (np.concatenate(out_cols), np.concatenate(out_rows),
            np.concatenate(out_vals), np.concatenate(out_quantum))


def _emit_batch(c_val, src, dst, sign, u, v, g, h, pi, is_merge,
                offset, popm):
    """Entries for one batch of same-circle-count states on one crossing.

    Returns (cols, rows, vals, quantum_without_level_shift) flat arrays.
    Labelled circles not at the crossing keep their identity through ``pi``;
    the crossing's own circles follow the merge or split Frobenius rule.
    """
    masks = np.arange(np.int64(1) << c_val, dtype=np.int64)
    base = np.zeros((len(src), len(masks)), dtype=np.int64)
    for t in range(c_val):
        bit = (masks >> t) & 1
        base += bit[None, :] << pi[:, t:t + 1]
    quantum = (c_val - 2 * popm[masks].astype(np.int64))
    cols = offset[src][:, None] + masks[None, :]
    sign_grid = np.broadcast_to(sign[:, None], base.shape)
    quantum_grid = np.broadcast_to(quantum[None, :], base.shape)
    if is_merge:
        bu = (masks[None, :] >> u[:, None]) & 1
        bv = (masks[None, :] >> v[:, None]) & 1
        valid = (bu & bv) == 0
        rows = offset[dst][:, None] + base
        return (cols[valid].ravel(), rows[valid].ravel(),
                sign_grid[valid].ravel(), quantum_grid[valid].ravel())
    # split: the incoming circle u turns into circles g and h downstream;
    # pi sent u to one of them, called w_pi here; the other slot is new
    w_pi = np.take_along_axis(pi, u[:, None], axis=1)[:, 0]
    other = g + h - w_pi
    bu = ((masks[None, :] >> u[:, None]) & 1).astype(bool)
    first_bit = np.where(bu, other[:, None], h[:, None])
    rows1 = offset[dst][:, None] + base + (np.int64(1) << first_bit)
    cols_all = [cols.ravel()]
    rows_all = [rows1.ravel()]
    vals_all = [sign_grid.ravel()]
    quantum_all = [quantum_grid.ravel()]
    plus_in = ~bu
    if plus_in.any():
        rows2 = offset[dst][:, None] + base + (np.int64(1) << g[:, None])
        cols_all.append(cols[plus_in].ravel())
        rows_all.append(rows2[plus_in].ravel())
        vals_all.append(sign_grid[plus_in].ravel())
        quantum_all.append(quantum_grid[plus_in].ravel())
    return (np.concatenate(cols_all), np.concatenate(rows_all),
            np.concatenate(vals_all), np.concatenate(quantum_all))


def _block_rank(rows: np.ndarray, cols: np.ndarray, vals: np.ndarray) -> int:
    """Exact rank of one graded block of the cube differential.

    Pendant pivots (a row or column with a single entry) eliminate with no
    fill-in and are batched in numpy; whatever survives goes to the exact
    sparse eliminator.
    """
    if not len(rows):
        return 0
    u_rows, rows_c = np.unique(rows, return_inverse=True)
    u_cols, cols_c = np.unique(cols, return_inverse=True)
    n_rows = len(u_rows)
    n_cols = len(u_cols)
    vals = vals.astype(np.int64)
    rank = 0
    while len(rows_c):
        row_counts = np.bincount(rows_c, minlength=n_rows)
        pend = row_counts[rows_c] == 1
        if pend.any():
            idx = np.nonzero(pend)[0]
            _, first = np.unique(cols_c[idx], return_index=True)
            chosen = idx[first]
            rank += len(chosen)
            col_dead = np.zeros(n_cols, dtype=bool)
            col_dead[cols_c[chosen]] = True
            row_dead = np.zeros(n_rows, dtype=bool)
            row_dead[rows_c[chosen]] = True
            keep = ~(col_dead[cols_c] | row_dead[rows_c])
            rows_c, cols_c, vals = rows_c[keep], cols_c[keep], vals[keep]
            continue
        col_counts = np.bincount(cols_c, minlength=n_cols)
        pend = col_counts[cols_c] == 1
        if pend.any():
            idx = np.nonzero(pend)[0]
            _, first = np.unique(rows_c[idx], return_index=True)
            chosen = idx[first]
            rank += len(chosen)
            col_dead = np.zeros(n_cols, dtype=bool)
            col_dead[cols_c[chosen]] = True
            row_dead = np.zeros(n_rows, dtype=bool)
            row_dead[rows_c[chosen]] = True
            keep = ~(col_dead[cols_c] | row_dead[rows_c])
            rows_c, cols_c, vals = rows_c[keep], cols_c[keep], vals[keep]
            continue
        break
    if not len(rows_c):
        return rank
    core: dict[int, dict[int, int]] = {}
    for r, c, x in zip(rows_c.tolist(), cols_c.tolist(), vals.tolist()):
        core.setdefault(r, {})[c] = x
    return rank + sparse_rank(core)
