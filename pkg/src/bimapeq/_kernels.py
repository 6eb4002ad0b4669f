"""Numba kernels for the randomized module sweeps.

All quantities run on the doubled scale (per-side rates sum to one per
side).  A flat module with side masses ``(pl, pr)`` and internal one-way
flow ``ii`` has boundary components ``el = pl - ii`` and ``er = pr - ii``;
its entry pair mixes those by destination type and its exit pair is the
component swap, so both words cost the same bits.  The optional external
pair ``(ext1, ext2)`` adds a parent exit word to the enclosing codebook,
which turns the same kernel into the sub-module search.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NOGIL = dict(cache=True, nogil=True)


@njit(**NOGIL)
def _plogp(x: float) -> float:
    # negative inputs are float residue from subtractions, treated as zero
    return x * np.log2(x) if x > 0.0 else 0.0


@njit(**NOGIL)
def _entry(pl, pr, ii, alpha):
    el = pl - ii
    er = pr - ii
    return (1.0 - alpha) * el + alpha * er, alpha * el + (1.0 - alpha) * er


@njit(**NOGIL)
def _flat_term(pl, pr, ii, alpha):
    """Word bits of one nonempty flat module plus its entry pair."""
    e1, e2 = _entry(pl, pr, ii, alpha)
    u1 = (1.0 - alpha) * pl + alpha * pr + e2
    u2 = alpha * pl + (1.0 - alpha) * pr + e1
    bits = -2.0 * (_plogp(e1) + _plogp(e2)) + _plogp(u1) + _plogp(u2)
    return bits, e1, e2


@njit(**NOGIL)
def flat_total(mpl, mpr, mint, mcount, alpha, ext1, ext2):
    """Structural bits of a flat state: module words plus the enclosing usage."""
    tot = 0.0
    g1 = ext1
    g2 = ext2
    for m in range(mpl.shape[0]):
        if mcount[m] > 0:
            t, e1, e2 = _flat_term(mpl[m], mpr[m], mint[m], alpha)
            tot += t
            g1 += e1
            g2 += e2
    return tot + _plogp(g1) + _plogp(g2)


@njit(**NOGIL)
def flat_gsum(mpl, mpr, mint, mcount, alpha):
    g1 = 0.0
    g2 = 0.0
    for m in range(mpl.shape[0]):
        if mcount[m] > 0:
            e1, e2 = _entry(mpl[m], mpr[m], mint[m], alpha)
            g1 += e1
            g2 += e2
    return g1, g2


@njit(**NOGIL)
def flat_sweep(
    indptr,
    indices,
    flows,
    npl,
    npr,
    nself,
    assign,
    mpl,
    mpr,
    mint,
    mcount,
    g,
    alpha,
    ext1,
    ext2,
    order,
    slot_of,
    nbr_mod,
    nbr_flow,
    empty_stack,
    eps,
):
    """One randomized pass of best-improvement single moves.

    Each node in ``order`` may move to the neighboring module with the
    most negative bit change, ties toward the lowest module id, accepted
    when the gain is at least ``eps``; detaching into a fresh module is
    a candidate too, taken only when strictly best.  ``g`` holds the
    running sum of module entry pairs; ``slot_of`` must be all minus one
    and is restored before returning.  Returns (moves, gain).
    """
    n_slots = mcount.shape[0]
    top = 0
    for m in range(n_slots):
        if mcount[m] == 0:
            empty_stack[top] = m
            top += 1
    moves = 0
    gain = 0.0
    for oi in range(order.shape[0]):
        n = order[oi]
        s = assign[n]
        cnt = 0
        for k in range(indptr[n], indptr[n + 1]):
            m = assign[indices[k]]
            f = flows[k]
            j = slot_of[m]
            if j < 0:
                slot_of[m] = cnt
                nbr_mod[cnt] = m
                nbr_flow[cnt] = f
                cnt += 1
            else:
                nbr_flow[j] += f
        js = slot_of[s]
        w_s = nbr_flow[js] if js >= 0 else 0.0

        term_s_old, e1so, e2so = _flat_term(mpl[s], mpr[s], mint[s], alpha)
        if mcount[s] == 1:
            spl = 0.0
            spr = 0.0
            sint = 0.0
            term_s_new = 0.0
            e1sn = 0.0
            e2sn = 0.0
        else:
            spl = mpl[s] - npl[n]
            spr = mpr[s] - npr[n]
            sint = mint[s] - nself[n] - w_s
            term_s_new, e1sn, e2sn = _flat_term(spl, spr, sint, alpha)
        ds = term_s_new - term_s_old
        base1 = g[0] - e1so + e1sn
        base2 = g[1] - e2so + e2sn
        root_old = _plogp(g[0] + ext1) + _plogp(g[1] + ext2)

        best_delta = -eps
        best_t = -1
        best_wt = 0.0
        for j in range(cnt):
            t = nbr_mod[j]
            if t == s:
                continue
            w_t = nbr_flow[j]
            term_t_old, e1to, e2to = _flat_term(mpl[t], mpr[t], mint[t], alpha)
            term_t_new, e1tn, e2tn = _flat_term(
                mpl[t] + npl[n], mpr[t] + npr[n], mint[t] + nself[n] + w_t, alpha
            )
            g1 = base1 - e1to + e1tn
            g2 = base2 - e2to + e2tn
            delta = (
                ds
                + term_t_new
                - term_t_old
                + _plogp(g1 + ext1)
                + _plogp(g2 + ext2)
                - root_old
            )
            if delta < best_delta or (delta == best_delta and best_t >= 0 and t < best_t):
                best_delta = delta
                best_t = t
                best_wt = w_t
        fresh = False
        if mcount[s] > 1 and top > 0:
            # detaching into an unused module is a candidate too; accepted
            # only on strict improvement so ties stay with real neighbors
            term_t_new, e1tn, e2tn = _flat_term(npl[n], npr[n], nself[n], alpha)
            g1 = base1 + e1tn
            g2 = base2 + e2tn
            delta = (
                ds
                + term_t_new
                + _plogp(g1 + ext1)
                + _plogp(g2 + ext2)
                - root_old
            )
            if delta < best_delta:
                best_delta = delta
                best_t = empty_stack[top - 1]
                best_wt = 0.0
                fresh = True
        for j in range(cnt):
            slot_of[nbr_mod[j]] = -1

        if best_t >= 0:
            t = best_t
            if fresh:
                top -= 1
            g[0] += e1sn - e1so
            g[1] += e2sn - e2so
            mpl[s] = spl
            mpr[s] = spr
            mint[s] = sint
            mcount[s] -= 1
            if mcount[s] == 0:
                empty_stack[top] = s
                top += 1
            e1to, e2to = _entry(mpl[t], mpr[t], mint[t], alpha)
            mpl[t] += npl[n]
            mpr[t] += npr[n]
            mint[t] += nself[n] + best_wt
            mcount[t] += 1
            e1tn, e2tn = _entry(mpl[t], mpr[t], mint[t], alpha)
            g[0] += e1tn - e1to
            g[1] += e2tn - e2to
            assign[n] = t
            moves += 1
            gain -= best_delta
    return moves, gain


@njit(**NOGIL)
def _super_term(pl, pr, ii, se1, se2, count, alpha):
    """Variable bits and entry pair of one group of top-level items.

    A group of one item adds no book of its own but still owns a root
    entry; its entry pair equals the lone item's pair because the triple
    is the item's triple.
    """
    if count == 0:
        return 0.0, 0.0, 0.0
    e1, e2 = _entry(pl, pr, ii, alpha)
    if count == 1:
        return 0.0, e1, e2
    v1 = se1 + e2
    v2 = se2 + e1
    return -2.0 * (_plogp(e1) + _plogp(e2)) + _plogp(v1) + _plogp(v2), e1, e2


@njit(**NOGIL)
def super_gsum(gpl, gpr, gint, gcount, alpha):
    """Sum of group entry pairs, the root book usage."""
    r1 = 0.0
    r2 = 0.0
    for m in range(gpl.shape[0]):
        if gcount[m] > 0:
            e1, e2 = _entry(gpl[m], gpr[m], gint[m], alpha)
            r1 += e1
            r2 += e2
    return r1, r2


@njit(**NOGIL)
def super_total(gpl, gpr, gint, ge1, ge2, gcount, alpha):
    """Variable bits of a grouping: group books plus the root usage."""
    tot = 0.0
    r1 = 0.0
    r2 = 0.0
    for m in range(gpl.shape[0]):
        t, e1, e2 = _super_term(gpl[m], gpr[m], gint[m], ge1[m], ge2[m], gcount[m], alpha)
        tot += t
        r1 += e1
        r2 += e2
    return tot + _plogp(r1) + _plogp(r2)


@njit(**NOGIL)
def super_sweep(
    indptr,
    indices,
    flows,
    ipl,
    ipr,
    iself,
    ie1,
    ie2,
    assign,
    gpl,
    gpr,
    gint,
    ge1,
    ge2,
    gcount,
    g,
    alpha,
    order,
    slot_of,
    nbr_mod,
    nbr_flow,
    eps,
):
    """Best-improvement pass grouping top-level items under super modules.

    Items carry fixed entry pairs ``(ie1, ie2)``; a group's book usage is
    the sum of member entry pairs plus the group's swapped entry pair,
    and the root book usage ``g`` sums group entry pairs computed from
    the merged triples.  Grouping everything into one super is exactly
    bit-neutral, so it can never be reached by negative-delta moves.
    """
    moves = 0
    gain = 0.0
    for oi in range(order.shape[0]):
        i = order[oi]
        s = assign[i]
        cnt = 0
        for k in range(indptr[i], indptr[i + 1]):
            m = assign[indices[k]]
            f = flows[k]
            j = slot_of[m]
            if j < 0:
                slot_of[m] = cnt
                nbr_mod[cnt] = m
                nbr_flow[cnt] = f
                cnt += 1
            else:
                nbr_flow[j] += f
        js = slot_of[s]
        w_s = nbr_flow[js] if js >= 0 else 0.0

        old_s, e1so, e2so = _super_term(gpl[s], gpr[s], gint[s], ge1[s], ge2[s], gcount[s], alpha)
        if gcount[s] == 1:
            spl = 0.0
            spr = 0.0
            sint = 0.0
            se1 = 0.0
            se2 = 0.0
        else:
            spl = gpl[s] - ipl[i]
            spr = gpr[s] - ipr[i]
            sint = gint[s] - iself[i] - w_s
            se1 = ge1[s] - ie1[i]
            se2 = ge2[s] - ie2[i]
        new_s, e1sn, e2sn = _super_term(spl, spr, sint, se1, se2, gcount[s] - 1, alpha)
        ds = new_s - old_s
        base1 = g[0] - e1so + e1sn
        base2 = g[1] - e2so + e2sn
        root_old = _plogp(g[0]) + _plogp(g[1])

        best_delta = -eps
        best_t = -1
        best_wt = 0.0
        for j in range(cnt):
            t = nbr_mod[j]
            if t == s:
                continue
            w_t = nbr_flow[j]
            old_t, e1to, e2to = _super_term(
                gpl[t], gpr[t], gint[t], ge1[t], ge2[t], gcount[t], alpha
            )
            new_t, e1tn, e2tn = _super_term(
                gpl[t] + ipl[i],
                gpr[t] + ipr[i],
                gint[t] + iself[i] + w_t,
                ge1[t] + ie1[i],
                ge2[t] + ie2[i],
                gcount[t] + 1,
                alpha,
            )
            r1 = base1 - e1to + e1tn
            r2 = base2 - e2to + e2tn
            delta = ds + new_t - old_t + _plogp(r1) + _plogp(r2) - root_old
            if delta < best_delta or (delta == best_delta and best_t >= 0 and t < best_t):
                best_delta = delta
                best_t = t
                best_wt = w_t
        for j in range(cnt):
            slot_of[nbr_mod[j]] = -1

        if best_t >= 0:
            t = best_t
            g[0] += e1sn - e1so
            g[1] += e2sn - e2so
            gpl[s] = spl
            gpr[s] = spr
            gint[s] = sint
            ge1[s] = se1
            ge2[s] = se2
            gcount[s] -= 1
            _, e1to, e2to = _super_term(gpl[t], gpr[t], gint[t], ge1[t], ge2[t], gcount[t], alpha)
            gpl[t] += ipl[i]
            gpr[t] += ipr[i]
            gint[t] += iself[i] + best_wt
            ge1[t] += ie1[i]
            ge2[t] += ie2[i]
            gcount[t] += 1
            _, e1tn, e2tn = _super_term(gpl[t], gpr[t], gint[t], ge1[t], ge2[t], gcount[t], alpha)
            g[0] += e1tn - e1to
            g[1] += e2tn - e2to
            assign[i] = t
            moves += 1
            gain -= best_delta
    return moves, gain


@njit(**NOGIL)
def pregroup_unions(indptr, indices, cand, pick_a, pick_b, parent, size, cap):
    """Union candidate nodes with random two-hop neighbors, capped in size.

    Two hops land on the candidate's own side, so the resulting groups
    are type-pure.  Grouping nodes of one type never changes the code
    length (a pure book costs its usage times the type entropy, which is
    linear), so any state built here scores exactly like singletons.
    The size cap keeps groups small and varied; at alpha near zero a
    pure group can only grow or merge during descent, never dissolve,
    so oversized groups would pin the sweep.
    """
    for i in range(cand.shape[0]):
        u = cand[i]
        d = indptr[u + 1] - indptr[u]
        if d == 0:
            continue
        v = indices[indptr[u] + np.int64(pick_a[i] * d)]
        d2 = indptr[v + 1] - indptr[v]
        if d2 == 0:
            continue
        w = indices[indptr[v] + np.int64(pick_b[i] * d2)]
        if w == u:
            continue
        ru = u
        while parent[ru] != ru:
            parent[ru] = parent[parent[ru]]
            ru = parent[ru]
        rw = w
        while parent[rw] != rw:
            parent[rw] = parent[parent[rw]]
            rw = parent[rw]
        if ru == rw or size[ru] + size[rw] > cap:
            continue
        if ru < rw:
            parent[rw] = ru
            size[ru] += size[rw]
        else:
            parent[ru] = rw
            size[rw] += size[ru]
    for x in range(parent.shape[0]):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            nxt = parent[x]
            parent[x] = r
            x = nxt
