"""Exhaustive ground truth for small networks.

Enumerates every flat partition of the node set via restricted-growth
strings and evaluates each one directly from the definition (per-module
codebooks plus an index codebook, mixed rate pairs, destination-typed
boundary flows).  The evaluator here shares no bookkeeping with the
incremental machinery in :mod:`bimapeq.codelength`, so agreement between
the two is a meaningful check rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .network import BipartiteNetwork
from .partition import PartitionTree, one_module_tree, two_level_tree

__all__ = ["OracleResult", "best_partition_bruteforce"]

_LG2 = float(np.log(2.0))


@njit(cache=True)
def _plogp(x):
    if x <= 0.0:
        return 0.0
    return x * np.log(x) / _LG2


@njit(cache=True)
def _assignment_bits(a, n, ul, vr, fl1, fl2, fr1, fr2, m1, m2, node_plogp):
    """Code length of the flat assignment `a`, directly from the books.

    fl*/fr* are the per-edge mixed pair components of a step landing on
    the left / right endpoint; m1/m2 are the node visit pair components.
    A single-block assignment degenerates to the one-level code.
    """
    k = 0
    for i in range(n):
        if a[i] + 1 > k:
            k = a[i] + 1
    c1 = np.zeros(k)
    c2 = np.zeros(k)
    e1 = np.zeros(k)
    e2 = np.zeros(k)
    x1 = np.zeros(k)
    x2 = np.zeros(k)
    for i in range(n):
        c1[a[i]] += m1[i]
        c2[a[i]] += m2[i]
    for e in range(ul.shape[0]):
        mu = a[ul[e]]
        mv = a[vr[e]]
        if mu == mv:
            continue
        # step u -> v lands on the right endpoint
        x1[mu] += fr1[e]
        x2[mu] += fr2[e]
        e1[mv] += fr1[e]
        e2[mv] += fr2[e]
        # step v -> u lands on the left endpoint
        x1[mv] += fl1[e]
        x2[mv] += fl2[e]
        e1[mu] += fl1[e]
        e2[mu] += fl2[e]
    bits = -node_plogp
    g1 = 0.0
    g2 = 0.0
    for mod in range(k):
        bits += _plogp(c1[mod] + x1[mod]) + _plogp(c2[mod] + x2[mod])
        bits -= _plogp(x1[mod]) + _plogp(x2[mod])
        bits -= _plogp(e1[mod]) + _plogp(e2[mod])
        g1 += e1[mod]
        g2 += e2[mod]
    bits += _plogp(g1) + _plogp(g2)
    return 0.5 * bits


@njit(cache=True)
def _scan(n, ul, vr, fl1, fl2, fr1, fr2, m1, m2, node_plogp, best, tol, out):
    """One pass over all restricted-growth strings of length n.

    With best = inf finds the minimum and the tie count; with best set,
    fills `out` with every assignment within `tol` of it.  Returns
    (best bits, number of minimizers, strings examined).
    """
    a = np.zeros(n, dtype=np.int8)
    hits = 0
    examined = 0
    counting = out.shape[0] == 0
    while True:
        examined += 1
        bits = _assignment_bits(a, n, ul, vr, fl1, fl2, fr1, fr2, m1, m2, node_plogp)
        if counting:
            # running-best count can only overcount ties of the final
            # minimum, so it is a safe buffer size for the fill pass
            if bits < best:
                best = bits
                hits = 1
            elif bits <= best + tol:
                hits += 1
        elif bits <= best + tol and hits < out.shape[0]:
            out[hits, :] = a
            hits += 1
        # lexicographic successor: bump the rightmost slot still below
        # its prefix maximum + 1, zero the tail
        j = n - 1
        while j > 0:
            pm = np.int8(0)
            for i in range(j):
                if a[i] > pm:
                    pm = a[i]
            if a[j] <= pm:
                break
            j -= 1
        if j == 0:
            return best, hits, examined
        a[j] += 1
        for i in range(j + 1, n):
            a[i] = 0


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exhaustive partition scan.

    Attributes
    ----------
    bits : float
        Minimum code length over all flat partitions.
    assignments : tuple of ndarray
        Every minimizing assignment (dense module ids in first-visit
        order, so module relabelings appear once).
    examined : int
        Number of partitions evaluated (the Bell number of the node count).
    """

    bits: float
    assignments: tuple
    examined: int

    @property
    def trees(self):
        """Minimizing partitions as trees (one-level for a single block)."""
        out = []
        for a in self.assignments:
            if a.max() == 0:
                out.append(one_module_tree(a.shape[0]))
            else:
                out.append(two_level_tree(a))
        return tuple(out)


def _edge_tables(net: BipartiteNetwork, alpha: float):
    p = net.strengths / net.total_weight
    n = net.n_nodes
    m1 = np.where(np.arange(n) < net.n_left, (1.0 - alpha) * p, alpha * p)
    m2 = np.where(np.arange(n) < net.n_left, alpha * p, (1.0 - alpha) * p)
    f = net.weights / net.total_weight
    # mixed pair of a step landing on the left / right endpoint
    fl1 = (1.0 - alpha) * f
    fl2 = alpha * f
    fr1 = alpha * f
    fr2 = (1.0 - alpha) * f
    comps = np.concatenate([m1[m1 > 0], m2[m2 > 0]])
    node_plogp = float(np.sum(comps * np.log2(comps)))
    return m1, m2, fl1, fl2, fr1, fr2, node_plogp


def best_partition_bruteforce(
    net: BipartiteNetwork, alpha: float, max_nodes: int = 12
) -> OracleResult:
    """Find the globally optimal flat partition by exhaustive search.

    Parameters
    ----------
    net : BipartiteNetwork
        Network to partition.
    alpha : float
        Node-type flipping rate in [0, 1].
    max_nodes : int, optional
        Safety bound; the scan touches the Bell number of `n` partitions
        (B(12) is about 4.2 million).

    Returns
    -------
    OracleResult
        Optimal bits, every optimal assignment, and the number examined.

    Raises
    ------
    ValueError
        If the network has more than `max_nodes` nodes.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    n = net.n_nodes
    if n > max_nodes:
        raise ValueError(
            f"network has {n} nodes, above the brute-force bound {max_nodes}"
        )
    m1, m2, fl1, fl2, fr1, fr2, node_plogp = _edge_tables(net, alpha)
    ul = net.edge_left
    vr = net.edge_right
    tol = 1e-12
    empty = np.empty((0, n), dtype=np.int8)
    best, hits, examined = _scan(
        n, ul, vr, fl1, fl2, fr1, fr2, m1, m2, node_plogp, np.inf, tol, empty
    )
    out = np.empty((hits, n), dtype=np.int8)
    _, hits2, _ = _scan(
        n, ul, vr, fl1, fl2, fr1, fr2, m1, m2, node_plogp, best, tol, out
    )
    assignments = tuple(
        out[i].astype(np.int64) for i in range(hits2)
    )
    return OracleResult(bits=float(best), assignments=assignments, examined=examined)
