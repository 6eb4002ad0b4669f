"""Code length of partition trees over type-mixed walker flows.

Every codebook prices its code words per remembered type: a codebook
with entry pairs ``(x_i, y_i)`` costs ``C1 H1 + C2 H2`` bits on the
doubled scale, where ``C1 = sum x_i``, ``H1`` is the entropy of the
normalized first components, and likewise for the second.  The code
length of a tree is half the sum over its codebooks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flow import RatePair, flow_summary, mixed_rate, visit_rates
from .network import BipartiteNetwork
from .partition import PartitionTree, dense_assignment
from .typeinfo import type_entropy

__all__ = [
    "codebook_bits",
    "CodeLength",
    "codelength",
    "one_level_codelength",
    "standard_codelength",
    "bipartite_codelength",
    "TwoLevelState",
    "delta_codelength",
]


def _plogp(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def codebook_bits(entries) -> float:
    """Bits used by one codebook, doubled scale.

    ``entries`` is an iterable of rate pairs.  Each pair component forms
    its own codeword distribution: component sums ``C_i`` weight the
    entropies ``H_i`` of the normalized component values.
    """
    arr = np.asarray([tuple(e) for e in entries], dtype=np.float64)
    if arr.size == 0:
        return 0.0
    bits = 0.0
    for i in (0, 1):
        col = arr[:, i]
        c = float(col.sum())
        if c <= 0.0:
            continue
        pos = col[col > 0.0]
        bits += _plogp(c) - float(np.sum(pos * np.log2(pos)))
    return bits


@dataclass(frozen=True)
class CodeLength:
    """Total bits with per-codebook contributions for diagnostics."""

    bits: float
    per_book: tuple[tuple[tuple[int, ...], float], ...]

    def __float__(self) -> float:
        return self.bits

    def book_bits(self, path: tuple[int, ...]) -> float:
        for p, b in self.per_book:
            if p == path:
                return b
        raise KeyError(f"no codebook at path {path}")


def codelength(net: BipartiteNetwork, tree: PartitionTree, alpha: float) -> CodeLength:
    """Evaluate a partition tree at flipping rate ``alpha``.

    Half the sum of :func:`codebook_bits` over the tree's codebooks.
    """
    summary = flow_summary(net, tree, alpha)
    per_book = tuple((book.path, codebook_bits(book.entries) / 2.0) for book in summary.books)
    return CodeLength(bits=float(sum(b for _, b in per_book)), per_book=per_book)


def one_level_codelength(net: BipartiteNetwork, alpha: float) -> float:
    """Code length of the one-module partition, in closed form.

    Equals the entropy of the two-step visit rates minus the retained
    type information ``1 - H(1-alpha, alpha)``; identical to evaluating
    the one-module tree with the general machinery.
    """
    two = visit_rates(net).two_step
    ent = -float(np.sum(two * np.log2(two, where=two > 0, out=np.zeros_like(two))))
    return ent - (1.0 - type_entropy(alpha))


def standard_codelength(net: BipartiteNetwork, tree: PartitionTree) -> CodeLength:
    """Type-blind objective; the ``alpha = 1/2`` point of the family."""
    return codelength(net, tree, 0.5)


def bipartite_codelength(net: BipartiteNetwork, tree: PartitionTree) -> CodeLength:
    """Fully type-aware objective; the ``alpha = 0`` point of the family."""
    return codelength(net, tree, 0.0)


class TwoLevelState:
    """Incremental flat-partition evaluation under single-node moves.

    Keeps per-module side masses, internal flow, and the index-book
    usage so that the bit change of moving one node is O(degree).
    The alternative bookkeeping: a module with side masses ``(PL, PR)``
    and internal one-way flow ``I`` has boundary components
    ``eL = PL - I`` and ``eR = PR - I``; its entry pair mixes these by
    destination type and its exit pair is the component swap.
    """

    def __init__(self, net: BipartiteNetwork, assignment, alpha: float):
        if not 0.0 <= alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        self.net = net
        self.alpha = float(alpha)
        n = net.n_nodes
        a = dense_assignment(np.asarray(assignment, dtype=np.int64))
        if a.size != n:
            raise ValueError("assignment must cover every node")
        self.assignment = a

        # adjacency in CSR form, one row per node, flows w / total
        deg = np.bincount(net.edge_left, minlength=n) + np.bincount(net.edge_right, minlength=n)
        self.indptr = np.concatenate([[0], np.cumsum(deg)]).astype(np.int64)
        self.indices = np.empty(2 * net.n_edges, dtype=np.int64)
        self.flows = np.empty(2 * net.n_edges, dtype=np.float64)
        cursor = self.indptr[:-1].copy()
        total = net.total_weight
        for u, v, w in zip(net.edge_left, net.edge_right, net.weights):
            f = w / total
            self.indices[cursor[u]] = v
            self.flows[cursor[u]] = f
            cursor[u] += 1
            self.indices[cursor[v]] = u
            self.flows[cursor[v]] = f
            cursor[v] += 1

        side = visit_rates(net).side_rate
        is_left = np.arange(n) < net.n_left
        self.node_pl = np.where(is_left, side, 0.0)
        self.node_pr = np.where(is_left, 0.0, side)
        self.node_const = sum(
            -(_plogp(a1) + _plogp(b1))
            for a1, b1 in (mixed_rate(net.side(i), float(side[i]), alpha) for i in range(n))
        )

        self.mod_pl = np.zeros(n, dtype=np.float64)
        self.mod_pr = np.zeros(n, dtype=np.float64)
        self.mod_int = np.zeros(n, dtype=np.float64)
        self.mod_count = np.zeros(n, dtype=np.int64)
        np.add.at(self.mod_pl, a, self.node_pl)
        np.add.at(self.mod_pr, a, self.node_pr)
        np.add.at(self.mod_count, a, 1)
        same = a[net.edge_left] == a[net.edge_right]
        np.add.at(self.mod_int, a[net.edge_left[same]], net.weights[same] / total)
        self.g1 = 0.0
        self.g2 = 0.0
        for m in np.flatnonzero(self.mod_count):
            e1, e2 = self._entry(self.mod_pl[m], self.mod_pr[m], self.mod_int[m])
            self.g1 += e1
            self.g2 += e2

    def _entry(self, pl: float, pr: float, internal: float) -> tuple[float, float]:
        el = pl - internal
        er = pr - internal
        a = self.alpha
        return (1.0 - a) * el + a * er, a * el + (1.0 - a) * er

    def _module_term(self, pl: float, pr: float, internal: float, empty: bool) -> tuple[float, float, float]:
        """Doubled-scale bits of one module's words, plus its entry pair."""
        if empty:
            return 0.0, 0.0, 0.0
        e1, e2 = self._entry(pl, pr, internal)
        a = self.alpha
        u1 = (1.0 - a) * pl + a * pr + e2
        u2 = a * pl + (1.0 - a) * pr + e1
        term = -2.0 * (_plogp(e1) + _plogp(e2)) + _plogp(u1) + _plogp(u2)
        return term, e1, e2

    @property
    def bits(self) -> float:
        """Current code length in bits (two-step scale)."""
        total = self.node_const + _plogp(self.g1) + _plogp(self.g2)
        for m in np.flatnonzero(self.mod_count):
            term, _, _ = self._module_term(self.mod_pl[m], self.mod_pr[m], self.mod_int[m], False)
            total += term
        return total / 2.0

    def fresh_module(self) -> int:
        """An unused module id, for moves that split a node off."""
        empty = np.flatnonzero(self.mod_count == 0)
        if empty.size == 0:
            raise RuntimeError("no free module slot")
        return int(empty[0])

    def _neighbor_flow(self, node: int, module: int) -> float:
        lo, hi = self.indptr[node], self.indptr[node + 1]
        nbrs = self.indices[lo:hi]
        return float(np.sum(self.flows[lo:hi][self.assignment[nbrs] == module]))

    def _check_ids(self, node: int, target: int) -> None:
        if not 0 <= node < self.net.n_nodes:
            raise ValueError(f"unknown node id {node}")
        if not 0 <= target < self.mod_count.size:
            raise ValueError(f"unknown module id {target}")

    def delta_move(self, node: int, target: int) -> float:
        """Bit change of moving ``node`` to module ``target``; zero if already there."""
        self._check_ids(node, target)
        source = int(self.assignment[node])
        if target == source:
            return 0.0
        w_s = self._neighbor_flow(node, source)
        w_t = self._neighbor_flow(node, target)
        pl_n, pr_n = float(self.node_pl[node]), float(self.node_pr[node])

        old_s, e1s, e2s = self._module_term(
            self.mod_pl[source], self.mod_pr[source], self.mod_int[source], False
        )
        new_s, e1s2, e2s2 = self._module_term(
            self.mod_pl[source] - pl_n,
            self.mod_pr[source] - pr_n,
            self.mod_int[source] - w_s,
            self.mod_count[source] == 1,
        )
        old_t, e1t, e2t = self._module_term(
            self.mod_pl[target], self.mod_pr[target], self.mod_int[target],
            self.mod_count[target] == 0,
        )
        new_t, e1t2, e2t2 = self._module_term(
            self.mod_pl[target] + pl_n,
            self.mod_pr[target] + pr_n,
            self.mod_int[target] + w_t,
            False,
        )
        g1 = self.g1 - e1s - e1t + e1s2 + e1t2
        g2 = self.g2 - e2s - e2t + e2s2 + e2t2
        delta = (
            (new_s - old_s)
            + (new_t - old_t)
            + _plogp(g1)
            + _plogp(g2)
            - _plogp(self.g1)
            - _plogp(self.g2)
        )
        return delta / 2.0

    def apply_move(self, node: int, target: int) -> None:
        self._check_ids(node, target)
        source = int(self.assignment[node])
        if target == source:
            return
        w_s = self._neighbor_flow(node, source)
        w_t = self._neighbor_flow(node, target)
        for m in (source, target):
            _, e1, e2 = self._module_term(
                self.mod_pl[m], self.mod_pr[m], self.mod_int[m], self.mod_count[m] == 0
            )
            self.g1 -= e1
            self.g2 -= e2
        pl_n, pr_n = float(self.node_pl[node]), float(self.node_pr[node])
        self.mod_pl[source] -= pl_n
        self.mod_pr[source] -= pr_n
        self.mod_int[source] -= w_s
        self.mod_count[source] -= 1
        if self.mod_count[source] == 0:
            # clear float residue so the slot can be reused exactly
            self.mod_pl[source] = 0.0
            self.mod_pr[source] = 0.0
            self.mod_int[source] = 0.0
        self.mod_pl[target] += pl_n
        self.mod_pr[target] += pr_n
        self.mod_int[target] += w_t
        self.mod_count[target] += 1
        self.assignment[node] = target
        for m in (source, target):
            _, e1, e2 = self._module_term(
                self.mod_pl[m], self.mod_pr[m], self.mod_int[m], self.mod_count[m] == 0
            )
            self.g1 += e1
            self.g2 += e2


def delta_codelength(state: TwoLevelState, node: int, target_module: int) -> float:
    """Bit change of a single-node move under incremental bookkeeping."""
    return state.delta_move(node, target_module)
