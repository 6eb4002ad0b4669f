"""Walker flows on bipartite networks with partially remembered node types.

All pair rates use the doubled scale: each side's visit rates sum to one,
so rates over both sides sum to two and a final code length is half the
sum of per-codebook bits.  A rate pair splits a flow between the two
possible remembered types; component one is "reported left", component
two "reported right".  A walker leaving a node of true type left reports
left with probability ``1 - alpha`` and right with probability ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .network import BipartiteNetwork
from .partition import PartitionTree

__all__ = ["RatePair", "VisitRates", "CodebookFlows", "FlowSummary", "mixed_rate", "visit_rates", "flow_summary"]


class RatePair(NamedTuple):
    """Flow split by remembered node type."""

    left: float
    right: float


def mixed_rate(side: str, rate: float, alpha: float) -> RatePair:
    """Split a visit rate by remembered type for a node of true type ``side``.

    ``side`` is ``"L"`` or ``"R"``; with flipping rate ``alpha`` a left
    node's rate ``p`` becomes ``((1 - alpha) p, alpha p)`` and a right
    node's the reverse.
    """
    if side == "L":
        return RatePair((1.0 - alpha) * rate, alpha * rate)
    if side == "R":
        return RatePair(alpha * rate, (1.0 - alpha) * rate)
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


@dataclass(frozen=True, eq=False)
class VisitRates:
    """Stationary visit rates of the alternating walker.

    ``side_rate`` is the doubled scale (sums to one per side),
    ``two_step`` is ``side_rate / 2`` (sums to one overall).
    """

    side_rate: np.ndarray
    two_step: np.ndarray


def visit_rates(net: BipartiteNetwork) -> VisitRates:
    """Visit rates proportional to node strength, normalized per side."""
    side = net.strengths / net.total_weight
    side.setflags(write=False)
    two = side / 2.0
    two.setflags(write=False)
    return VisitRates(side_rate=side, two_step=two)


@dataclass(frozen=True, eq=False)
class CodebookFlows:
    """Code word rates of one codebook, doubled scale.

    Leaf books list one pair per member node plus an exit word; internal
    books list one pair per child plus an exit word.  The exit is None
    when no flow crosses the boundary (always for the root).
    """

    path: tuple[int, ...]
    node_entries: tuple[tuple[int, RatePair], ...]
    child_entries: tuple[RatePair, ...]
    exit: RatePair | None

    @property
    def entries(self) -> list[RatePair]:
        out = [pair for _, pair in self.node_entries]
        out.extend(self.child_entries)
        if self.exit is not None:
            out.append(self.exit)
        return out

    @property
    def usage(self) -> RatePair:
        entries = self.entries
        return RatePair(
            float(sum(e.left for e in entries)),
            float(sum(e.right for e in entries)),
        )


@dataclass(frozen=True, eq=False)
class FlowSummary:
    """Per-codebook flows for a partition tree at a given flipping rate."""

    alpha: float
    books: tuple[CodebookFlows, ...]

    def book_at(self, path: tuple[int, ...]) -> CodebookFlows:
        for book in self.books:
            if book.path == path:
                return book
        raise KeyError(f"no codebook at path {path}")


def flow_summary(net: BipartiteNetwork, tree: PartitionTree, alpha: float) -> FlowSummary:
    """Collect code word rates for every codebook of a partition tree.

    Boundary flow is classified by the type of the destination node:
    a step ``a -> b`` leaving a tree node contributes the edge flow to
    that node's exit, split as a destination-type mixed rate, and
    symmetrically for entries.  Node words use the mixed side rates.

    Raises ValueError for an invalid tree or alpha outside [0, 1].
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    tree.validate(net.n_nodes)
    rates = visit_rates(net)

    order = [(path, t) for path, t in tree.walk()]
    index = {id(t): i for i, (_, t) in enumerate(order)}
    parent = np.full(len(order), -1, dtype=np.int64)
    depth = np.zeros(len(order), dtype=np.int64)
    for i, (path, t) in enumerate(order):
        depth[i] = len(path)
        for child in t.children:
            parent[index[id(child)]] = i
    leaf_of = np.full(net.n_nodes, -1, dtype=np.int64)
    for i, (_, t) in enumerate(order):
        if t.is_leaf:
            leaf_of[t.nodes] = i

    entry = np.zeros((len(order), 2))
    exit_ = np.zeros((len(order), 2))

    def climb(a: int, b: int) -> tuple[list[int], list[int]]:
        """Tree nodes containing a but not b, and b but not a."""
        ia, ib = int(leaf_of[a]), int(leaf_of[b])
        only_a, only_b = [], []
        while ia != ib:
            if depth[ia] >= depth[ib]:
                only_a.append(ia)
                ia = int(parent[ia])
            else:
                only_b.append(ib)
                ib = int(parent[ib])
        return only_a, only_b

    total = net.total_weight
    for u, v, w in zip(net.edge_left, net.edge_right, net.weights):
        u, v = int(u), int(v)
        if leaf_of[u] == leaf_of[v]:
            continue
        f = w / total
        holds_u, holds_v = climb(u, v)
        to_v = mixed_rate(net.side(v), f, alpha)  # step u -> v
        to_u = mixed_rate(net.side(u), f, alpha)  # step v -> u
        for t in holds_u:
            exit_[t] += to_v
            entry[t] += to_u
        for t in holds_v:
            entry[t] += to_v
            exit_[t] += to_u

    books = []
    for i, (path, t) in enumerate(order):
        ex = RatePair(float(exit_[i, 0]), float(exit_[i, 1]))
        if ex.left == 0.0 and ex.right == 0.0:
            ex = None
        if t.is_leaf:
            node_entries = tuple(
                (int(n), mixed_rate(net.side(int(n)), float(rates.side_rate[n]), alpha))
                for n in t.nodes
            )
            books.append(CodebookFlows(path, node_entries, (), ex))
        else:
            child_pairs = tuple(
                RatePair(float(entry[index[id(c)], 0]), float(entry[index[id(c)], 1]))
                for c in t.children
            )
            books.append(CodebookFlows(path, (), child_pairs, ex))
    return FlowSummary(alpha=alpha, books=tuple(books))
