"""Undirected weighted bipartite networks: construction, file formats, preprocessing."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "BipartiteNetwork",
    "NetworkFormatError",
    "parse_network",
    "format_network",
    "largest_connected_component",
    "is_connected",
]


class NetworkFormatError(ValueError):
    """Network input text that cannot be parsed or fails validation."""


@dataclass(frozen=True, eq=False)
class BipartiteNetwork:
    """Immutable undirected weighted bipartite network.

    Nodes carry a single global index: left nodes occupy ``0..n_left-1``
    and right nodes ``n_left..n_nodes-1``.  Edges are stored once, left
    endpoint first, with parallel edges merged by weight summation.

    Attributes
    ----------
    n_left, n_right : int
        Node counts per side, both at least one.
    edge_left, edge_right : ndarray of int64
        Global endpoint indices per edge.
    weights : ndarray of float64
        Positive edge weights.
    names : tuple of str
        Node labels in global index order.
    origin : tuple of int, optional
        For networks produced by component extraction, the original
        global index of each node.
    """

    n_left: int
    n_right: int
    edge_left: np.ndarray
    edge_right: np.ndarray
    weights: np.ndarray
    names: tuple[str, ...]
    origin: tuple[int, ...] | None = field(default=None, repr=False)

    @classmethod
    def from_arrays(
        cls,
        n_left: int,
        n_right: int,
        edge_left: np.ndarray,
        edge_right: np.ndarray,
        weights: np.ndarray,
        names: tuple[str, ...] | None = None,
        origin: tuple[int, ...] | None = None,
    ) -> "BipartiteNetwork":
        """Validate, merge parallel edges, and freeze a network.

        ``edge_left`` and ``edge_right`` hold global indices; weights must
        be positive and the edge list non-empty.
        """
        if n_left < 1 or n_right < 1:
            raise NetworkFormatError("need at least one node on each side")
        u = np.asarray(edge_left, dtype=np.int64)
        v = np.asarray(edge_right, dtype=np.int64)
        w = np.asarray(weights, dtype=np.float64)
        if not (u.shape == v.shape == w.shape) or u.ndim != 1:
            raise ValueError("edge arrays must be 1-d and equal length")
        if u.size == 0:
            raise NetworkFormatError("empty edge list")
        if np.any(u < 0) or np.any(u >= n_left):
            raise NetworkFormatError("edge references a node outside the left side")
        if np.any(v < n_left) or np.any(v >= n_left + n_right):
            raise NetworkFormatError("edge references a node outside the right side")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise NetworkFormatError("edge weights must be positive and finite")
        # merge parallel edges, preserving first-appearance order
        key = u * np.int64(n_left + n_right) + v
        first: dict[int, int] = {}
        mu, mv, mw = [], [], []
        for i in range(u.size):
            k = int(key[i])
            j = first.get(k)
            if j is None:
                first[k] = len(mu)
                mu.append(u[i])
                mv.append(v[i])
                mw.append(w[i])
            else:
                mw[j] += w[i]
        u = np.array(mu, dtype=np.int64)
        v = np.array(mv, dtype=np.int64)
        w = np.array(mw, dtype=np.float64)
        n = n_left + n_right
        if names is None:
            names = tuple(f"L{i}" for i in range(n_left)) + tuple(
                f"R{i}" for i in range(n_right)
            )
        if len(names) != n:
            raise ValueError("names must cover every node")
        for a in (u, v, w):
            a.setflags(write=False)
        return cls(n_left, n_right, u, v, w, tuple(names), origin)

    @property
    def n_nodes(self) -> int:
        return self.n_left + self.n_right

    @property
    def n_edges(self) -> int:
        return int(self.weights.size)

    @cached_property
    def total_weight(self) -> float:
        """Sum of edge weights over one edge direction."""
        return float(self.weights.sum())

    @cached_property
    def strengths(self) -> np.ndarray:
        """Weighted degree per global node index."""
        s = np.bincount(self.edge_left, weights=self.weights, minlength=self.n_nodes)
        s += np.bincount(self.edge_right, weights=self.weights, minlength=self.n_nodes)
        s.setflags(write=False)
        return s

    def is_left(self, node: int) -> bool:
        return node < self.n_left

    def side(self, node: int) -> str:
        """Return ``"L"`` or ``"R"`` for a global node index."""
        return "L" if node < self.n_left else "R"


def _parse_tsv(text: str) -> BipartiteNetwork:
    left_ids: dict[str, int] = {}
    right_ids: dict[str, int] = {}
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise NetworkFormatError(f"line {lineno}: expected 2 or 3 columns, got {len(parts)}")
        a, b = parts[0], parts[1]
        if a in right_ids:
            raise NetworkFormatError(f"line {lineno}: label {a!r} already used in the right column")
        if b in left_ids:
            raise NetworkFormatError(f"line {lineno}: label {b!r} already used in the left column")
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise NetworkFormatError(f"line {lineno}: bad weight {parts[2]!r}") from None
        else:
            w = 1.0
        if not np.isfinite(w) or w <= 0.0:
            raise NetworkFormatError(f"line {lineno}: non-positive weight {parts[2]!r}")
        li = left_ids.setdefault(a, len(left_ids))
        ri = right_ids.setdefault(b, len(right_ids))
        edges.append((li, ri, w))
    if not edges:
        raise NetworkFormatError("empty edge list")
    n_left = len(left_ids)
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] + n_left for e in edges], dtype=np.int64)
    w = np.array([e[2] for e in edges], dtype=np.float64)
    names = tuple(left_ids) + tuple(right_ids)
    return BipartiteNetwork.from_arrays(n_left, len(right_ids), u, v, w, names)


_VERTEX_RE = re.compile(r'^(\d+)\s+"([^"]*)"\s*$')


def _parse_bipartite_pajek(text: str) -> BipartiteNetwork:
    n_total = 0
    split = 0  # first right id, 1-based
    names: dict[int, str] = {}
    edges: list[tuple[int, int, float]] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%") or line.startswith("#"):
            continue
        low = line.lower()
        if low.startswith("*vertices"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise NetworkFormatError(f"line {lineno}: malformed *Vertices header")
            n_total = int(parts[1])
            section = "vertices"
            continue
        if low.startswith("*bipartite"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise NetworkFormatError(f"line {lineno}: malformed *Bipartite header")
            split = int(parts[1])
            section = "edges"
            continue
        if line.startswith("*"):
            raise NetworkFormatError(f"line {lineno}: unknown section {line.split()[0]!r}")
        if section == "vertices":
            m = _VERTEX_RE.match(line)
            if m:
                vid, name = int(m.group(1)), m.group(2)
            else:
                parts = line.split()
                if len(parts) != 2 or not parts[0].isdigit():
                    raise NetworkFormatError(f"line {lineno}: malformed vertex line")
                vid, name = int(parts[0]), parts[1]
            if not 1 <= vid <= n_total:
                raise NetworkFormatError(f"line {lineno}: vertex id {vid} outside 1..{n_total}")
            if vid in names:
                raise NetworkFormatError(f"line {lineno}: duplicate vertex id {vid}")
            names[vid] = name
            continue
        if section == "edges":
            parts = line.split()
            if len(parts) not in (2, 3):
                raise NetworkFormatError(f"line {lineno}: expected 2 or 3 columns, got {len(parts)}")
            try:
                a, b = int(parts[0]), int(parts[1])
                w = float(parts[2]) if len(parts) == 3 else 1.0
            except ValueError:
                raise NetworkFormatError(f"line {lineno}: malformed edge line") from None
            if not np.isfinite(w) or w <= 0.0:
                raise NetworkFormatError(f"line {lineno}: non-positive weight")
            if not 1 <= a <= n_total or not 1 <= b <= n_total:
                raise NetworkFormatError(f"line {lineno}: edge endpoint outside declared vertices")
            if b < split <= a:
                a, b = b, a
            if not (a < split <= b):
                raise NetworkFormatError(f"line {lineno}: edge does not connect the two sides")
            edges.append((a, b, w))
            continue
        raise NetworkFormatError(f"line {lineno}: content before any section header")
    if n_total == 0:
        raise NetworkFormatError("missing *Vertices section")
    if split == 0:
        raise NetworkFormatError("missing *Bipartite section")
    if not 2 <= split <= n_total:
        raise NetworkFormatError("side split leaves one side empty")
    if not edges:
        raise NetworkFormatError("empty edge list")
    n_left = split - 1
    u = np.array([e[0] - 1 for e in edges], dtype=np.int64)
    v = np.array([e[1] - 1 for e in edges], dtype=np.int64)
    w = np.array([e[2] for e in edges], dtype=np.float64)
    name_tuple = tuple(names.get(i, str(i)) for i in range(1, n_total + 1))
    return BipartiteNetwork.from_arrays(n_left, n_total - n_left, u, v, w, name_tuple)


def parse_network(text: str, fmt: str = "tsv") -> BipartiteNetwork:
    """Parse network text in one of the supported formats.

    Parameters
    ----------
    text : str
        Input document.
    fmt : {"tsv", "bipartite_pajek"}
        ``tsv`` lines read ``left right [weight]`` with ``#`` comments and
        a label never appearing in both columns; node order follows first
        appearance.  ``bipartite_pajek`` expects ``*Vertices N``, quoted
        vertex names, a ``*Bipartite K`` marker (ids ``1..K-1`` left,
        ``K..N`` right) and edge lines ``a b [weight]``.

    Raises
    ------
    NetworkFormatError
        On malformed lines (with line number), non-positive weights,
        out-of-range endpoints, or an empty edge list.
    """
    if fmt == "tsv":
        return _parse_tsv(text)
    if fmt == "bipartite_pajek":
        return _parse_bipartite_pajek(text)
    raise ValueError(f"unknown format {fmt!r}")


def format_network(net: BipartiteNetwork, fmt: str = "tsv") -> str:
    """Render a network back to text; inverse of :func:`parse_network`."""
    if fmt == "tsv":
        lines = [
            f"{net.names[u]}\t{net.names[v]}\t{float(w)!r}"
            for u, v, w in zip(net.edge_left, net.edge_right, net.weights)
        ]
        return "\n".join(lines) + "\n"
    if fmt == "bipartite_pajek":
        out = [f"*Vertices {net.n_nodes}"]
        out += [f'{i + 1} "{net.names[i]}"' for i in range(net.n_nodes)]
        out.append(f"*Bipartite {net.n_left + 1}")
        out += [
            f"{u + 1} {v + 1} {float(w)!r}"
            for u, v, w in zip(net.edge_left, net.edge_right, net.weights)
        ]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _component_labels(net: BipartiteNetwork) -> np.ndarray:
    """Union-find component label per node; zero-strength nodes keep themselves."""
    parent = np.arange(net.n_nodes, dtype=np.int64)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in zip(net.edge_left, net.edge_right):
        ru, rv = find(int(u)), find(int(v))
        if ru != rv:
            # union by smaller root keeps labels deterministic
            if rv < ru:
                ru, rv = rv, ru
            parent[rv] = ru
    return np.array([find(i) for i in range(net.n_nodes)], dtype=np.int64)


def is_connected(net: BipartiteNetwork) -> bool:
    """True when every node is reachable and has at least one edge."""
    labels = _component_labels(net)
    return bool(np.all(labels == labels[0])) and bool(np.all(net.strengths > 0))


def largest_connected_component(net: BipartiteNetwork) -> BipartiteNetwork:
    """Extract the largest connected component as a reindexed network.

    Zero-strength nodes are dropped.  Ties on component size resolve to
    the component containing the smallest global index.  Relative node
    order is preserved on both sides and the returned network records the
    original index of each surviving node in ``origin``.
    """
    labels = _component_labels(net)
    has_edge = net.strengths > 0
    roots, counts = np.unique(labels[has_edge], return_counts=True)
    # np.unique sorts roots ascending, so argmax picks the smallest root on ties
    winner = roots[np.argmax(counts)]
    keep = (labels == winner) & has_edge
    if np.all(keep):
        return net
    old_ids = np.flatnonzero(keep)
    new_ids = np.full(net.n_nodes, -1, dtype=np.int64)
    new_ids[old_ids] = np.arange(old_ids.size)
    n_left = int(np.sum(old_ids < net.n_left))
    mask = keep[net.edge_left]  # edge endpoints share a component
    names = tuple(net.names[i] for i in old_ids)
    return BipartiteNetwork.from_arrays(
        n_left,
        old_ids.size - n_left,
        new_ids[net.edge_left[mask]],
        new_ids[net.edge_right[mask]],
        net.weights[mask],
        names,
        origin=tuple(int(i) for i in old_ids),
    )
