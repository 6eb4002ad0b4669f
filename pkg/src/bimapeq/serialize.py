"""Text formats: per-node tree listings, sweep tables, run summaries.

The tree format is one line per node, ``path flow "name" id side``,
where ``path`` is colon-separated 1-based module indices down the tree
and the last component ranks the node inside its module by ascending
global id.  ``flow`` is the two-step visit rate, so downstream tools
built for one-type networks read it as an ordinary visit rate.  Header
comment lines carry run metadata (alpha, info, bits, seed, mode).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .partition import PartitionTree
from .sweep import SweepRecord

__all__ = [
    "TreeRecord",
    "ParsedTree",
    "write_tree",
    "parse_tree",
    "write_sweep_csv",
    "run_summary_json",
]

_HEADER_ORDER = ("alpha", "info", "bits", "seed", "mode")


class TreeRecord(NamedTuple):
    """One node line: tree path, two-step flow, label, global id, side."""

    path: tuple[int, ...]
    flow: float
    name: str
    node: int
    side: str


@dataclass(frozen=True)
class ParsedTree:
    """Parsed tree file: metadata, per-node records, rebuilt tree."""

    meta: dict[str, str]
    records: tuple[TreeRecord, ...]
    tree: PartitionTree

    @property
    def n_nodes(self) -> int:
        return len(self.records)

    def flows(self) -> np.ndarray:
        out = np.zeros(self.n_nodes)
        for r in self.records:
            out[r.node] = r.flow
        return out

    def names(self) -> tuple[str, ...]:
        out = [""] * self.n_nodes
        for r in self.records:
            out[r.node] = r.name
        return tuple(out)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def tree_records(
    tree: PartitionTree,
    rates: Sequence[float] | np.ndarray,
    names: Sequence[str],
    sides: Sequence[str],
) -> list[TreeRecord]:
    """Per-node records in path order; rank inside a module by node id.

    ``rates`` are two-step visit rates (they sum to one over all nodes).
    The tree is canonicalized first so output order is reproducible.
    """
    rates = np.asarray(rates, dtype=float)
    out: list[TreeRecord] = []
    for path, leaf in tree.canonical().leaves():
        members = np.sort(leaf.nodes)
        for rank, node in enumerate(members, start=1):
            node = int(node)
            out.append(
                TreeRecord(path + (rank,), float(rates[node]), names[node], node, sides[node])
            )
    return out


def write_tree(
    tree: PartitionTree,
    rates: Sequence[float] | np.ndarray,
    names: Sequence[str],
    sides: Sequence[str],
    header: dict | None = None,
) -> str:
    """Render a partition tree to text; see module docstring for the format."""
    lines = []
    if header:
        for key in _HEADER_ORDER:
            if key in header:
                lines.append(f"# {key}: {header[key]}")
        for key in sorted(header):
            if key not in _HEADER_ORDER:
                lines.append(f"# {key}: {header[key]}")
    for rec in tree_records(tree, rates, names, sides):
        path = ":".join(str(p) for p in rec.path)
        lines.append(f"{path} {rec.flow!r} {_quote(rec.name)} {rec.node} {rec.side}")
    return "\n".join(lines) + "\n"


_LINE = re.compile(
    r'^(?P<path>\d+(?::\d+)*)\s+(?P<flow>\S+)\s+"(?P<name>(?:[^"\\]|\\.)*)"\s+(?P<node>\d+)\s+(?P<side>[LR])\s*$'
)


def parse_tree(text: str) -> ParsedTree:
    """Inverse of :func:`write_tree`; flows must sum to one within 1e-9."""
    meta: dict[str, str] = {}
    records: list[TreeRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            if value:
                meta[key.strip()] = value.strip()
            continue
        m = _LINE.match(line)
        if m is None:
            raise ValueError(f"line {lineno}: not a tree record: {raw!r}")
        path = tuple(int(p) for p in m.group("path").split(":"))
        name = m.group("name").replace('\\"', '"').replace("\\\\", "\\")
        records.append(
            TreeRecord(path, float(m.group("flow")), name, int(m.group("node")), m.group("side"))
        )
    if not records:
        raise ValueError("no node records found")
    seen_paths = {r.path for r in records}
    if len(seen_paths) != len(records):
        raise ValueError("duplicate tree paths")
    nodes = sorted(r.node for r in records)
    if nodes != list(range(len(records))):
        raise ValueError("node ids must cover 0..n-1 exactly once")
    total = sum(r.flow for r in records)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"flows sum to {total!r}, expected 1")
    return ParsedTree(meta=meta, records=tuple(records), tree=_rebuild(records))


def _rebuild(records: list[TreeRecord]) -> PartitionTree:
    def build(recs: list[tuple[tuple[int, ...], int]]) -> PartitionTree:
        if all(len(p) == 1 for p, _ in recs):
            return PartitionTree.leaf(np.array(sorted(n for _, n in recs), dtype=np.int64))
        groups: dict[int, list[tuple[tuple[int, ...], int]]] = {}
        for p, n in recs:
            groups.setdefault(p[0], []).append((p[1:], n))
        for idx, g in groups.items():
            if len(g) != len({p for p, _ in g}) or any(len(p) == 0 for p, _ in g):
                raise ValueError(f"inconsistent paths under module {idx}")
        return PartitionTree.internal([build(groups[i]) for i in sorted(groups)])

    top: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    for r in records:
        top.setdefault(r.path[0], []).append((r.path[1:], r.node))
    children = [build(top[i]) for i in sorted(top)]
    return PartitionTree.internal(children)


_CSV_COLUMNS = (
    "info", "alpha", "bits_2l", "bits_h", "extra_2l", "extra_h",
    "effsize_2l", "effsize_h", "depth", "trials",
)


def write_sweep_csv(records: Sequence[SweepRecord]) -> str:
    """Sweep table as CSV, floats at six significant digits."""
    if not records:
        raise ValueError("no sweep records to write")
    lines = [",".join(_CSV_COLUMNS)]
    for r in records:
        vals = (
            f"{r.info:.6g}", f"{r.alpha:.6g}",
            f"{r.bits_two_level:.6g}", f"{r.bits_hierarchical:.6g}",
            f"{r.extra_two_level:.6g}", f"{r.extra_hierarchical:.6g}",
            f"{r.effective_size_two_level:.6g}", f"{r.effective_size_hierarchical:.6g}",
            str(r.depth), str(r.trials),
        )
        lines.append(",".join(vals))
    return "\n".join(lines) + "\n"


def run_summary_json(summary: dict) -> str:
    """Run summary as stable JSON (sorted keys, two-space indent)."""
    return json.dumps(summary, sort_keys=True, indent=2, allow_nan=False) + "\n"
