"""Module assignments: flat two-level partitions and hierarchical trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = ["PartitionTree", "dense_assignment", "two_level_tree", "one_module_tree"]


def dense_assignment(labels: Sequence[int] | np.ndarray) -> np.ndarray:
    """Relabel arbitrary module labels to dense ints from 0, first appearance first."""
    out = np.empty(len(labels), dtype=np.int64)
    seen: dict[int, int] = {}
    for i, lab in enumerate(labels):
        out[i] = seen.setdefault(int(lab), len(seen))
    return out


@dataclass(frozen=True, eq=False)
class PartitionTree:
    """Rooted tree of modules over global node indices.

    Internal nodes hold ``children``; leaves hold a sorted array of member
    node indices in ``nodes``.  The root is always internal; a root with a
    single leaf child is the one-level partition.
    """

    children: tuple["PartitionTree", ...] = ()
    nodes: np.ndarray | None = None

    @classmethod
    def leaf(cls, nodes) -> "PartitionTree":
        arr = np.unique(np.asarray(nodes, dtype=np.int64))
        arr.setflags(write=False)
        return cls(children=(), nodes=arr)

    @classmethod
    def internal(cls, children: Sequence["PartitionTree"]) -> "PartitionTree":
        return cls(children=tuple(children), nodes=None)

    @classmethod
    def from_nested(cls, spec) -> "PartitionTree":
        """Build from nested lists, e.g. ``[[0, 2], [1]]`` or ``[[[0], [2]], [1]]``."""

        def build(item) -> "PartitionTree":
            if all(isinstance(x, (int, np.integer)) for x in item):
                return cls.leaf(item)
            return cls.internal([build(sub) for sub in item])

        return cls.internal([build(item) for item in spec])

    @property
    def is_leaf(self) -> bool:
        return self.nodes is not None

    def walk(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], "PartitionTree"]]:
        """Preorder traversal yielding (path, tree node); child indices are 1-based."""
        yield path, self
        for i, child in enumerate(self.children, start=1):
            yield from child.walk(path + (i,))

    def leaves(self) -> Iterator[tuple[tuple[int, ...], "PartitionTree"]]:
        for path, t in self.walk():
            if t.is_leaf:
                yield path, t

    @property
    def n_modules(self) -> int:
        return sum(1 for _ in self.leaves())

    @property
    def member_count(self) -> int:
        if self.is_leaf:
            return int(self.nodes.size)
        return sum(c.member_count for c in self.children)

    def min_node(self) -> int:
        if self.is_leaf:
            return int(self.nodes[0])
        return min(c.min_node() for c in self.children)

    @property
    def depth(self) -> int:
        """Number of module levels: 1 for one-level, 2 for flat partitions."""
        if len(self.children) == 1 and self.children[0].is_leaf:
            return 1
        return max(len(path) for path, _ in self.leaves()) + 1

    def canonical(self) -> "PartitionTree":
        """Order children by smallest contained node index, recursively."""
        if self.is_leaf:
            return self
        kids = sorted((c.canonical() for c in self.children), key=lambda c: c.min_node())
        return PartitionTree.internal(kids)

    def flat_assignment(self, n_nodes: int) -> np.ndarray:
        """Node index to leaf ordinal (leaves numbered in preorder)."""
        out = np.full(n_nodes, -1, dtype=np.int64)
        for ordinal, (_, leaf) in enumerate(self.leaves()):
            out[leaf.nodes] = ordinal
        return out

    def validate(self, n_nodes: int) -> None:
        """Check the tree is a proper partition of ``0..n_nodes-1``.

        Raises ValueError on empty tree nodes, repeated or out-of-range
        members, or an internal node with a single child anywhere except
        a one-level root.
        """
        seen = np.zeros(n_nodes, dtype=bool)
        if self.is_leaf:
            raise ValueError("root must be an internal node")
        for path, t in self.walk():
            if t.is_leaf:
                if t.nodes.size == 0:
                    raise ValueError(f"empty leaf module at {path}")
                if t.nodes[0] < 0 or t.nodes[-1] >= n_nodes:
                    raise ValueError(f"node index out of range at {path}")
                if np.any(seen[t.nodes]):
                    raise ValueError(f"node assigned twice at {path}")
                seen[t.nodes] = True
            else:
                if len(t.children) == 0:
                    raise ValueError(f"internal node without children at {path}")
                one_level_root = path == () and len(t.children) == 1 and t.children[0].is_leaf
                if len(t.children) == 1 and not one_level_root:
                    raise ValueError(f"internal node with a single child at {path}")
        if not np.all(seen):
            raise ValueError("some nodes are not covered by any module")


def two_level_tree(assignment: Sequence[int] | np.ndarray) -> PartitionTree:
    """Flat assignment to a two-level tree, modules ordered by smallest member."""
    a = np.asarray(assignment, dtype=np.int64)
    if a.size == 0:
        raise ValueError("empty assignment")
    modules: dict[int, list[int]] = {}
    for node, m in enumerate(a):
        modules.setdefault(int(m), []).append(node)
    leaves = sorted((PartitionTree.leaf(v) for v in modules.values()), key=lambda t: t.min_node())
    return PartitionTree.internal(leaves)


def one_module_tree(n_nodes: int) -> PartitionTree:
    """The one-level partition: every node in a single module."""
    return PartitionTree.internal([PartitionTree.leaf(np.arange(n_nodes))])
