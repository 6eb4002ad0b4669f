"""Summary measures of partitions: compression gain and module size perplexity."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codelength import codelength, one_level_codelength
from .network import BipartiteNetwork
from .partition import PartitionTree

__all__ = ["effective_module_size", "extra_compression", "PartitionMetrics", "compute_metrics"]


def effective_module_size(tree: PartitionTree, n_nodes: int | None = None) -> float:
    """Perplexity of the node distribution over leaf modules, times N.

    ``N / 2**H(S)`` where ``S`` puts probability ``size / N`` on each
    leaf module; equals the common module size for equal modules and
    drops toward small values when one module dominates.
    """
    sizes = [leaf.nodes.size for _, leaf in tree.leaves()]
    total = sum(sizes)
    if n_nodes is not None and total != n_nodes:
        raise ValueError("tree does not cover n_nodes nodes")
    ent = -sum((s / total) * math.log2(s / total) for s in sizes)
    return total / 2.0**ent


def extra_compression(net: BipartiteNetwork, tree: PartitionTree, alpha: float) -> float:
    """Bits saved relative to the one-module partition; negative when it costs."""
    return one_level_codelength(net, alpha) - codelength(net, tree, alpha).bits


@dataclass(frozen=True)
class PartitionMetrics:
    """Reporting bundle for one evaluated partition."""

    bits: float
    one_level_bits: float
    extra_compression: float
    effective_module_size: float
    n_modules: int
    depth: int


def compute_metrics(net: BipartiteNetwork, tree: PartitionTree, alpha: float) -> PartitionMetrics:
    bits = codelength(net, tree, alpha).bits
    one = one_level_codelength(net, alpha)
    return PartitionMetrics(
        bits=bits,
        one_level_bits=one,
        extra_compression=one - bits,
        effective_module_size=effective_module_size(tree, net.n_nodes),
        n_modules=tree.n_modules,
        depth=tree.depth,
    )
