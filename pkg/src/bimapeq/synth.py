"""Synthetic bipartite networks for testing, benchmarks and demos."""

from __future__ import annotations

import numpy as np

from .network import BipartiteNetwork

__all__ = ["random_bipartite", "planted_blocks", "nested_blocks"]


def _spanning_edges(n_left: int, n_right: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Random bipartite spanning tree over global node indices."""
    order = list(rng.permutation(n_left + n_right))
    first_left = next(i for i, n in enumerate(order) if n < n_left)
    first_right = next(i for i, n in enumerate(order) if n >= n_left)
    a, b = min(first_left, first_right), max(first_left, first_right)
    order[0], order[a] = order[a], order[0]
    order[1], order[b] = order[b], order[1]
    placed_left, placed_right = [], []
    edges = []
    for node in order:
        left = node < n_left
        pool = placed_right if left else placed_left
        if pool:
            partner = pool[int(rng.integers(0, len(pool)))]
            edges.append((node, partner) if left else (partner, node))
        (placed_left if left else placed_right).append(node)
    return edges


def random_bipartite(
    n_left: int,
    n_right: int,
    n_edges: int,
    seed,
    weights: str = "unit",
) -> BipartiteNetwork:
    """Connected random bipartite network with exactly ``n_edges`` edges.

    A random spanning tree guarantees connectivity; remaining edges are
    sampled uniformly without replacement.  ``weights`` is ``"unit"`` or
    ``"uniform"`` (drawn from [0.5, 2.5)).
    """
    n = n_left + n_right
    if n_edges < n - 1:
        raise ValueError("need at least n_left + n_right - 1 edges for connectivity")
    if n_edges > n_left * n_right:
        raise ValueError("more edges than bipartite pairs")
    rng = np.random.default_rng(seed)
    tree = _spanning_edges(n_left, n_right, rng)
    keys = {u * n + v for u, v in tree}
    while len(keys) < n_edges:
        need = n_edges - len(keys)
        u = rng.integers(0, n_left, size=2 * need + 8)
        v = rng.integers(n_left, n, size=2 * need + 8)
        for k in u * n + v:
            keys.add(int(k))
            if len(keys) == n_edges:
                break
    tree_keys = [u * n + v for u, v in tree]
    extra = sorted(keys.difference(tree_keys))
    all_keys = np.array(tree_keys + extra, dtype=np.int64)
    eu, ev = all_keys // n, all_keys % n
    if weights == "unit":
        w = np.ones(n_edges)
    elif weights == "uniform":
        w = rng.uniform(0.5, 2.5, size=n_edges)
    else:
        raise ValueError(f"unknown weights mode {weights!r}")
    return BipartiteNetwork.from_arrays(n_left, n_right, eu, ev, w)


def planted_blocks(
    n_blocks: int,
    left_per_block: int,
    right_per_block: int,
    seed,
    intra_fill: float = 0.9,
    bridge_weight: float = 0.1,
    weights: str = "unit",
) -> tuple[BipartiteNetwork, np.ndarray]:
    """Blocks of dense bipartite structure joined by weak bridges.

    Block ``b`` owns left nodes ``b * left_per_block + i`` and right
    nodes analogously; consecutive blocks share one bridge edge of
    weight ``bridge_weight``.  Returns the network and the planted
    flat assignment over global node indices.
    """
    if n_blocks < 1:
        raise ValueError("need at least one block")
    rng = np.random.default_rng(seed)
    n_left = n_blocks * left_per_block
    eu, ev, ew = [], [], []
    for b in range(n_blocks):
        l0, r0 = b * left_per_block, n_left + b * right_per_block
        sub = random_bipartite(
            left_per_block,
            right_per_block,
            max(
                left_per_block + right_per_block - 1,
                int(round(intra_fill * left_per_block * right_per_block)),
            ),
            rng,
            weights=weights,
        )
        eu.extend(sub.edge_left + l0)
        ev.extend(sub.edge_right - sub.n_left + r0)
        ew.extend(sub.weights)
    for b in range(n_blocks - 1):
        # one weak bridge from block b's lefts to block b+1's rights
        eu.append(b * left_per_block + int(rng.integers(0, left_per_block)))
        ev.append(n_left + (b + 1) * right_per_block + int(rng.integers(0, right_per_block)))
        ew.append(bridge_weight)
    net = BipartiteNetwork.from_arrays(
        n_left, n_blocks * right_per_block, np.array(eu), np.array(ev), np.array(ew)
    )
    assignment = np.concatenate(
        [
            np.repeat(np.arange(n_blocks), left_per_block),
            np.repeat(np.arange(n_blocks), right_per_block),
        ]
    )
    return net, assignment


def nested_blocks(
    seed,
    left_per_block: int = 6,
    right_per_block: int = 6,
    tight_bridge: float = 0.6,
    loose_bridge: float = 0.05,
) -> tuple[BipartiteNetwork, np.ndarray]:
    """Four blocks glued pairwise: strong bridges inside each pair, one weak across.

    The best flat partition is the four blocks; allowing a third level
    groups the pairs, so a hierarchical search should report depth 3.
    Returns the network and the planted four-block assignment.
    """
    rng = np.random.default_rng(seed)
    net, assignment = planted_blocks(
        4, left_per_block, right_per_block, rng, intra_fill=0.9, bridge_weight=loose_bridge
    )
    eu = list(net.edge_left)
    ev = list(net.edge_right)
    ew = list(net.weights)
    n_left = net.n_left
    for pair in (0, 2):
        # several strong bridges between the two blocks of the pair
        for _ in range(3):
            eu.append(pair * left_per_block + int(rng.integers(0, left_per_block)))
            ev.append(n_left + (pair + 1) * right_per_block + int(rng.integers(0, right_per_block)))
            ew.append(tight_bridge)
    net = BipartiteNetwork.from_arrays(n_left, net.n_right, np.array(eu), np.array(ev), np.array(ew))
    return net, assignment
