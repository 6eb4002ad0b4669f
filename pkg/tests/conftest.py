"""Shared corpora: small connected weighted networks with random partitions."""

import numpy as np
import pytest

from bimapeq import synth
from bimapeq.partition import dense_assignment


def random_net(rng, max_nodes=40, weights="uniform"):
    nl = int(rng.integers(2, max_nodes // 2 + 1))
    nr = int(rng.integers(2, max_nodes - nl + 1))
    ne = int(rng.integers(nl + nr - 1, nl * nr + 1))
    return synth.random_bipartite(nl, nr, ne, seed=int(rng.integers(2**31)), weights=weights)


def random_partition(rng, n):
    """Dense labels with 1..n modules; k=1 and k=n appear regularly."""
    roll = rng.random()
    if roll < 0.1:
        k = 1
    elif roll < 0.2:
        k = n
    else:
        k = int(rng.integers(2, n + 1))
    labels = rng.integers(0, k, size=n)
    labels[rng.permutation(n)[:k]] = np.arange(k)
    return dense_assignment(labels)


@pytest.fixture(scope="session")
def corpus():
    """200 (network, assignment) pairs, at most 40 nodes, random weights."""
    rng = np.random.default_rng(20240613)
    out = []
    for _ in range(200):
        net = random_net(rng)
        out.append((net, random_partition(rng, net.n_nodes)))
    return out


@pytest.fixture(scope="session")
def small_corpus():
    """Quick 25-network slice for the more expensive property loops."""
    rng = np.random.default_rng(915)
    out = []
    for _ in range(25):
        net = random_net(rng, max_nodes=20)
        out.append((net, random_partition(rng, net.n_nodes)))
    return out
