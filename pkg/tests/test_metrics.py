import numpy as np
import pytest

from bimapeq.codelength import codelength, one_level_codelength
from bimapeq.metrics import compute_metrics, effective_module_size, extra_compression
from bimapeq.network import BipartiteNetwork
from bimapeq.partition import PartitionTree, one_module_tree, two_level_tree


def _k22():
    return BipartiteNetwork.from_arrays(2, 2, [0, 0, 1, 1], [2, 3, 2, 3], [1.0] * 4)


def test_effective_size_equal_modules():
    tree = two_level_tree([0, 0, 1, 1, 2, 2])
    assert effective_module_size(tree) == pytest.approx(2.0, abs=1e-12)


def test_effective_size_single_module_is_n():
    assert effective_module_size(one_module_tree(7)) == pytest.approx(7.0, abs=1e-12)


def test_effective_size_skew_between_equal_split_and_whole():
    # two modules sized 9 and 1: fewer effective modules than an even
    # split, so the typical module looks bigger than 5 but smaller than 10
    skew = effective_module_size(two_level_tree([0] * 9 + [1]))
    assert 5.0 < skew < 10.0


def test_effective_size_counts_leaves_across_levels():
    deep = PartitionTree.from_nested([[[0], [1]], [2, 3]])
    flat = two_level_tree([0, 1, 2, 2])
    assert effective_module_size(deep) == pytest.approx(effective_module_size(flat), abs=1e-12)


def test_effective_size_node_count_guard():
    with pytest.raises(ValueError):
        effective_module_size(two_level_tree([0, 1]), n_nodes=5)


def test_extra_compression_sign():
    net = _k22()
    # splitting K22 only costs bits at alpha = 1/2
    assert extra_compression(net, two_level_tree([0, 1, 0, 1]), 0.5) < 0.0
    assert extra_compression(net, one_module_tree(4), 0.5) == pytest.approx(0.0, abs=1e-13)


def test_compute_metrics_consistent():
    net = _k22()
    tree = two_level_tree([0, 1, 0, 1])
    met = compute_metrics(net, tree, 0.25)
    assert met.bits == pytest.approx(codelength(net, tree, 0.25).bits, abs=1e-13)
    assert met.one_level_bits == pytest.approx(one_level_codelength(net, 0.25), abs=1e-13)
    assert met.extra_compression == pytest.approx(met.one_level_bits - met.bits, abs=1e-13)
    assert met.n_modules == 2
    assert met.depth == 2
