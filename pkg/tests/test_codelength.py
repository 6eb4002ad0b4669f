import numpy as np
import pytest

from bimapeq.codelength import (
    TwoLevelState,
    codebook_bits,
    codelength,
    one_level_codelength,
)
from bimapeq.flow import RatePair
from bimapeq.network import BipartiteNetwork
from bimapeq.partition import PartitionTree, dense_assignment, one_module_tree, two_level_tree
from bimapeq.typeinfo import type_entropy

from conftest import random_net, random_partition
from refimpl import flat_code_bits_net


def _k22():
    return BipartiteNetwork.from_arrays(2, 2, [0, 0, 1, 1], [2, 3, 2, 3], [1.0] * 4)


def test_codebook_bits_uniform_pairs():
    # four equal balanced words: 2 bits per observed type, usage 1 per type
    entries = [RatePair(0.125, 0.125)] * 4
    assert codebook_bits(entries) == pytest.approx(2.0 * 0.25 * 4, abs=1e-14)


def test_codebook_bits_empty_and_zero_words():
    assert codebook_bits([]) == 0.0
    assert codebook_bits([RatePair(0.5, 0.0), RatePair(0.0, 0.0)]) == 0.0


def test_frozen_values_k22():
    net = _k22()
    sing = two_level_tree([0, 1, 2, 3])
    pair = two_level_tree([0, 1, 0, 1])
    assert codelength(net, sing, 0.5).bits == pytest.approx(4.0, abs=1e-12)
    assert one_level_codelength(net, 0.5) == pytest.approx(2.0, abs=1e-12)
    assert one_level_codelength(net, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert codelength(net, pair, 0.5).bits == pytest.approx(2.877443751081734, abs=1e-12)
    assert codelength(net, pair, 0.25).bits == pytest.approx(2.6887218755408675, abs=1e-12)
    assert codelength(net, pair, 0.0).bits == pytest.approx(1.8774437510817341, abs=1e-12)


def test_frozen_values_two_blocks_bridge():
    u = [0, 0, 1, 1, 2, 2, 3, 3, 1]
    v = [4, 5, 4, 5, 6, 7, 6, 7, 6]
    net = BipartiteNetwork.from_arrays(4, 4, u, v, [1.0] * 9)
    blocks = two_level_tree([0, 0, 1, 1, 0, 0, 1, 1])
    assert codelength(net, blocks, 0.0).bits == pytest.approx(1.3849326051900173, abs=1e-12)
    assert codelength(net, blocks, 0.25).bits == pytest.approx(2.3764947573067348, abs=1e-12)
    assert codelength(net, blocks, 0.5).bits == pytest.approx(2.607154827412239, abs=1e-12)
    assert one_level_codelength(net, 0.0) == pytest.approx(1.9749375012019268, abs=1e-12)


def test_matches_reference_at_alpha_half():
    rng = np.random.default_rng(88)
    for _ in range(40):
        net = random_net(rng, max_nodes=24)
        a = random_partition(rng, net.n_nodes)
        mine = codelength(net, two_level_tree(a), 0.5).bits
        ref = flat_code_bits_net(net, a)
        assert mine == pytest.approx(ref, abs=1e-12)


def test_alpha_symmetry():
    rng = np.random.default_rng(19)
    for _ in range(25):
        net = random_net(rng, max_nodes=20)
        tree = two_level_tree(random_partition(rng, net.n_nodes))
        for alpha in (0.0, 0.1, 0.3):
            a = codelength(net, tree, alpha).bits
            b = codelength(net, tree, 1.0 - alpha).bits
            assert a == pytest.approx(b, abs=1e-12)


def test_one_level_identity_shifts_by_type_information():
    rng = np.random.default_rng(77)
    for _ in range(20):
        net = random_net(rng, max_nodes=20)
        base = one_level_codelength(net, 0.5)
        for alpha in rng.random(20) * 0.5:
            got = one_level_codelength(net, float(alpha))
            want = base - (1.0 - type_entropy(float(alpha)))
            assert got == pytest.approx(want, abs=1e-12)


def test_one_level_matches_one_module_tree():
    rng = np.random.default_rng(5)
    for _ in range(10):
        net = random_net(rng, max_nodes=16)
        for alpha in (0.0, 0.25, 0.5):
            direct = one_level_codelength(net, alpha)
            tree = codelength(net, one_module_tree(net.n_nodes), alpha).bits
            assert direct == pytest.approx(tree, abs=1e-13)


def test_same_type_grouping_is_bit_neutral():
    # grouping nodes of one type never changes the bits, at any alpha:
    # a type-pure module's codebook term is linear in its usage and its
    # boundary pair aggregates additively
    rng = np.random.default_rng(303)
    for _ in range(25):
        net = random_net(rng, max_nodes=18)
        n = net.n_nodes
        singles = codelength(net, two_level_tree(np.arange(n)), 0.0).bits
        for alpha in (0.0, 0.15, 0.4):
            labels = np.arange(n)
            # collapse a random same-side pair repeatedly
            for _ in range(4):
                side = rng.integers(0, 2)
                pool = np.arange(net.n_left) if side == 0 else np.arange(net.n_left, n)
                a, b = rng.choice(pool, size=2, replace=False)
                labels[labels == labels[max(a, b)]] = labels[min(a, b)]
            grouped = codelength(net, two_level_tree(dense_assignment(labels)), alpha).bits
            singles_a = codelength(net, two_level_tree(np.arange(n)), alpha).bits
            assert grouped == pytest.approx(singles_a, abs=1e-11), alpha
        # corollary: the all-singletons partition ties one level at alpha 0
        assert singles == pytest.approx(one_level_codelength(net, 0.0), abs=1e-11)


def test_identity_with_module_usages_on_pure_boundaries():
    # with every module boundary type-pure (singleton partition), the
    # drop from alpha = 1/2 is the type information times q + sum p_m
    rng = np.random.default_rng(42)
    for _ in range(15):
        net = random_net(rng, max_nodes=16)
        n = net.n_nodes
        tree = two_level_tree(np.arange(n))
        p = net.strengths / (2.0 * net.total_weight)
        q = float(p.sum())  # every step leaves a singleton
        pm_sum = 2.0 * q  # usage per module: exit q_m plus p_m = 2 p_m
        l_half = codelength(net, tree, 0.5).bits
        for alpha in (0.0, 0.1, 0.3):
            want = l_half - (1.0 - type_entropy(alpha)) * (q + pm_sum)
            got = codelength(net, tree, alpha).bits
            assert got == pytest.approx(want, abs=1e-11)


def test_hierarchical_books_sum():
    # per-book contributions add up to the reported total
    net = _k22()
    tree = PartitionTree.from_nested([[[0], [2]], [1, 3]])
    out = codelength(net, tree, 0.2)
    assert sum(b for _, b in out.per_book) == pytest.approx(out.bits, abs=1e-13)
    assert out.book_bits(()) >= 0.0
    with pytest.raises(KeyError):
        out.book_bits((9, 9))


def test_state_delta_matches_recompute():
    rng = np.random.default_rng(12)
    for _ in range(10):
        net = random_net(rng, max_nodes=16)
        n = net.n_nodes
        labels = random_partition(rng, n)
        for alpha in (0.0, 0.3, 0.5):
            state = TwoLevelState(net, labels, alpha)
            for _ in range(60):
                node = int(rng.integers(n))
                target = int(rng.integers(state.assignment.max() + 2))
                if target > state.assignment.max():
                    if np.all(state.mod_count > 0):
                        target = int(rng.integers(state.assignment.max() + 1))
                    else:
                        target = state.fresh_module()
                before = state.bits
                delta = state.delta_move(node, target)
                state.apply_move(node, target)
                after = state.bits
                assert after - before == pytest.approx(delta, abs=1e-9)
            full = codelength(net, two_level_tree(dense_assignment(state.assignment)), alpha).bits
            assert state.bits == pytest.approx(full, abs=1e-9)


def test_state_rejects_bad_ids():
    net = _k22()
    state = TwoLevelState(net, [0, 0, 1, 1], 0.5)
    with pytest.raises(ValueError):
        state.delta_move(9, 0)
    with pytest.raises(ValueError):
        state.delta_move(0, 99)


def test_alpha_bounds_checked():
    net = _k22()
    with pytest.raises(ValueError):
        codelength(net, one_module_tree(4), -0.1)
    with pytest.raises(ValueError):
        one_level_codelength(net, 2.0)
