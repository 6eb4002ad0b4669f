import numpy as np
import pytest

from bimapeq.flow import mixed_rate, visit_rates, flow_summary
from bimapeq.network import BipartiteNetwork
from bimapeq.partition import one_module_tree, two_level_tree


def _k22():
    return BipartiteNetwork.from_arrays(2, 2, [0, 0, 1, 1], [2, 3, 2, 3], [1.0] * 4)


def test_visit_rates_sum_per_side():
    net = BipartiteNetwork.from_arrays(2, 3, [0, 0, 1, 1], [2, 3, 3, 4], [1.0, 2.0, 3.0, 0.5])
    vr = visit_rates(net)
    left = vr.side_rate[: net.n_left].sum()
    right = vr.side_rate[net.n_left :].sum()
    assert left == pytest.approx(1.0, abs=1e-14)
    assert right == pytest.approx(1.0, abs=1e-14)
    assert vr.two_step.sum() == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(vr.two_step, vr.side_rate / 2.0)


def test_visit_rates_proportional_to_strength():
    net = BipartiteNetwork.from_arrays(2, 2, [0, 0, 1], [2, 3, 2], [3.0, 1.0, 4.0])
    vr = visit_rates(net)
    assert vr.side_rate[0] == pytest.approx(0.5)  # strength 4 of 8
    assert vr.side_rate[2] == pytest.approx(7 / 8)


def test_mixed_rate_splits_by_observed_type():
    left = mixed_rate("L", 0.4, 0.1)
    assert left.left == pytest.approx(0.36)
    assert left.right == pytest.approx(0.04)
    right = mixed_rate("R", 0.4, 0.1)
    assert right == (left.right, left.left)
    with pytest.raises(ValueError):
        mixed_rate("X", 0.1, 0.1)


def test_mixed_rate_alpha_half_balances():
    pair = mixed_rate("L", 0.6, 0.5)
    assert pair.left == pair.right == pytest.approx(0.3)


def test_flow_summary_root_has_no_exit():
    net = _k22()
    fs = flow_summary(net, two_level_tree([0, 1, 0, 1]), 0.3)
    root = fs.book_at(())
    assert root.exit is None
    assert len(root.child_entries) == 2


def test_flow_summary_balance_at_every_alpha():
    # each codebook's usage pair is balanced across observed types
    net = _k22()
    tree = two_level_tree([0, 1, 0, 1])
    for alpha in (0.0, 0.2, 0.5, 0.8):
        fs = flow_summary(net, tree, alpha)
        for book in fs.books:
            u = book.usage
            assert u.left == pytest.approx(u.right, abs=1e-14), (alpha, book.path)


def test_flow_summary_entry_exit_swap():
    # a module's exit pair is its entry pair with components swapped
    net = _k22()
    fs = flow_summary(net, two_level_tree([0, 1, 0, 1]), 0.2)
    root = fs.book_at(())
    for i, mod_path in enumerate(((1,), (2,))):
        book = fs.book_at(mod_path)
        entry = root.child_entries[i]
        assert book.exit.left == pytest.approx(entry.right, abs=1e-14)
        assert book.exit.right == pytest.approx(entry.left, abs=1e-14)


def test_flow_summary_one_module_has_no_boundary():
    net = _k22()
    fs = flow_summary(net, one_module_tree(4), 0.25)
    (root, leaf) = fs.books if fs.books[0].path == () else fs.books[::-1]
    assert leaf.exit is None
    assert len(leaf.node_entries) == 4


def test_flow_conservation_total_usage():
    # total node-word usage is 1 per observed type at any alpha
    net = BipartiteNetwork.from_arrays(3, 2, [0, 1, 2, 0], [3, 3, 4, 4], [1.0, 2.0, 1.5, 1.0])
    for alpha in (0.0, 0.35, 0.5):
        fs = flow_summary(net, two_level_tree([0, 1, 0, 1, 0]), alpha)
        tot = np.zeros(2)
        for book in fs.books:
            for _, pair in book.node_entries:
                tot += pair
        assert tot[0] == pytest.approx(1.0, abs=1e-12)
        assert tot[1] == pytest.approx(1.0, abs=1e-12)


def test_flow_summary_rejects_bad_alpha():
    with pytest.raises(ValueError):
        flow_summary(_k22(), one_module_tree(4), 1.5)
