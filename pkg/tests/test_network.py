import numpy as np
import pytest

from bimapeq.network import (
    BipartiteNetwork,
    NetworkFormatError,
    format_network,
    is_connected,
    largest_connected_component,
    parse_network,
)


def test_from_arrays_basic():
    net = BipartiteNetwork.from_arrays(2, 2, [0, 1], [2, 3], [1.0, 2.0])
    assert net.n_nodes == 4
    assert net.n_edges == 2
    assert net.total_weight == 3.0
    assert list(net.strengths) == [1.0, 2.0, 1.0, 2.0]
    assert net.side(0) == "L" and net.side(3) == "R"
    assert net.names == ("L0", "L1", "R0", "R1")


def test_parallel_edges_merge_by_weight():
    net = BipartiteNetwork.from_arrays(1, 1, [0, 0, 0], [1, 1, 1], [1.0, 0.5, 0.25])
    assert net.n_edges == 1
    assert net.weights[0] == 1.75


def test_from_arrays_rejects_bad_input():
    with pytest.raises(NetworkFormatError):
        BipartiteNetwork.from_arrays(0, 2, [0], [1], [1.0])
    with pytest.raises(NetworkFormatError):
        BipartiteNetwork.from_arrays(2, 2, [0], [1], [1.0])  # right endpoint on left side
    with pytest.raises(NetworkFormatError):
        BipartiteNetwork.from_arrays(2, 2, [0], [2], [-1.0])
    with pytest.raises(NetworkFormatError):
        BipartiteNetwork.from_arrays(2, 2, [], [], [])


def test_arrays_frozen():
    net = BipartiteNetwork.from_arrays(1, 1, [0], [1], [1.0])
    with pytest.raises(ValueError):
        net.weights[0] = 5.0


def test_tsv_parse_basic():
    net = parse_network("ant1\tplant1\t2.0\nant2\tplant1\n# comment\nant1\tplant2 0.5\n")
    assert net.n_left == 2 and net.n_right == 2
    assert net.names == ("ant1", "ant2", "plant1", "plant2")
    assert net.total_weight == 3.5


def test_tsv_label_cannot_switch_sides():
    with pytest.raises(NetworkFormatError, match="already used"):
        parse_network("a\tb\nb\tc\n")


def test_tsv_rejects_bad_weight_with_line_number():
    with pytest.raises(NetworkFormatError, match="line 2"):
        parse_network("a\tx\t1\na\ty\tzzz\n")


def test_pajek_round_trip():
    net = parse_network("u\tx\t1.5\nv\tx\nv\ty\t2\n")
    text = format_network(net, "bipartite_pajek")
    back = parse_network(text, "bipartite_pajek")
    assert back.n_left == net.n_left
    assert back.names == net.names
    assert np.array_equal(back.edge_left, net.edge_left)
    assert np.allclose(back.weights, net.weights)


def test_tsv_round_trip():
    net = parse_network("u\tx\t1.5\nv\tx\nv\ty\t2\n")
    back = parse_network(format_network(net, "tsv"))
    assert back.names == net.names
    assert np.allclose(back.weights, net.weights)


def test_pajek_rejects_cross_side_edge():
    text = "*Vertices 4\n1 \"a\"\n2 \"b\"\n3 \"x\"\n4 \"y\"\n*Bipartite 3\n1 2 1.0\n"
    with pytest.raises(NetworkFormatError, match="sides"):
        parse_network(text, "bipartite_pajek")


def test_pajek_missing_sections():
    with pytest.raises(NetworkFormatError):
        parse_network("*Vertices 2\n1 \"a\"\n2 \"b\"\n", "bipartite_pajek")


def test_connectivity_and_lcc():
    # two components: a path of 3 and a single edge
    net = parse_network("a\tx\nb\tx\nc\ty\n")
    assert not is_connected(net)
    lcc = largest_connected_component(net)
    assert lcc.n_nodes == 3
    assert lcc.names == ("a", "b", "x")
    assert lcc.origin == (0, 1, 3)
    assert is_connected(lcc)


def test_lcc_identity_on_connected_input():
    net = parse_network("a\tx\nb\tx\n")
    assert largest_connected_component(net) is net


def test_lcc_tie_takes_smallest_index_component():
    net = parse_network("a\tx\nb\ty\n")
    lcc = largest_connected_component(net)
    assert lcc.names == ("a", "x")
