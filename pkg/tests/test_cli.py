import json

import pytest

from bimapeq.cli import main
from bimapeq.network import format_network
from bimapeq.synth import planted_blocks

K22_TSV = "u1 v1\nu1 v2\nu2 v1\nu2 v2\n"


def _write_net(tmp_path, name="net.tsv", seed=11):
    net, _ = planted_blocks(2, 3, 2, seed=seed, weights="uniform")
    path = tmp_path / name
    path.write_text(format_network(net), encoding="utf-8")
    return path, net


def test_partition_writes_outputs_and_repeats_byte_identical(tmp_path, capsys):
    src, _ = _write_net(tmp_path)
    argv = ["partition", "--trials", "4", "--seed", "3", "--no-timestamp", str(src)]
    assert main(argv + ["--out-dir", str(tmp_path / "a")]) == 0
    out = capsys.readouterr().out
    assert "bits:" in out and "extra compression:" in out and "effective module size:" in out
    assert main(argv + ["--out-dir", str(tmp_path / "b")]) == 0
    for fname in ("net.tree", "net.json"):
        a = (tmp_path / "a" / fname).read_bytes()
        b = (tmp_path / "b" / fname).read_bytes()
        assert a == b
    summary = json.loads((tmp_path / "a" / "net.json").read_text())
    assert summary["info"] == 1.0 and summary["alpha"] == 0.0
    assert summary["trials"] == 4 and len(summary["trial_bits"]) == 4
    assert "created" not in summary


def test_partition_two_level_flag_and_info_resolution(tmp_path):
    src, _ = _write_net(tmp_path)
    assert main(["partition", "--two-level", "--info", "0.5", "--trials", "3",
                 "--out-dir", str(tmp_path), "--no-timestamp", str(src)]) == 0
    summary = json.loads((tmp_path / "net.json").read_text())
    assert summary["mode"] == "two_level" and summary["depth"] == 2
    assert 0.0 < summary["alpha"] < 0.5


def test_alpha_and_info_are_mutually_exclusive(tmp_path):
    src, _ = _write_net(tmp_path)
    with pytest.raises(SystemExit) as exc:
        main(["partition", "--alpha", "0.2", "--info", "0.5", str(src)])
    assert exc.value.code == 2


def test_missing_input_file_reports_error(tmp_path, capsys):
    assert main(["partition", str(tmp_path / "nope.tsv")]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_out_of_range_alpha_reports_error(tmp_path, capsys):
    src, _ = _write_net(tmp_path)
    assert main(["partition", "--alpha", "1.5", str(src)]) == 1
    assert "alpha" in capsys.readouterr().err


def test_disconnected_input_keeps_largest_component(tmp_path, capsys):
    src = tmp_path / "disc.tsv"
    src.write_text("a x\na y\nb z\n", encoding="utf-8")
    assert main(["eval", "--tree", str(_make_tree(tmp_path)), str(src)]) == 1
    err = capsys.readouterr().err
    assert "disconnected" in err and "3 of 5 nodes" in err


def _make_tree(tmp_path):
    # helper tree for a different network, used to trigger name mismatch
    src = tmp_path / "other.tsv"
    src.write_text(K22_TSV, encoding="utf-8")
    assert main(["partition", "--trials", "2", "--no-timestamp",
                 "--out-dir", str(tmp_path / "other_out"), str(src)]) == 0
    return tmp_path / "other_out" / "other.tree"


def test_pajek_autodetect(tmp_path):
    net, _ = planted_blocks(2, 2, 2, seed=4)
    src = tmp_path / "net.net"
    src.write_text(format_network(net, "bipartite_pajek"), encoding="utf-8")
    assert main(["partition", "--trials", "2", "--no-timestamp",
                 "--out-dir", str(tmp_path), str(src)]) == 0
    summary = json.loads((tmp_path / "net.json").read_text())
    assert summary["n_nodes"] == net.n_nodes


def test_eval_matches_partition_bits(tmp_path):
    src, _ = _write_net(tmp_path)
    out = tmp_path / "run"
    assert main(["partition", "--alpha", "0.25", "--trials", "4", "--no-timestamp",
                 "--out-dir", str(out), str(src)]) == 0
    assert main(["eval", "--alpha", "0.25", "--tree", str(out / "net.tree"),
                 "--no-timestamp", "--out-dir", str(out), str(src)]) == 0
    part = json.loads((out / "net.json").read_text())
    ev = json.loads((out / "net.eval.json").read_text())
    assert ev["bits"] == pytest.approx(part["bits"], abs=1e-12)
    assert ev["tree"] == "net.tree"


def test_eval_rejects_foreign_tree(tmp_path, capsys):
    src, _ = _write_net(tmp_path)
    tree = _make_tree(tmp_path)
    assert main(["eval", "--tree", str(tree), str(src)]) == 1
    assert "covers 4 nodes but the network has 10" in capsys.readouterr().err


def test_sweep_writes_grid_csv(tmp_path, capsys):
    src, _ = _write_net(tmp_path)
    assert main(["sweep", "--step", "0.5", "--trials", "3", "--no-timestamp",
                 "--out-dir", str(tmp_path), str(src)]) == 0
    assert "3 grid points" in capsys.readouterr().out
    lines = (tmp_path / "net.sweep.csv").read_text().splitlines()
    assert len(lines) == 4
    assert lines[0].split(",")[:2] == ["info", "alpha"]


def test_sweep_rejects_alpha_flag(tmp_path, capsys):
    src, _ = _write_net(tmp_path)
    assert main(["sweep", "--alpha", "0.2", str(src)]) == 1
    assert "drop --alpha/--info" in capsys.readouterr().err


def test_sweep_fixed_tree_reports_zero_trials(tmp_path):
    src, _ = _write_net(tmp_path)
    out = tmp_path / "run"
    assert main(["partition", "--trials", "3", "--no-timestamp",
                 "--out-dir", str(out), str(src)]) == 0
    assert main(["sweep", "--step", "0.5", "--fixed-tree", str(out / "net.tree"),
                 "--no-timestamp", "--out-dir", str(out), str(src)]) == 0
    rows = (out / "net.sweep.csv").read_text().splitlines()[1:]
    assert all(r.split(",")[-1] == "0" for r in rows)


def test_oracle_small_network(tmp_path, capsys):
    src = tmp_path / "k22.tsv"
    src.write_text(K22_TSV, encoding="utf-8")
    assert main(["oracle", "--alpha", "0", "--no-timestamp",
                 "--out-dir", str(tmp_path), str(src)]) == 0
    assert "optimum bits: 1.000000" in capsys.readouterr().out
    summary = json.loads((tmp_path / "k22.oracle.json").read_text())
    assert summary["bits"] == pytest.approx(1.0, abs=1e-12)
    assert summary["n_optimal"] == 9 and summary["examined"] == 15
    assert all(name in sum(sum(summary["partitions"], []), [])
               for name in ("u1", "u2", "v1", "v2"))


def test_oracle_rejects_oversize_network(tmp_path, capsys):
    src, _ = _write_net(tmp_path)
    assert main(["oracle", "--max-nodes", "4", str(src)]) == 1
    assert "error:" in capsys.readouterr().err
