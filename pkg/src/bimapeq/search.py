"""Stochastic search for well-compressing partitions.

Each trial runs a descent of randomized best-move sweeps from a
singleton start, aggregates modules into super nodes and recurses, and
fine-tunes original nodes inside the found modules until no move gains
at least ``min_improvement`` bits.  The hierarchical mode then groups
top-level modules under super modules and recursively splits leaf
modules while the total bits keep dropping.  Trials are independent and
deterministic: trial ``t`` draws its generator from
``numpy.random.SeedSequence((seed, t))``, and the reduction keeps the
lowest bits, ties to the earliest trial.

Trials after the first start from a random type-pure pre-grouping
instead of bare singletons.  Grouping nodes of one type is exactly
bit-neutral (a pure codebook costs its usage times the type entropy,
which is linear in usage), so these starts score identically to the
singleton state while letting sweeps cross the zero-gain ridge that
blocks single-node descent at small alpha.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .codelength import CodeLength, codelength, one_level_codelength
from .network import BipartiteNetwork, is_connected
from .partition import PartitionTree, dense_assignment, one_module_tree, two_level_tree
from .flow import visit_rates

__all__ = ["SearchParams", "SearchResult", "run_trials", "optimize_two_level", "optimize_hierarchical"]


def _plogp(x: float) -> float:
    return float(x * np.log2(x)) if x > 0.0 else 0.0


@dataclass(frozen=True)
class SearchParams:
    """Search configuration.

    trials : independent restarts to run.
    seed : master seed; trial generators derive from (seed, trial).
    min_improvement : smallest accepted gain in bits per move or phase.
    max_outer_loops : cap on sweep-and-aggregate rounds per level; a
        safety valve only, since strict-gain moves terminate on their own.
    threads : worker threads for running trials in parallel; the result
        does not depend on the thread count.
    """

    trials: int = 100
    seed: int = 0
    min_improvement: float = 1e-10
    max_outer_loops: int = 50
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.min_improvement < 0:
            raise ValueError("min_improvement must be non-negative")
        if self.max_outer_loops < 1:
            raise ValueError("max_outer_loops must be positive")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Best partition over all trials.

    ``bits`` is recomputed from scratch for the winning tree (``detail``
    carries its per-codebook contributions); ``trial_bits`` holds every
    trial's own evaluation.
    """

    tree: PartitionTree
    bits: float
    detail: CodeLength
    trial_bits: tuple[float, ...]
    best_trial: int
    alpha: float
    mode: str


class _Level:
    """Edge list plus CSR adjacency for one search level."""

    __slots__ = ("n", "eu", "ev", "ef", "npl", "npr", "nself", "indptr", "indices", "flows")

    def __init__(self, n, eu, ev, ef, npl, npr, nself):
        self.n = n
        self.eu = eu
        self.ev = ev
        self.ef = ef
        self.npl = npl
        self.npr = npr
        self.nself = nself
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        ff = np.concatenate([ef, ef])
        order = np.argsort(src, kind="stable")
        self.indices = np.ascontiguousarray(dst[order])
        self.flows = np.ascontiguousarray(ff[order])
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=self.indptr[1:])


class _Workspace:
    """Read-only per-network data shared by all trials."""

    def __init__(self, net: BipartiteNetwork, alpha: float):
        self.net = net
        self.alpha = float(alpha)
        self.n = net.n_nodes
        eu = net.edge_left.astype(np.int64)
        ev = net.edge_right.astype(np.int64)
        ef = net.weights / net.total_weight
        side = visit_rates(net).side_rate
        left = np.arange(self.n) < net.n_left
        npl = np.where(left, side, 0.0)
        npr = np.where(left, 0.0, side)
        self.base = _Level(self.n, eu, ev, ef, npl, npr, np.zeros(self.n))
        a = self.alpha
        comp1 = np.where(left, (1.0 - a) * side, a * side)
        comp2 = np.where(left, a * side, (1.0 - a) * side)
        self.node_const = -float(
            np.sum(comp1 * np.log2(comp1, where=comp1 > 0, out=np.zeros_like(comp1)))
            + np.sum(comp2 * np.log2(comp2, where=comp2 > 0, out=np.zeros_like(comp2)))
        )
        self.one_level_bits = one_level_codelength(net, alpha)


def _module_state(level: _Level, assign: np.ndarray):
    n = level.n
    mpl = np.bincount(assign, weights=level.npl, minlength=n)
    mpr = np.bincount(assign, weights=level.npr, minlength=n)
    mint = np.bincount(assign, weights=level.nself, minlength=n)
    mcount = np.bincount(assign, minlength=n).astype(np.int64)
    lu = assign[level.eu]
    lv = assign[level.ev]
    intra = lu == lv
    if intra.any():
        mint += np.bincount(lu[intra], weights=level.ef[intra], minlength=n)
    return mpl, mpr, mint, mcount


def _sweep_until_stable(level, assign, mpl, mpr, mint, mcount, g, alpha, ext1, ext2, rng, eps):
    slot = np.full(level.n, -1, dtype=np.int64)
    nbr_mod = np.empty(level.n, dtype=np.int64)
    nbr_flow = np.empty(level.n, dtype=np.float64)
    empties = np.empty(level.n, dtype=np.int64)
    total = 0.0
    while True:
        order = rng.permutation(level.n).astype(np.int64)
        moves, gain = _k.flat_sweep(
            level.indptr, level.indices, level.flows,
            level.npl, level.npr, level.nself,
            assign, mpl, mpr, mint, mcount, g,
            alpha, ext1, ext2, order, slot, nbr_mod, nbr_flow, empties, eps,
        )
        total += gain
        if moves == 0:
            return total


def _aggregate(base: _Level, mapping: np.ndarray) -> _Level:
    k = int(mapping.max()) + 1
    apl = np.bincount(mapping, weights=base.npl, minlength=k)
    apr = np.bincount(mapping, weights=base.npr, minlength=k)
    aself = np.bincount(mapping, weights=base.nself, minlength=k)
    lu = mapping[base.eu]
    lv = mapping[base.ev]
    intra = lu == lv
    if intra.any():
        aself += np.bincount(lu[intra], weights=base.ef[intra], minlength=k)
    a = np.minimum(lu[~intra], lv[~intra])
    b = np.maximum(lu[~intra], lv[~intra])
    key = a * k + b
    uniq, inv = np.unique(key, return_inverse=True)
    uf = np.bincount(inv, weights=base.ef[~intra])
    return _Level(k, uniq // k, uniq % k, uf, apl, apr, aself)


def _pure_pregroup(level: _Level, rng, frac: float) -> np.ndarray:
    """Random grouping of same-type nodes via two-hop unions.

    Pure groups cost exactly what their singletons cost at every alpha,
    so this start state scores like the singleton start.  It exists to
    seed the sweeps where single-node moves sit on a zero-gain ridge: at
    alpha near zero a mixed module only pays off once several same-type
    nodes are already together.
    """
    parent = np.arange(level.n, dtype=np.int64)
    rounds = int(frac * level.n)
    cap = int(rng.integers(2, 7))
    if rounds == 0:
        return parent
    cand = rng.integers(0, level.n, size=rounds, dtype=np.int64)
    size = np.ones(level.n, dtype=np.int64)
    _k.pregroup_unions(
        level.indptr, level.indices, cand,
        rng.random(rounds), rng.random(rounds), parent, size, cap,
    )
    return dense_assignment(parent)


def _flat_search(level: _Level, ext1, ext2, alpha, rng, eps, pregroup=0.0, max_loops=50) -> np.ndarray:
    """Sweep, aggregate and fine-tune until stable; returns a dense assignment."""
    if pregroup > 0.0:
        flat = _pure_pregroup(level, rng, pregroup)
    else:
        flat = np.arange(level.n, dtype=np.int64)
    loops = 0
    while True:
        mpl, mpr, mint, mcount = _module_state(level, flat)
        g = np.array(_k.flat_gsum(mpl, mpr, mint, mcount, alpha))
        round_gain = _sweep_until_stable(
            level, flat, mpl, mpr, mint, mcount, g, alpha, ext1, ext2, rng, eps
        )
        flat = dense_assignment(flat)
        while True:
            agg = _aggregate(level, flat)
            assign = np.arange(agg.n, dtype=np.int64)
            mpl, mpr, mint, mcount = _module_state(agg, assign)
            g = np.array(_k.flat_gsum(mpl, mpr, mint, mcount, alpha))
            gain = _sweep_until_stable(
                agg, assign, mpl, mpr, mint, mcount, g, alpha, ext1, ext2, rng, eps
            )
            if gain == 0.0:
                break
            round_gain += gain
            flat = dense_assignment(assign)[flat]
        loops += 1
        if round_gain == 0.0 or loops >= max_loops:
            return flat


def _leaf_stats(ws: _Workspace, tree: PartitionTree):
    """Per-leaf (nodes, pl, pr, internal flow) maps keyed by leaf path."""
    base = ws.base
    leaf_list = list(tree.leaves())
    leaf_of = np.full(ws.n, -1, dtype=np.int64)
    for i, (_, leaf) in enumerate(leaf_list):
        leaf_of[leaf.nodes] = i
    lu = leaf_of[base.eu]
    lv = leaf_of[base.ev]
    intra = lu == lv
    internal = np.bincount(lu[intra], weights=base.ef[intra], minlength=len(leaf_list))
    out = {}
    for i, (path, leaf) in enumerate(leaf_list):
        pl = float(base.npl[leaf.nodes].sum())
        pr = float(base.npr[leaf.nodes].sum())
        out[path] = (leaf.nodes, pl, pr, float(internal[i]))
    return out


def _entry_pair(pl, pr, ii, alpha):
    el = pl - ii
    er = pr - ii
    return (1.0 - alpha) * el + alpha * er, alpha * el + (1.0 - alpha) * er


def _split_leaf(ws, nodes, pl, pr, ii, rng, eps, min_gain2, pregroup=0.0, max_loops=50) -> PartitionTree:
    """Recursively try to split one leaf; external exit is the swapped entry."""
    alpha = ws.alpha
    e1, e2 = _entry_pair(pl, pr, ii, alpha)
    ext1, ext2 = e2, e1
    if nodes.size < 2:
        return PartitionTree.leaf(nodes)
    base = ws.base
    member = np.zeros(ws.n, dtype=bool)
    member[nodes] = True
    emask = member[base.eu] & member[base.ev]
    local = np.full(ws.n, -1, dtype=np.int64)
    local[nodes] = np.arange(nodes.size)
    sub = _Level(
        nodes.size,
        local[base.eu[emask]],
        local[base.ev[emask]],
        base.ef[emask],
        base.npl[nodes],
        base.npr[nodes],
        np.zeros(nodes.size),
    )
    assign = _flat_search(sub, ext1, ext2, alpha, rng, eps, pregroup, max_loops)
    k = int(assign.max()) + 1
    if k < 2:
        return PartitionTree.leaf(nodes)
    mpl, mpr, mint, mcount = _module_state(sub, assign)
    split_bits = _k.flat_total(mpl, mpr, mint, mcount, alpha, ext1, ext2)
    u1 = (1.0 - alpha) * pl + alpha * pr + ext1
    u2 = alpha * pl + (1.0 - alpha) * pr + ext2
    unsplit_bits = _plogp(u1) + _plogp(u2)
    if unsplit_bits - split_bits < min_gain2:
        return PartitionTree.leaf(nodes)
    children = []
    for m in range(k):
        child_nodes = nodes[assign == m]
        children.append(
            _split_leaf(
                ws, child_nodes, float(mpl[m]), float(mpr[m]), float(mint[m]),
                rng, eps, min_gain2, pregroup, max_loops,
            )
        )
    children.sort(key=lambda c: c.min_node())
    return PartitionTree.internal(children)


def _subtree_nodes(tree: PartitionTree) -> np.ndarray:
    if tree.is_leaf:
        return tree.nodes
    return np.concatenate([_subtree_nodes(c) for c in tree.children])


def _super_phase(ws: _Workspace, children: list[PartitionTree], rng, eps) -> list[PartitionTree]:
    """Group top-level items under super modules while any move gains bits."""
    base = ws.base
    alpha = ws.alpha
    while len(children) >= 2:
        k = len(children)
        item_of = np.full(ws.n, -1, dtype=np.int64)
        for i, c in enumerate(children):
            item_of[_subtree_nodes(c)] = i
        ipl = np.bincount(item_of, weights=base.npl, minlength=k)
        ipr = np.bincount(item_of, weights=base.npr, minlength=k)
        lu = item_of[base.eu]
        lv = item_of[base.ev]
        intra = lu == lv
        iself = np.bincount(lu[intra], weights=base.ef[intra], minlength=k)
        a = np.minimum(lu[~intra], lv[~intra])
        b = np.maximum(lu[~intra], lv[~intra])
        key = a * k + b
        uniq, inv = np.unique(key, return_inverse=True)
        uf = np.bincount(inv, weights=base.ef[~intra])
        graph = _Level(k, uniq // k, uniq % k, uf, ipl, ipr, iself)
        el = ipl - iself
        er = ipr - iself
        ie1 = (1.0 - alpha) * el + alpha * er
        ie2 = alpha * el + (1.0 - alpha) * er

        assign = np.arange(k, dtype=np.int64)
        gpl, gpr, gint, ge1, ge2 = ipl.copy(), ipr.copy(), iself.copy(), ie1.copy(), ie2.copy()
        gcount = np.ones(k, dtype=np.int64)
        g = np.array(_k.super_gsum(gpl, gpr, gint, gcount, alpha))
        slot = np.full(k, -1, dtype=np.int64)
        nbr_mod = np.empty(k, dtype=np.int64)
        nbr_flow = np.empty(k, dtype=np.float64)
        total_moves = 0
        while True:
            order = rng.permutation(k).astype(np.int64)
            moves, _ = _k.super_sweep(
                graph.indptr, graph.indices, graph.flows,
                ipl, ipr, iself, ie1, ie2,
                assign, gpl, gpr, gint, ge1, ge2, gcount, g,
                alpha, order, slot, nbr_mod, nbr_flow, eps,
            )
            total_moves += moves
            if moves == 0:
                break
        if total_moves == 0:
            return children
        groups: dict[int, list[PartitionTree]] = {}
        for i, c in enumerate(children):
            groups.setdefault(int(assign[i]), []).append(c)
        rebuilt = []
        for members in groups.values():
            if len(members) == 1:
                rebuilt.append(members[0])
            else:
                members.sort(key=lambda c: c.min_node())
                rebuilt.append(PartitionTree.internal(members))
        if len(rebuilt) == len(children) or len(rebuilt) == 1:
            # nothing grouped, or everything merged (a structural no-op)
            return children
        rebuilt.sort(key=lambda c: c.min_node())
        children = rebuilt
    return children


def _evaluate_tree(ws: _Workspace, tree: PartitionTree) -> float:
    """Tree bits via per-tree-node flow triples; fast twin of the reference."""
    alpha = ws.alpha
    base = ws.base
    order = list(tree.walk())
    t_count = len(order)
    index = {id(t): i for i, (_, t) in enumerate(order)}
    parent = np.full(t_count, -1, dtype=np.int64)
    depth = np.zeros(t_count, dtype=np.int64)
    for i, (path, t) in enumerate(order):
        depth[i] = len(path)
        for c in t.children:
            parent[index[id(c)]] = i
    pl = np.zeros(t_count)
    pr = np.zeros(t_count)
    ii = np.zeros(t_count)
    leaf_of = np.full(ws.n, -1, dtype=np.int64)
    for i, (_, t) in enumerate(order):
        if t.is_leaf:
            leaf_of[t.nodes] = i
            pl[i] = base.npl[t.nodes].sum()
            pr[i] = base.npr[t.nodes].sum()
    for i in range(t_count - 1, 0, -1):
        pl[parent[i]] += pl[i]
        pr[parent[i]] += pr[i]
    max_depth = int(depth.max())
    anc = np.full((t_count, max_depth + 1), -1, dtype=np.int64)
    for i in range(t_count):
        d = depth[i]
        anc[i, d] = i
        if i > 0:
            anc[i, :d] = anc[parent[i], :d]
    lu = leaf_of[base.eu]
    lv = leaf_of[base.ev]
    for d in range(1, max_depth + 1):
        au = anc[lu, d]
        av = anc[lv, d]
        m = (au >= 0) & (au == av)
        if m.any():
            ii += np.bincount(au[m], weights=base.ef[m], minlength=t_count)
    el = pl - ii
    er = pr - ii
    e1 = (1.0 - alpha) * el + alpha * er
    e2 = alpha * el + (1.0 - alpha) * er
    e1[0] = 0.0
    e2[0] = 0.0
    total = ws.node_const
    for i, (_, t) in enumerate(order):
        if t.is_leaf:
            u1 = (1.0 - alpha) * pl[i] + alpha * pr[i] + e2[i]
            u2 = alpha * pl[i] + (1.0 - alpha) * pr[i] + e1[i]
            total += -(_plogp(e1[i]) + _plogp(e2[i])) + _plogp(u1) + _plogp(u2)
        else:
            v1 = e2[i]
            v2 = e1[i]
            for c in t.children:
                j = index[id(c)]
                total += -(_plogp(e1[j]) + _plogp(e2[j]))
                v1 += e1[j]
                v2 += e2[j]
            if i != 0:
                total += -(_plogp(e1[i]) + _plogp(e2[i]))
            total += _plogp(v1) + _plogp(v2)
    return total / 2.0


def _one_trial(ws: _Workspace, trial: int, params: SearchParams, hierarchical: bool):
    rng = np.random.default_rng(np.random.SeedSequence((params.seed, trial)))
    eps = 2.0 * params.min_improvement
    # trial 0 is the plain singleton descent; later trials draw a
    # bit-neutral type-pure pre-grouping to get off zero-gain ridges
    pregroup = 0.0 if trial == 0 else float(rng.uniform(0.0, 0.9))
    flat = _flat_search(ws.base, 0.0, 0.0, ws.alpha, rng, eps, pregroup, params.max_outer_loops)
    tree = two_level_tree(flat)
    if hierarchical:
        children = _super_phase(ws, list(tree.children), rng, eps)
        tree = PartitionTree.internal(sorted(children, key=lambda c: c.min_node()))
        stats = _leaf_stats(ws, tree)

        def rebuild(path, t):
            if t.is_leaf:
                nodes, pl, pr, internal = stats[path]
                return _split_leaf(
                    ws, nodes, pl, pr, internal, rng, eps, eps, pregroup,
                    params.max_outer_loops,
                )
            kids = [rebuild(path + (i,), c) for i, c in enumerate(t.children, start=1)]
            return PartitionTree.internal(kids)

        tree = rebuild((), tree)
        if len(tree.children) == 1 and not tree.children[0].is_leaf:
            # bit-identical hoist: the whole network's boundary pair is zero
            tree = tree.children[0]
    bits = _evaluate_tree(ws, tree)
    if ws.one_level_bits <= bits + 1e-11 and tree.n_modules > 1:
        # ties go to the single codebook; covers stalled neutral groupings
        tree = one_module_tree(ws.n)
        bits = ws.one_level_bits
    return bits, tree


def run_trials(
    net: BipartiteNetwork,
    alpha: float,
    params: SearchParams = SearchParams(),
    hierarchical: bool = True,
) -> SearchResult:
    """Run independent search trials and keep the shortest result.

    The network must be connected.  Reported ``bits`` come from a
    from-scratch evaluation of the winning tree; ties between trials
    resolve to the earliest trial index regardless of thread count.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if not is_connected(net):
        raise ValueError("network must be connected; extract a component first")
    ws = _Workspace(net, alpha)
    if params.threads > 1:
        with ThreadPoolExecutor(max_workers=params.threads) as pool:
            outcomes = list(
                pool.map(lambda t: _one_trial(ws, t, params, hierarchical), range(params.trials))
            )
    else:
        outcomes = [_one_trial(ws, t, params, hierarchical) for t in range(params.trials)]
    best_trial = 0
    for t in range(1, params.trials):
        if outcomes[t][0] < outcomes[best_trial][0]:
            best_trial = t
    tree = outcomes[best_trial][1].canonical()
    detail = codelength(net, tree, alpha)
    return SearchResult(
        tree=tree,
        bits=detail.bits,
        detail=detail,
        trial_bits=tuple(b for b, _ in outcomes),
        best_trial=best_trial,
        alpha=alpha,
        mode="hierarchical" if hierarchical else "two_level",
    )


def optimize_two_level(net, alpha, params: SearchParams = SearchParams()) -> SearchResult:
    """Search over flat partitions only."""
    return run_trials(net, alpha, params, hierarchical=False)


def optimize_hierarchical(net, alpha, params: SearchParams = SearchParams()) -> SearchResult:
    """Search over nested partitions: flat search, super grouping, leaf splitting."""
    return run_trials(net, alpha, params, hierarchical=True)
