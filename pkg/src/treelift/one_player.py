"""Least fixed points of 1-player games for Even.

Two engines compute the least fixed point of the lift operators above a given
labeling ``mu`` on a strategy subgraph (no loose arcs allowed in the input):

* ``least_fixed_point_lc``: label-correcting.  Base nodes (dominators of even
  cycles) are seeded via minimum bottleneck cycles of an auxiliary digraph
  whose per-chain arc costs bracket the subtree width needed around each
  cycle; a Bellman-Ford sweep then drops all labels to the fixed point.
* ``least_fixed_point_perfect``: label-setting (Dijkstra with interlaced
  topological potentials); perfect trees only.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from math import inf

from . import trees
from .errors import InvariantError, UsageError
from .labeling import ArcStatus, NodeLabeling, arc_status
from .trees import TOP, TreeSpec, tighten_target

INF = inf


@dataclass
class Counters:
    """Mutable tally of label operations for benchmarking."""

    lifts: int = 0
    drops: int = 0
    bf_runs: int = 0


# ---------------------------------------------------------------------------
# strongly connected components (iterative Tarjan, reverse topological order)
# ---------------------------------------------------------------------------


def strongly_connected(nodes, succ_of):
    """SCCs of the subgraph induced by ``nodes``; components are emitted in
    reverse topological order of the condensation (sinks first)."""
    nodes = list(nodes)
    index, low = {}, {}
    on_stack = set()
    stack, comps = [], []
    counter = itertools.count()
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ_of(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ_of(w))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work and low[v] < low[work[-1][0]]:
                low[work[-1][0]] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# base nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseNodeReport:
    """Base nodes of a strategy subgraph with their search scaffolding:
    ``k_comp[w]`` is the SCC of w among nodes of priority <= pi(w), ``j_nodes``
    the nodes that reach w inside it without crossing another dominator, and
    ``j_succ`` the arc lists of that subgraph."""

    base_nodes: tuple
    k_comp: dict = field(compare=False)
    j_nodes: dict = field(compare=False)
    j_succ: dict = field(compare=False)
    j_tops: dict = field(compare=False)


def _base_nodes_only(n, succ, priorities):
    alive = set(range(n))
    base = []
    while alive:
        comps = strongly_connected(
            sorted(alive), lambda v: (w for w in succ[v] if w in alive)
        )
        drop = []
        for comp in comps:
            p = max(priorities[v] for v in comp)
            tops = [v for v in comp if priorities[v] == p]
            cyclic = len(comp) > 1 or comp[0] in succ[comp[0]]
            if p % 2 == 0 and cyclic:
                base.extend(tops)
            drop.extend(tops)
        alive.difference_update(drop)
    return sorted(base)


def find_base_nodes(sub) -> BaseNodeReport:
    """Detect all dominators of even cycles by repeated SCC decomposition and
    build, for each, the subgraph its width search runs on."""
    n = sub.n
    prio = sub.priorities
    base = _base_nodes_only(n, sub.succ, prio)

    k_comp = {}
    for p in sorted({prio[w] for w in base}):
        nodes_p = [v for v in range(n) if prio[v] <= p]
        comps = strongly_connected(
            nodes_p, lambda v: (w for w in sub.succ[v] if prio[w] <= p)
        )
        comp_of = {}
        for comp in comps:
            cs = frozenset(comp)
            for v in comp:
                comp_of[v] = cs
        for w in base:
            if prio[w] == p:
                k_comp[w] = comp_of[w]

    j_nodes, j_succ, j_tops = {}, {}, {}
    for w in base:
        K = k_comp[w]
        others = {v for v in K if prio[v] == prio[w]} - {w}
        reach = {w}
        stack = [w]
        while stack:
            x = stack.pop()
            if x in others:
                continue  # incoming arcs of other dominators are deleted
            for u in sub.pred[x]:
                if u in K and u not in reach:
                    reach.add(u)
                    stack.append(u)
        adj = {
            u: tuple(x for x in sub.succ[u] if x in reach and x not in others)
            for u in sorted(reach)
        }
        j_nodes[w] = frozenset(reach)
        j_succ[w] = adj
        j_tops[w] = frozenset(v for v in reach if prio[v] == prio[w])
    return BaseNodeReport(tuple(base), k_comp, j_nodes, j_succ, j_tops)


@dataclass(frozen=True)
class AuxiliaryDigraph:
    """Digraph on base nodes: arc vw when v dominates J_w, self-loop ww when
    w keeps an outgoing arc in J_w.  Components are strongly connected."""

    nodes: tuple
    arcs: frozenset
    components: tuple


def build_auxiliary_digraph(sub, report: BaseNodeReport) -> AuxiliaryDigraph:
    arcs = set()
    for w in report.base_nodes:
        for v in report.j_tops[w]:
            if v != w:
                arcs.add((v, w))
            elif report.j_succ[w][w]:
                arcs.add((w, w))
    adj = {v: [] for v in report.base_nodes}
    for v, w in arcs:
        adj[v].append(w)
    comps = strongly_connected(report.base_nodes, lambda v: adj[v])
    if __debug__:
        comp_of = {}
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = i
        for v, w in arcs:
            if comp_of[v] != comp_of[w]:
                raise InvariantError("auxiliary digraph component not strongly connected")
    components = tuple(tuple(sorted(c)) for c in sorted(comps, key=min))
    return AuxiliaryDigraph(tuple(report.base_nodes), frozenset(arcs), components)


# ---------------------------------------------------------------------------
# Bellman-Ford
# ---------------------------------------------------------------------------


def _bf(values, arcs, priorities, spec, passes, counters=None, on_pass=None):
    """Drop every arc's tail label, ``passes`` rounds in a fixed order;
    early exit on a round without changes.  ``values`` is mutated."""
    for _ in range(max(passes, 1)):
        changed = False
        for v, w in arcs:
            t = tighten_target(spec, values[w], priorities[v])
            if t < values[v]:
                values[v] = t
                changed = True
                if counters is not None:
                    counters.drops += 1
        if on_pass is not None:
            on_pass(values)
        if not changed:
            break
    return values


def bellman_ford(sub, labeling: NodeLabeling, counters=None, on_pass=None) -> NodeLabeling:
    """n-1 ordered passes of drop over all arcs of the strategy subgraph."""
    out = labeling.copy()
    arcs = sorted(sub.arcs())
    if counters is not None:
        counters.bf_runs += 1
    _bf(out.values, arcs, sub.priorities, out.spec, sub.n - 1, counters, on_pass)
    return out


# ---------------------------------------------------------------------------
# arc costs
# ---------------------------------------------------------------------------


def _thresholds(report, w, j, k, spec, prio, counters=None):
    """Per node u of J_w, the smallest chain position i whose member tree
    admits a finite drop fixed point at u when w is pinned to that member's
    minimum leaf; INF when even the largest member fails."""
    jn = sorted(report.j_nodes[w])
    arcs = sorted((u, x) for u in jn for x in report.j_succ[w][u])
    length = trees.chain_length(spec, j, k)

    def finite_at(i):
        domain = trees.chain_member_spec(spec, j, k, i)
        values = {u: TOP for u in jn}
        values[w] = trees.min_leaf(domain)
        if counters is not None:
            counters.bf_runs += 1
        _bf(values, arcs, prio, domain, len(jn) - 1, counters)
        return {u for u in jn if values[u] is not TOP}

    out = {}
    if length <= 3:
        pending = set(jn)
        for i in range(length):
            if not pending:
                break
            fin = finite_at(i)
            for u in sorted(pending & fin):
                out[u] = i
            pending -= fin
        for u in pending:
            out[u] = INF
        return out

    def assign(lo, hi, cand):
        if not cand:
            return
        if lo == hi:
            fin = finite_at(lo)
            for u in cand:
                out[u] = lo if u in fin else INF
            return
        mid = (lo + hi) // 2
        fin = finite_at(mid)
        assign(lo, mid, [u for u in cand if u in fin])
        assign(mid + 1, hi, [u for u in cand if u not in fin])

    def assign_top(lo, hi, cand):
        # theta in [lo, hi] or INF for every candidate
        if not cand:
            return
        fin = finite_at(hi)
        assign(lo, hi, [u for u in cand if u in fin])
        for u in cand:
            if u not in fin:
                out[u] = INF

    assign_top(0, length - 1, jn)
    return out


def arc_costs_generic(sub, report, comp, j, k, spec, counters=None):
    """Chain-k costs for the auxiliary arcs inside one component, via the
    threshold search of the label-correcting algorithm.  Satisfies the
    width-bracketing bounds by construction."""
    costs = {}
    for w in comp:
        theta = _thresholds(report, w, j, k, spec, sub.priorities, counters)
        for v in sorted(report.j_tops[w]):
            outs = report.j_succ[w][v]
            if v == w and not outs:
                continue
            costs[(v, w)] = min((theta[u] for u in outs), default=INF)
    return costs


def arc_costs_succinct(sub, report, aux: AuxiliaryDigraph, w, spec, counters=None):
    """Succinct-tree shortcut: one Bellman-Ford run on J_w with the full
    height-j member, then cost = bits - max zeta over the tail's out-neighbours
    (clamped to INF past the chain end)."""
    if spec.kind != trees.SUCCINCT:
        raise UsageError("arc_costs_succinct requires a succinct tree spec")
    j = sub.priorities[w] // 2
    B = spec.bits
    domain = trees.chain_member_spec(spec, j, 0, B)
    jn = sorted(report.j_nodes[w])
    arcs = sorted((u, x) for u in jn for x in report.j_succ[w][u])
    values = {u: TOP for u in jn}
    values[w] = trees.min_leaf(domain)
    if counters is not None:
        counters.bf_runs += 1
    _bf(values, arcs, sub.priorities, domain, len(jn) - 1, counters)
    costs = {}
    for v in sorted(report.j_tops[w]):
        outs = report.j_succ[w][v]
        if v == w and not outs:
            continue
        if (v, w) not in aux.arcs:
            continue
        z = max((trees.zeta(domain, values[u]) for u in outs), default=-1)
        c = B - z
        costs[(v, w)] = c if c <= B else INF
    return costs


# ---------------------------------------------------------------------------
# minimum bottleneck cycles
# ---------------------------------------------------------------------------


def min_bottleneck_cycle_costs(comp, costs):
    """For every node of a component: the minimum over cycles through it of
    the maximum arc cost (INF when no finite-cost cycle exists).

    Recursive median splitting over the sorted distinct costs: nodes that are
    cyclic in the below-median subgraph recurse inside their SCC, the rest
    recurse on the SCC contraction whose cycles all have bottleneck above the
    median (the contraction keeps genuine self-loops).
    """
    result = {v: INF for v in comp}
    arcs = [(v, w, c) for (v, w), c in costs.items() if c != INF]

    def rec(nodes, arcs, candidates):
        out = {}
        if not nodes or not arcs or not candidates:
            return out
        if len(candidates) == 1:
            c0 = candidates[0]
            adj = {v: [] for v in nodes}
            loops = set()
            for v, w, c in arcs:
                if c <= c0:
                    adj[v].append(w)
                    if v == w:
                        loops.add(v)
            for K in strongly_connected(sorted(nodes), lambda v: adj[v]):
                if len(K) > 1 or K[0] in loops:
                    for v in K:
                        out[v] = c0
            return out
        mid = candidates[(len(candidates) - 1) // 2]
        low = [(v, w, c) for v, w, c in arcs if c <= mid]
        adj = {v: [] for v in nodes}
        for v, w, _ in low:
            adj[v].append(w)
        comps = strongly_connected(sorted(nodes), lambda v: adj[v])
        comp_of = {}
        for i, K in enumerate(comps):
            for v in K:
                comp_of[v] = i
        low_cands = [c for c in candidates if c <= mid]
        for K in comps:
            ks = set(K)
            intra = [(v, w, c) for v, w, c in low if v in ks and w in ks]
            if len(K) > 1 or any(v == w for v, w, _ in intra):
                for v, c in rec(ks, intra, low_cands).items():
                    out[v] = min(out.get(v, INF), c)
        c_nodes = set(comp_of.values())
        c_arcs = [
            (comp_of[v], comp_of[w], c)
            for v, w, c in arcs
            if comp_of[v] != comp_of[w] or v == w
        ]
        sub_res = rec(c_nodes, c_arcs, [c for c in candidates if c > mid])
        for v in nodes:
            c = sub_res.get(comp_of[v], INF)
            if c is not INF:
                out[v] = min(out.get(v, INF), c)
        return out

    cands = sorted({c for _, _, c in arcs})
    for v, c in rec(set(comp), arcs, cands).items():
        result[v] = c
    return result


# ---------------------------------------------------------------------------
# label-correcting engine
# ---------------------------------------------------------------------------


def require_no_loose(sub, mu: NodeLabeling) -> None:
    for v, w in sub.arcs():
        if arc_status(sub, mu, v, w) == ArcStatus.LOOSE:
            raise UsageError(f"labeling has a loose arc {v}->{w}")


def _floor_value(spec, leaf, j):
    """mu(w) when it is the minimum of its own depth-(h-j) subtree, otherwise
    the minimum of the next such subtree (the i = 0 raise for every chain)."""
    prefix = leaf[: spec.height - j]
    if trees.min_leaf_below(spec, prefix) == leaf:
        return leaf
    return trees.next_subtree_min(spec, prefix)


def least_fixed_point_lc(sub, mu: NodeLabeling, spec: TreeSpec, counters=None,
                         dump=None) -> NodeLabeling:
    """Label-correcting least fixed point above ``mu`` (which must have no
    loose arcs in the subgraph)."""
    require_no_loose(sub, mu)
    report = find_base_nodes(sub)
    nu = NodeLabeling.all_top(spec, sub.n)
    if report.base_nodes:
        aux = build_auxiliary_digraph(sub, report)
        for comp in aux.components:
            j = sub.priorities[comp[0]] // 2
            ks = trees.chain_indices(spec, j)
            per_node = {w: [] for w in comp}
            for k in ks:
                if spec.kind == trees.SUCCINCT:
                    costs = {}
                    for w in comp:
                        costs.update(arc_costs_succinct(sub, report, aux, w, spec, counters))
                else:
                    costs = arc_costs_generic(sub, report, comp, j, k, spec, counters)
                ik = min_bottleneck_cycle_costs(comp, costs)
                if dump is not None:
                    for arc in sorted(costs):
                        dump.setdefault(arc, []).append(costs[arc])
                for w in comp:
                    per_node[w].append((k, ik[w]))
            for w in comp:
                if mu[w] is TOP:
                    continue
                finite = [(k, i) for k, i in per_node[w] if i is not INF]
                if __debug__ and any(i == 0 for _, i in finite):
                    if not all(i == 0 for _, i in finite):
                        raise InvariantError("zero-cost cycle must be zero for all chains")
                best = TOP
                for k, i in finite:
                    if i == 0:
                        best = min(best, _floor_value(spec, mu[w], j))
                    else:
                        best = min(best, trees.raise_leaf(spec, mu[w], int(i), j, k))
                nu[w] = best
    out = bellman_ford(sub, nu, counters)
    if __debug__:
        for v in range(sub.n):
            if out[v] < mu[v]:
                raise InvariantError("fixed point fell below the input labeling")
    return out


# ---------------------------------------------------------------------------
# label-setting engine (Dijkstra)
# ---------------------------------------------------------------------------


def compute_phi(sub, base_nodes=None, up_to=None):
    """Per even priority p: a topological index on H_p (H = the subgraph with
    all base-node out-arcs removed): 0 above priority p, otherwise constant
    exactly on SCCs and nonincreasing along reachability."""
    n = sub.n
    prio = sub.priorities
    if base_nodes is None:
        base_nodes = find_base_nodes(sub).base_nodes
    blocked = set(base_nodes)
    hsucc = [(() if v in blocked else sub.succ[v]) for v in range(n)]
    if __debug__:
        if _base_nodes_only(n, hsucc, prio):
            raise InvariantError("H still contains an even cycle")
    d = max(prio)
    d += d % 2
    if up_to is not None:
        d = max(d, up_to)
    phi = {}
    for p in range(2, d + 1, 2):
        nodes_p = [v for v in range(n) if prio[v] <= p]
        comps = strongly_connected(
            nodes_p, lambda v: (w for w in hsucc[v] if prio[w] <= p)
        )
        val = [0] * n
        for rank, comp in enumerate(comps, start=1):
            for v in comp:
                val[v] = rank
        phi[p] = val
    return phi


def _potential(spec, phi, values, v, d):
    if values[v] is TOP:
        return (1,)
    leaf = values[v]
    parts = [0]
    for t in range(spec.height):
        p = d - 2 * t
        parts.append(phi[p][v] if p in phi else 0)
        parts.append(leaf[t])
    return tuple(parts)


def dijkstra(sub, nu: NodeLabeling, counters=None) -> NodeLabeling:
    """Label-setting sweep: fixes base-node labels from ``nu``, then admits
    the node of minimum interlaced potential and drops its incoming arcs.
    Returns the pointwise minimal labeling feasible in H that agrees with
    ``nu`` on the base nodes."""
    spec = nu.spec
    n = sub.n
    base = find_base_nodes(sub).base_nodes
    S = set(base)
    values = [nu[v] if v in S else TOP for v in range(n)]
    d = 2 * spec.height
    phi = compute_phi(sub, base, up_to=d)

    def drop_into(v, w):
        t = tighten_target(spec, values[w], sub.priorities[v])
        if t < values[v]:
            values[v] = t
            if counters is not None:
                counters.drops += 1
            return True
        return False

    heap = []
    current = {}

    def push(v):
        pot = _potential(spec, phi, values, v, d)
        current[v] = pot
        heapq.heappush(heap, (pot, v))

    for w in sorted(S):
        for v in sub.pred[w]:
            if v not in S:
                drop_into(v, w)
    for v in range(n):
        if v not in S:
            push(v)

    last_pot = None
    while len(S) < n:
        pot, u = heapq.heappop(heap)
        if u in S or current.get(u) != pot:
            continue
        if __debug__:
            if last_pot is not None and pot < last_pot:
                raise InvariantError("dijkstra admitted a decreasing potential")
            last_pot = pot
        S.add(u)
        for v in sub.pred[u]:
            if v not in S and drop_into(v, u):
                push(v)
    out = NodeLabeling(spec, values)
    return out


def least_fixed_point_perfect(sub, mu: NodeLabeling, spec: TreeSpec,
                              counters=None) -> NodeLabeling:
    """Label-setting least fixed point for perfect trees: lift once at every
    base node whose out-arcs are all violated, then run Dijkstra."""
    if spec.kind != trees.PERFECT:
        raise UsageError("least_fixed_point_perfect requires a perfect tree")
    require_no_loose(sub, mu)
    base = find_base_nodes(sub).base_nodes
    mu2 = mu.copy()
    for v in base:
        targets = [tighten_target(spec, mu2[w], sub.priorities[v]) for w in sub.succ[v]]
        if all(mu2[v] < t for t in targets):
            mu2[v] = min(targets)
            if counters is not None:
                counters.lifts += 1
    out = dijkstra(sub, mu2, counters)
    if __debug__:
        for v in range(sub.n):
            if out[v] < mu[v]:
                raise InvariantError("fixed point fell below the input labeling")
    return out
