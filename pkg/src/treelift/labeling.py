"""Node labelings over a universal tree and the operators acting on them.

An arc vw is *violated* when the tail label is below the unique tight value
against the head label, *tight* when equal, *loose* when above.  Lifting an
arc raises the tail to the tight value (never lowers), dropping caps it at
the tight value (never raises); both are monotone in the head label.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from collections import deque

from . import trees
from .errors import LiftBudgetExceeded
from .game import EVEN, ODD
from .trees import TOP, TreeSpec, tighten_target


class ArcStatus(enum.Enum):
    VIOLATED = "violated"
    TIGHT = "tight"
    LOOSE = "loose"


class NodeLabeling:
    """Total map node -> leaf-or-TOP, bound to one tree spec."""

    __slots__ = ("spec", "values")

    def __init__(self, spec: TreeSpec, values):
        self.spec = spec
        self.values = list(values)

    @classmethod
    def all_min(cls, spec: TreeSpec, n: int) -> "NodeLabeling":
        return cls(spec, [trees.min_leaf(spec)] * n)

    @classmethod
    def all_top(cls, spec: TreeSpec, n: int) -> "NodeLabeling":
        return cls(spec, [TOP] * n)

    def copy(self) -> "NodeLabeling":
        return NodeLabeling(self.spec, self.values)

    def __getitem__(self, v):
        return self.values[v]

    def __setitem__(self, v, label):
        self.values[v] = label

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return (isinstance(other, NodeLabeling)
                and self.spec == other.spec and self.values == other.values)

    def validate(self) -> None:
        for lab in self.values:
            trees.validate_label(self.spec, lab)

    def leq(self, other: "NodeLabeling") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def as_dict(self, game) -> dict:
        """{node id or name: canonical label string}, the CLI wire format."""
        return {
            str(game.label_of(v)): trees.format_label(self.spec, self.values[v])
            for v in range(len(self.values))
        }


def arc_status(graph, labeling: NodeLabeling, v: int, w: int) -> ArcStatus:
    """Classify arc vw against the labeling; (TOP, TOP) counts as tight."""
    target = tighten_target(labeling.spec, labeling[w], graph.priorities[v])
    lab = labeling[v]
    if lab is target or lab == target:
        return ArcStatus.TIGHT
    return ArcStatus.VIOLATED if lab < target else ArcStatus.LOOSE


def lift_arc(graph, labeling: NodeLabeling, v: int, w: int):
    """Smallest label >= mu(v) making vw non-violated: max(mu(v), tight)."""
    target = tighten_target(labeling.spec, labeling[w], graph.priorities[v])
    lab = labeling[v]
    return lab if target < lab else target


def drop_arc(graph, labeling: NodeLabeling, v: int, w: int):
    """Largest label <= nu(v) making vw non-loose: min(nu(v), tight)."""
    target = tighten_target(labeling.spec, labeling[w], graph.priorities[v])
    lab = labeling[v]
    return lab if lab < target else target


def is_feasible(graph, labeling: NodeLabeling, arcs=None, witness: bool = False):
    """Feasibility of the labeling in the subgraph given by ``arcs``
    (default: all arcs of ``graph``): every Odd arc non-violated and every
    Even node with out-arcs has a non-violated one.  With ``witness=True``
    returns (ok, sigma) where sigma picks one such arc per Even node."""
    if arcs is None:
        arcs = list(graph.arcs())
    even_out: dict[int, list[int]] = {}
    sigma: dict[int, int] = {}
    for v, w in arcs:
        if graph.owners[v] == ODD:
            if arc_status(graph, labeling, v, w) == ArcStatus.VIOLATED:
                return (False, None) if witness else False
        else:
            even_out.setdefault(v, []).append(w)
    for v, outs in even_out.items():
        for w in sorted(outs):
            if arc_status(graph, labeling, v, w) != ArcStatus.VIOLATED:
                sigma[v] = w
                break
        else:
            return (False, None) if witness else False
    return (True, sigma) if witness else True


@dataclass
class ProgressResult:
    labeling: NodeLabeling
    lifts: int


def progress_measure_solve(game, spec: TreeSpec, budget=None, strategy=None,
                           start=None) -> ProgressResult:
    """Least simultaneous fixed point of all Lift operators, at least ``start``
    (default: the all-minimum labeling).

    FIFO worklist seeded with every node; a strictly increasing application of
    Lift_v (Even) or Lift_vw (Odd) counts as one lift.  With ``strategy`` the
    computation runs on the strategy subgraph (a 1-player game for Even).
    Raises LiftBudgetExceeded carrying the partial labeling when ``budget``
    lift applications are not enough.
    """
    if strategy is None:
        succ, pred = game.succ, game.pred
    else:
        from .game import StrategySubgraph

        sub = game if isinstance(game, StrategySubgraph) else StrategySubgraph(game, strategy)
        succ, pred, game = sub.succ, sub.pred, sub.game
    n = game.n
    labeling = start.copy() if start is not None else NodeLabeling.all_min(spec, n)
    labeling.validate()
    lifts = 0
    queue = deque(range(n))
    queued = [True] * n

    def target_for(v):
        picks = [tighten_target(spec, labeling[w], game.priorities[v]) for w in succ[v]]
        return min(picks) if game.owners[v] == EVEN else max(picks)

    while queue:
        v = queue.popleft()
        queued[v] = False
        old = labeling[v]
        if game.owners[v] == EVEN:
            new = target_for(v)
            if new > old:
                if budget is not None and lifts + 1 > budget:
                    raise LiftBudgetExceeded(labeling, lifts)
                lifts += 1
                labeling[v] = new
        else:
            for w in succ[v]:
                t = tighten_target(spec, labeling[w], game.priorities[v])
                if t > labeling[v]:
                    if budget is not None and lifts + 1 > budget:
                        raise LiftBudgetExceeded(labeling, lifts)
                    lifts += 1
                    labeling[v] = t
        if labeling[v] > old:
            for u in pred[v]:
                if not queued[u] and arc_status(game, labeling, u, v) == ArcStatus.VIOLATED:
                    queued[u] = True
                    queue.append(u)
    return ProgressResult(labeling, lifts)
