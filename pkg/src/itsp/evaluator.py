"""Decode representations into timed schedules and score them.

Counters of nodes the salesman is away from are decayed lazily: each node
remembers its counter and the time it was last left, and the elapsed time is
subtracted on the next arrival.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .representations import OneList, Representation, ThreeList, TwoList
from .temperature import Instance, ProfileKind, decay, max_consecutive


@dataclass(frozen=True)
class Visit:
    node: int
    process: int
    wait: int
    arrive: int
    depart: int

    def to_dict(self) -> dict:
        return {
            "node": self.node,
            "arrive": self.arrive,
            "process": self.process,
            "wait": self.wait,
            "depart": self.depart,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Visit":
        return cls(
            node=int(data["node"]),
            process=int(data["process"]),
            wait=int(data["wait"]),
            arrive=int(data["arrive"]),
            depart=int(data["depart"]),
        )


@dataclass(frozen=True)
class ObjectiveBreakdown:
    processing: int
    travel: int
    waiting: int

    @property
    def total(self) -> int:
        return self.processing + self.travel + self.waiting

    def to_dict(self) -> dict:
        return {
            "processing": self.processing,
            "travel": self.travel,
            "waiting": self.waiting,
            "total": self.total,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ObjectiveBreakdown":
        return cls(int(data["processing"]), int(data["travel"]), int(data["waiting"]))


@dataclass(frozen=True)
class Schedule:
    visits: tuple[Visit, ...] = field(default_factory=tuple)
    start: int | None = None
    total: int = 0

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "total": self.total,
            "visits": [v.to_dict() for v in self.visits],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Schedule":
        visits = tuple(Visit.from_dict(v) for v in data["visits"])
        start = data.get("start")
        if start is None and visits:
            start = visits[0].node
        return cls(visits, start, int(data["total"]))


class VisitOutcome(NamedTuple):
    elapsed: int
    counter: int


def _visit_units(c: int, q: int, k_max: int) -> VisitOutcome:
    # unit-step rule: process when the next unit stays within B, otherwise wait
    elapsed = 0
    while q > 0:
        if c + 1 <= k_max:
            c += 1
            q -= 1
        else:
            c = c - 1 if c > 0 else 0
        elapsed += 1
    return VisitOutcome(elapsed, c)


def visit_time(c0: int, q: int, kind: ProfileKind, B: float) -> VisitOutcome:
    """Time needed to process ``q`` units starting from counter ``c0``.

    Waiting is inserted only when the next processed unit would push the
    temperature over ``B``.
    """
    return _visit_units(c0, q, max_consecutive(kind, B))


def tour_travel(order: Sequence[int], inst: Instance, start: int | None = None) -> int:
    """Total distance of the visit order, closing back to ``start``."""
    if not order:
        return 0
    if start is None:
        start = order[0]
    d = inst.d
    travel = d[start][order[0]]
    for a, b in zip(order, order[1:]):
        travel += d[a][b]
    return travel + d[order[-1]][start]


class _Walker:
    """Moves the salesman through a visit sequence and records the schedule."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.k_max = inst.max_consecutive
        self.counter = [0] * inst.n
        self.left_at = [0] * inst.n
        self.t = 0
        self.cur: int | None = None
        self.start: int | None = None
        self.travel = 0
        self.waiting = 0
        self.processing = 0
        self.visits: list[Visit] = []

    def arrive(self, node: int) -> int:
        if self.cur is None:
            self.start = node
        elif node != self.cur:
            self.left_at[self.cur] = self.t
            leg = self.inst.d[self.cur][node]
            self.travel += leg
            self.t += leg
            self.counter[node] = decay(self.counter[node], self.t - self.left_at[node])
        self.cur = node
        return self.counter[node]

    def work(self, node: int, amount: int, elapsed: int, counter: int) -> None:
        wait = elapsed - amount
        self.visits.append(Visit(node, amount, wait, self.t, self.t + elapsed))
        self.t += elapsed
        self.processing += amount
        self.waiting += wait
        self.counter[node] = counter

    def close(self) -> tuple[Schedule, ObjectiveBreakdown]:
        if self.cur is not None:
            leg = self.inst.d[self.cur][self.start]
            self.travel += leg
            self.t += leg
        breakdown = ObjectiveBreakdown(self.processing, self.travel, self.waiting)
        return Schedule(tuple(self.visits), self.start, self.t), breakdown


def evaluate_greedy(ol: OneList, inst: Instance) -> tuple[Schedule, ObjectiveBreakdown]:
    """Process as much as the node temperature allows at every visit.

    Only a node's last occurrence in the list (or an arrival at a node that is
    still at its limit) may include waiting; occurrences of finished nodes are
    skipped without travelling to them.
    """
    nl = ol.nl
    last = {node: k for k, node in enumerate(nl)}
    remaining = list(inst.p)
    walker = _Walker(inst)
    k_max = walker.k_max
    for k, node in enumerate(nl):
        rem = remaining[node]
        if rem == 0:
            continue
        c = walker.arrive(node)
        quantum = min(rem, k_max - c)
        if quantum == 0 or k == last[node]:
            elapsed, c_end = _visit_units(c, rem, k_max)
            amount = rem
        else:
            amount = elapsed = quantum
            c_end = c + quantum
        walker.work(node, amount, elapsed, c_end)
        remaining[node] -= amount
    return walker.close()


def evaluate_ptl(
    nl: Sequence[int], ptl: Sequence[int], inst: Instance
) -> tuple[Schedule, ObjectiveBreakdown]:
    """Process exactly the listed amount at every occurrence, waiting when forced."""
    walker = _Walker(inst)
    k_max = walker.k_max
    for node, amount in zip(nl, ptl):
        c = walker.arrive(node)
        elapsed, c_end = _visit_units(c, amount, k_max)
        walker.work(node, amount, elapsed, c_end)
    return walker.close()


def evaluate(rep: Representation, inst: Instance) -> tuple[Schedule, ObjectiveBreakdown]:
    if isinstance(rep, OneList):
        return evaluate_greedy(rep, inst)
    if isinstance(rep, (TwoList, ThreeList)):
        return evaluate_ptl(rep.nl, rep.ptl, inst)
    raise TypeError(f"cannot evaluate {type(rep).__name__}")
