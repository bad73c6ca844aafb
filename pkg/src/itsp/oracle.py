"""Independent ground truth for the evaluator and the GA.

``simulate_timeline`` replays a schedule one time unit at a time, updating
every node's counter and temperature from scratch. It shares only
``profile_value`` with the evaluator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .evaluator import Schedule, Visit
from .temperature import Instance, profile_value

TRAVEL, PROCESS, WAIT, IDLE = "travel", "process", "wait", "idle"


@dataclass(frozen=True)
class TemperatureViolation:
    t: int
    node: int
    temperature: float
    limit: float

    def __str__(self) -> str:
        return (
            f"t={self.t}: node {self.node} reached temperature "
            f"{self.temperature:g} > B={self.limit:g}"
        )


@dataclass
class TimelineTrace:
    """Per-time-unit replay; row t of ``c``/``temp`` is the state after unit t."""

    c: list[list[int]] = field(default_factory=list)
    temp: list[list[float]] = field(default_factory=list)
    activity: list[tuple[str, int | None]] = field(default_factory=list)
    duration: int = 0
    processed: list[int] = field(default_factory=list)
    violations: list[TemperatureViolation] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.problems

    @property
    def peak(self) -> list[float]:
        if not self.temp:
            return []
        return [max(col) for col in zip(*self.temp)]

    def report(self) -> list[str]:
        return [str(v) for v in self.violations] + list(self.problems)


class _Replay:
    def __init__(self, inst: Instance, trace: TimelineTrace):
        self.inst = inst
        self.trace = trace
        self.c = [0] * inst.n
        trace.c.append(list(self.c))
        f2 = inst.profile.decrease
        trace.temp.append([profile_value(f2, 0)] * inst.n)

    def step(self, what: str, node: int | None = None) -> None:
        profile = self.inst.profile
        busy = node if what == PROCESS else None
        temps = []
        for i in range(self.inst.n):
            y = 1 if i == busy else 0
            prev = self.c[i]
            self.c[i] = (prev + 1) * y + max(prev - 1, 0) * (1 - y)
            f = profile.increase if y else profile.decrease
            temps.append(profile_value(f, self.c[i]))
        t = len(self.trace.activity) + 1
        self.trace.activity.append((what, node))
        self.trace.c.append(list(self.c))
        self.trace.temp.append(temps)
        if busy is not None and temps[busy] > self.inst.B:
            self.trace.violations.append(
                TemperatureViolation(t, busy, temps[busy], self.inst.B)
            )

    def would_overheat(self, node: int) -> bool:
        return profile_value(self.inst.profile.increase, self.c[node] + 1) > self.inst.B


def simulate_timeline(sched: Schedule, inst: Instance) -> TimelineTrace:
    """Replay ``sched`` unit by unit and certify the temperature limit.

    Within a visit, a unit is processed whenever doing so keeps the node at
    or below B; otherwise one of the visit's declared waiting units is spent.
    When no declared waiting is left the unit is processed anyway and the
    overshoot is recorded as a violation. Leftover waiting is spent at the
    end of the visit. Gaps between visits are travel (or idling when the
    salesman stays at the same node).
    """
    trace = TimelineTrace(processed=[0] * inst.n)
    replay = _Replay(inst, trace)
    d = inst.d
    t = 0
    prev: Visit | None = None
    for idx, v in enumerate(sched.visits):
        if not 0 <= v.node < inst.n:
            trace.problems.append(f"visit {idx}: unknown node {v.node}")
            return trace
        if v.depart - v.arrive != v.process + v.wait:
            trace.problems.append(
                f"visit {idx}: departure - arrival = {v.depart - v.arrive} "
                f"!= process + wait = {v.process + v.wait}"
            )
        if v.process < 0 or v.wait < 0:
            trace.problems.append(f"visit {idx}: negative processing or waiting")
            return trace
        gap = v.arrive - t
        if prev is not None and prev.node != v.node and gap != d[prev.node][v.node]:
            trace.problems.append(
                f"visit {idx}: travel {prev.node}->{v.node} takes {gap}, "
                f"expected {d[prev.node][v.node]}"
            )
        if gap < 0:
            trace.problems.append(f"visit {idx}: arrives at {v.arrive} before t={t}")
            return trace
        moving = prev is not None and prev.node != v.node
        for _ in range(gap):
            replay.step(TRAVEL if moving else IDLE, None if moving else v.node)
        todo, waits = v.process, v.wait
        while todo > 0:
            if replay.would_overheat(v.node) and waits > 0:
                replay.step(WAIT, v.node)
                waits -= 1
            else:
                replay.step(PROCESS, v.node)
                todo -= 1
        for _ in range(waits):
            replay.step(WAIT, v.node)
        trace.processed[v.node] += v.process
        t = v.arrive + v.process + v.wait
        prev = v
    if prev is not None:
        start = sched.start if sched.start is not None else sched.visits[0].node
        for _ in range(d[prev.node][start]):
            replay.step(TRAVEL)
    trace.duration = len(trace.activity)
    if sched.visits:
        for i, (done, need) in enumerate(zip(trace.processed, inst.p)):
            if done != need:
                trace.problems.append(f"node {i}: processed {done} units, expected {need}")
    if trace.duration != sched.total:
        trace.problems.append(
            f"schedule claims total {sched.total}, replay took {trace.duration}"
        )
    return trace


def _replay_visit(c: list[int], node: int, amount: int, inst: Instance):
    # forced-wait visit on a counter tuple: returns (new counters, elapsed)
    f1 = inst.profile.increase
    cur = c[node]
    elapsed = 0
    while amount > 0:
        if profile_value(f1, cur + 1) <= inst.B:
            cur += 1
            amount -= 1
        else:
            cur = max(cur - 1, 0)
        elapsed += 1
    out = [max(x - elapsed, 0) for x in c]
    out[node] = cur
    return tuple(out), elapsed


BRUTE_FORCE_MAX_NODES = 4
BRUTE_FORCE_MAX_WORK = 12


def brute_force_optimum(
    inst: Instance,
    max_nodes: int = BRUTE_FORCE_MAX_NODES,
    max_work: int = BRUTE_FORCE_MAX_WORK,
) -> tuple[int, Schedule]:
    """Exact optimum over every split pattern and visit order.

    Enumerates all sequences of (node, amount) visits, i.e. every composition
    of each p_i into positive parts in every interleaving. Back-to-back
    visits to the same node are never generated because they behave exactly
    like one merged visit. Waiting happens only when the temperature forces
    it. The enumeration is memoized on (position, remaining work, counters),
    which makes it exhaustive without listing sequences one by one.
    """
    if inst.n > max_nodes or inst.total_processing > max_work:
        raise ValueError(
            f"brute force limited to n <= {max_nodes} and total work <= {max_work}"
        )
    n = inst.n
    d = inst.d

    @lru_cache(maxsize=None)
    def best_from(start: int, cur: int, remaining: tuple[int, ...], c: tuple[int, ...]):
        if not any(remaining):
            return d[cur][start], None
        # stays infinite at a dead end (work left only at the current node)
        best = (math.inf, None)
        for j in range(n):
            if j == cur or remaining[j] == 0:
                continue
            for amount in range(1, remaining[j] + 1):
                cost, rem, c_next = move(cur, remaining, c, j, amount)
                cost += best_from(start, j, rem, c_next)[0]
                if cost < best[0]:
                    best = (cost, (j, amount))
        return best

    def move(cur: int, remaining: tuple[int, ...], c: tuple[int, ...], j: int, amount: int):
        leg = d[cur][j] if cur >= 0 else 0
        c_next, elapsed = _replay_visit([max(x - leg, 0) for x in c], j, amount, inst)
        rem = list(remaining)
        rem[j] -= amount
        return leg + elapsed, tuple(rem), c_next

    zero = (0,) * n
    best_total, first = math.inf, None
    for s in range(n):
        for amount in range(1, inst.p[s] + 1):
            cost, rem, c_next = move(-1, inst.p, zero, s, amount)
            total = cost + best_from(s, s, rem, c_next)[0]
            if total < best_total:
                best_total, first = total, (s, amount)

    start = first[0]
    plan = [first]
    _, rem, c = move(-1, inst.p, zero, *first)
    cur = start
    while any(rem):
        j, amount = best_from(start, cur, rem, c)[1]
        plan.append((j, amount))
        _, rem, c = move(cur, rem, c, j, amount)
        cur = j
    return int(best_total), _plan_schedule(plan, inst)


def _plan_schedule(plan: list[tuple[int, int]], inst: Instance) -> Schedule:
    c = (0,) * inst.n
    t = 0
    visits = []
    prev = None
    for node, amount in plan:
        if prev is not None:
            leg = inst.d[prev][node]
            t += leg
            c = tuple(max(x - leg, 0) for x in c)
        c, elapsed = _replay_visit(list(c), node, amount, inst)
        visits.append(Visit(node, amount, elapsed - amount, t, t + elapsed))
        t += elapsed
        prev = node
    if not plan:
        return Schedule()
    t += inst.d[prev][plan[0][0]]
    return Schedule(tuple(visits), plan[0][0], t)


HELD_KARP_MAX_NODES = 15


def held_karp_tsp(inst_or_d: Instance | list[list[int]]) -> int:
    """Length of the shortest closed tour through every node (node 0 anchors)."""
    d = inst_or_d.d if isinstance(inst_or_d, Instance) else inst_or_d
    n = len(d)
    if n > HELD_KARP_MAX_NODES:
        raise ValueError(f"Held-Karp limited to n <= {HELD_KARP_MAX_NODES}")
    if n <= 1:
        return 0
    if n == 2:
        return d[0][1] + d[1][0]
    m = n - 1
    inf = float("inf")
    # cost[mask][j]: shortest path 0 -> ... -> j+1 covering exactly mask
    cost = [[inf] * m for _ in range(1 << m)]
    for j in range(m):
        cost[1 << j][j] = d[0][j + 1]
    for mask in range(1, 1 << m):
        row = cost[mask]
        for j in range(m):
            base = row[j]
            if base == inf or not mask & (1 << j):
                continue
            dj = d[j + 1]
            for k in range(m):
                if mask & (1 << k):
                    continue
                nxt = mask | (1 << k)
                val = base + dj[k + 1]
                if val < cost[nxt][k]:
                    cost[nxt][k] = val
    full = (1 << m) - 1
    return int(min(cost[full][j] + d[j + 1][0] for j in range(m)))

