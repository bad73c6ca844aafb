"""Genetic algorithm with elite selection over the 1L, 2L and 3L genotypes.

Each generation breeds exactly |P| - |R| offspring. The next population keeps
the |R| best individuals of the previous one and fills the rest with the best
offspring. The population list is always kept sorted by total duration
(stable, so ties favour the earlier individual); the elite set R is its
prefix.
"""

from __future__ import annotations

import csv
import io
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .evaluator import ObjectiveBreakdown, evaluate
from .representations import (
    OneList,
    Representation,
    ThreeList,
    TwoList,
    random_representation,
    repair_ptl,
    repair_splits,
)
from .temperature import Instance

DEFAULT_RATES = {
    "1L": {"m_nl": 0.90, "m_ptl": 0.0, "m_sl": 0.0},
    "2L": {"m_nl": 0.90, "m_ptl": 0.05, "m_sl": 0.0},
    "3L": {"m_nl": 0.10, "m_ptl": 0.02, "m_sl": 0.01},
}


@dataclass
class GAParams:
    representation: str = "1L"
    population_size: int = 50
    elite_size: int = 5
    m_nl: float | None = None
    m_ptl: float | None = None
    m_sl: float | None = None
    budget: int = 5000
    seed: int | None = 0

    def __post_init__(self) -> None:
        if self.representation not in DEFAULT_RATES:
            raise ValueError(f"unknown representation {self.representation!r}")
        for name, value in DEFAULT_RATES[self.representation].items():
            if getattr(self, name) is None:
                setattr(self, name, value)
        if not 0 < self.elite_size < self.population_size:
            raise ValueError("need 0 < elite_size < population_size")
        if self.population_size < 4:
            raise ValueError("four-way tournament needs population_size >= 4")
        for name in ("m_nl", "m_ptl", "m_sl"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.budget < self.population_size:
            raise ValueError("budget must cover the initial population")

    @classmethod
    def from_dict(cls, data: dict) -> "GAParams":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown GA parameters: {', '.join(sorted(unknown))}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Individual:
    rep: Representation
    objective: ObjectiveBreakdown

    @property
    def total(self) -> int:
        return self.objective.total


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    evaluations: int
    best: int
    mean: float


@dataclass
class GAResult:
    best: Individual
    history: list[GenerationStats] = field(default_factory=list)
    evaluations: int = 0

    def log_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["generation", "evaluations", "best_total", "mean_total"])
        for s in self.history:
            writer.writerow([s.generation, s.evaluations, s.best, f"{s.mean:.4f}"])
        return buf.getvalue()


# -- crossover ---------------------------------------------------------------


def _splice(
    head: Sequence[int], tail: Sequence[int], point: int, quota: Sequence[int]
) -> list[tuple[int, int]]:
    """Prefix of ``head`` followed by the unused occurrences of ``tail``.

    Occurrences are matched by rank: if the prefix already holds the first m
    occurrences of node i, the first m occurrences of i in ``tail`` are
    skipped. No more than ``quota[i]`` copies of node i are ever taken.
    Returns ``(parent, index)`` picks, parent 0 being ``head``.
    """
    picks: list[tuple[int, int]] = []
    taken = [0] * len(quota)
    for k, node in enumerate(head[:point]):
        if taken[node] < quota[node]:
            picks.append((0, k))
            taken[node] += 1
    in_prefix = list(taken)
    seen = [0] * len(quota)
    for k, node in enumerate(tail):
        seen[node] += 1
        if seen[node] > in_prefix[node] and taken[node] < quota[node]:
            picks.append((1, k))
            taken[node] += 1
    return picks


def _quota(nl: Sequence[int], n: int) -> list[int]:
    counts = Counter(nl)
    return [counts[i] for i in range(n)]


def crossover_nl(
    p1: Sequence[int], p2: Sequence[int], point: int, quota: Sequence[int] | None = None
) -> list[int]:
    """One-point crossover on node lists sharing the same multiset."""
    if quota is None:
        quota = _quota(p1, max(p1, default=-1) + 1)
    lists = (p1, p2)
    return [lists[w][k] for w, k in _splice(p1, p2, point, quota)]


def _splice_pair(a, b, point: int, quota) -> tuple[list[int], list[int]]:
    # ptl values travel with the occurrence they belong to
    picks = _splice(a.nl, b.nl, point, quota)
    parents = (a, b)
    nl = [parents[w].nl[k] for w, k in picks]
    ptl = [parents[w].ptl[k] for w, k in picks]
    return nl, ptl


def crossover_1l(p1: OneList, p2: OneList, inst: Instance, rng: random.Random) -> tuple[OneList, OneList]:
    point = rng.randint(0, len(p1.nl))
    quota = _quota(p1.nl, inst.n)
    return (
        OneList(crossover_nl(p1.nl, p2.nl, point, quota)),
        OneList(crossover_nl(p2.nl, p1.nl, point, quota)),
    )


def crossover_2l(p1: TwoList, p2: TwoList, inst: Instance, rng: random.Random) -> tuple[TwoList, TwoList]:
    point = rng.randint(0, len(p1.nl))
    quota = list(inst.p)
    children = []
    for a, b in ((p1, p2), (p2, p1)):
        child = TwoList(*_splice_pair(a, b, point, quota))
        children.append(repair_ptl(child, inst, rng))
    return children[0], children[1]


def crossover_3l(p1: ThreeList, p2: ThreeList, inst: Instance, rng: random.Random) -> tuple[ThreeList, ThreeList]:
    """Split lists are cut at their own point; nl/ptl at one shared fraction.

    The fraction is applied to the length of the parent supplying the prefix,
    so parents with different list lengths are cut proportionally.
    """
    sl_point = rng.randint(0, inst.n)
    frac = rng.random()
    children = []
    for a, b in ((p1, p2), (p2, p1)):
        sl = a.sl[:sl_point] + b.sl[sl_point:]
        point = round(frac * len(a.nl))
        nl, ptl = _splice_pair(a, b, point, sl)
        children.append(repair_splits(ThreeList(nl, ptl, sl), inst, rng))
    return children[0], children[1]


# -- mutation ----------------------------------------------------------------


def mutate_nl(rep: Representation, rate: float, rng: random.Random) -> Representation:
    """Swap two positions with probability ``rate``; ptl entries move along."""
    nl = rep.nl
    if rng.random() < rate and len(nl) >= 2:
        i, j = rng.sample(range(len(nl)), 2)
        nl[i], nl[j] = nl[j], nl[i]
        if not isinstance(rep, OneList):
            ptl = rep.ptl
            ptl[i], ptl[j] = ptl[j], ptl[i]
    return rep


def _different(lo: int, hi: int, old: int, rng: random.Random) -> int:
    value = rng.randint(lo, hi - 1)
    return value + 1 if value >= old else value


def mutate_ptl(rep: TwoList | ThreeList, rate: float, inst: Instance, rng: random.Random):
    occ: list[list[int]] = [[] for _ in range(inst.n)]
    for k, node in enumerate(rep.nl):
        occ[node].append(k)
    lo = rep.ptl_floor
    changed = False
    for i in range(inst.n):
        if rng.random() >= rate or not occ[i] or inst.p[i] <= lo:
            continue
        k = rng.choice(occ[i])
        rep.ptl[k] = _different(lo, inst.p[i], rep.ptl[k], rng)
        changed = True
    if changed:
        repair_ptl(rep, inst, rng)
    return rep


def mutate_sl(rep: ThreeList, rate: float, inst: Instance, rng: random.Random) -> ThreeList:
    changed = False
    for i in range(inst.n):
        if rng.random() >= rate or inst.p[i] <= 1:
            continue
        rep.sl[i] = _different(1, inst.p[i], rep.sl[i], rng)
        changed = True
    if changed:
        repair_splits(rep, inst, rng)
    return rep


# -- population ----------------------------------------------------------------


def select_parents(pop: list[Individual], elite_size: int, rng: random.Random) -> tuple[Individual, Individual]:
    """Four-way tournament for the first parent, uniform elite for the second."""
    contenders = rng.sample(range(len(pop)), 4)
    first = min(contenders, key=lambda k: pop[k].total)
    return pop[first], pop[rng.randrange(elite_size)]


def _rank(individuals: list[Individual]) -> list[Individual]:
    return sorted(individuals, key=lambda ind: ind.total)


def update_population(pop: list[Individual], offspring: list[Individual], elite_size: int) -> list[Individual]:
    """Keep the |R| best of ``pop`` and fill up with the best offspring.

    A short batch (budget exhausted mid-generation) is topped up with the
    next-best survivors of ``pop`` so the population size is preserved.
    """
    ranked = _rank(pop)
    size = len(pop)
    fill = _rank(offspring)[: size - elite_size]
    if len(fill) < size - elite_size:
        fill = _rank(fill + ranked[elite_size:])[: size - elite_size]
    return _rank(ranked[:elite_size] + fill)


def _breed(p1: Individual, p2: Individual, inst: Instance, params: GAParams, rng: random.Random):
    kind = params.representation
    if kind == "1L":
        children = crossover_1l(p1.rep, p2.rep, inst, rng)
    elif kind == "2L":
        children = crossover_2l(p1.rep, p2.rep, inst, rng)
    else:
        children = crossover_3l(p1.rep, p2.rep, inst, rng)
    return children


def _mutate(child: Representation, inst: Instance, params: GAParams, rng: random.Random) -> Representation:
    mutate_nl(child, params.m_nl, rng)
    if isinstance(child, (TwoList, ThreeList)):
        mutate_ptl(child, params.m_ptl, inst, rng)
    if isinstance(child, ThreeList):
        mutate_sl(child, params.m_sl, inst, rng)
    return child


def _stats(generation: int, evaluations: int, pop: list[Individual]) -> GenerationStats:
    totals = [ind.total for ind in pop]
    return GenerationStats(generation, evaluations, min(totals), sum(totals) / len(totals))


def run(
    inst: Instance,
    params: GAParams,
    on_evaluate: Callable[[Individual], None] | None = None,
) -> GAResult:
    """Run the GA until ``params.budget`` candidate evaluations are spent."""
    rng = random.Random(params.seed)
    evaluations = 0

    def assess(rep: Representation) -> Individual:
        nonlocal evaluations
        evaluations += 1
        ind = Individual(rep, evaluate(rep, inst)[1])
        if on_evaluate is not None:
            on_evaluate(ind)
        return ind

    pop = _rank(
        [assess(random_representation(params.representation, inst, rng))
         for _ in range(params.population_size)]
    )
    history = [_stats(0, evaluations, pop)]
    batch_size = params.population_size - params.elite_size
    generation = 0
    while evaluations < params.budget:
        generation += 1
        offspring: list[Individual] = []
        while len(offspring) < batch_size and evaluations < params.budget:
            p1, p2 = select_parents(pop, params.elite_size, rng)
            for child in _breed(p1, p2, inst, params, rng):
                if len(offspring) >= batch_size or evaluations >= params.budget:
                    break
                offspring.append(assess(_mutate(child, inst, params, rng)))
        pop = update_population(pop, offspring, params.elite_size)
        history.append(_stats(generation, evaluations, pop))
    return GAResult(pop[0], history, evaluations)
