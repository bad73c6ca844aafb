"""The three genotypes (1L, 2L, 3L), random construction and repair.

Node lists hold 0-based node indices. Repairs mutate the representation in
place and also return it, so they can be chained.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Union

from .temperature import Instance


class RepairError(RuntimeError):
    """A repair target is unreachable; an upstream invariant is broken."""


@dataclass
class OneList:
    nl: list[int]

    kind = "1L"

    def copy(self) -> "OneList":
        return OneList(list(self.nl))

    def to_dict(self) -> dict:
        return {"representation": self.kind, "nl": list(self.nl)}


@dataclass
class TwoList:
    nl: list[int]
    ptl: list[int]

    kind = "2L"
    ptl_floor = 0

    def copy(self) -> "TwoList":
        return TwoList(list(self.nl), list(self.ptl))

    def to_dict(self) -> dict:
        return {"representation": self.kind, "nl": list(self.nl), "ptl": list(self.ptl)}


@dataclass
class ThreeList:
    nl: list[int]
    ptl: list[int]
    sl: list[int] = field(default_factory=list)

    kind = "3L"
    ptl_floor = 1

    def copy(self) -> "ThreeList":
        return ThreeList(list(self.nl), list(self.ptl), list(self.sl))

    def to_dict(self) -> dict:
        return {
            "representation": self.kind,
            "nl": list(self.nl),
            "ptl": list(self.ptl),
            "sl": list(self.sl),
        }


Representation = Union[OneList, TwoList, ThreeList]
REPRESENTATIONS = ("1L", "2L", "3L")


def representation_from_dict(data: dict) -> Representation:
    kind = data.get("representation")
    if kind == "1L":
        return OneList(list(data["nl"]))
    if kind == "2L":
        return TwoList(list(data["nl"]), list(data["ptl"]))
    if kind == "3L":
        return ThreeList(list(data["nl"]), list(data["ptl"]), list(data["sl"]))
    raise ValueError(f"unknown representation {kind!r}")


def _positions(nl: list[int], n: int) -> list[list[int]]:
    pos: list[list[int]] = [[] for _ in range(n)]
    for k, node in enumerate(nl):
        pos[node].append(k)
    return pos


def random_composition(total: int, parts: int, rng: random.Random) -> list[int]:
    """Uniformly random composition of ``total`` into ``parts`` positive ints."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0, *cuts, total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_one_list(inst: Instance, rng: random.Random) -> OneList:
    nl = [i for i, s in enumerate(inst.splits()) for _ in range(s)]
    rng.shuffle(nl)
    return OneList(nl)


def random_two_list(inst: Instance, rng: random.Random) -> TwoList:
    nl = [i for i, pi in enumerate(inst.p) for _ in range(pi)]
    rng.shuffle(nl)
    ptl = [0] * len(nl)
    for i, occ in enumerate(_positions(nl, inst.n)):
        # each unit of work lands on a uniformly chosen occurrence
        for _ in range(inst.p[i]):
            ptl[rng.choice(occ)] += 1
    return TwoList(nl, ptl)


def random_three_list(inst: Instance, rng: random.Random) -> ThreeList:
    sl = [rng.randint(1, pi) for pi in inst.p]
    nl = [i for i, s in enumerate(sl) for _ in range(s)]
    rng.shuffle(nl)
    ptl = [0] * len(nl)
    for i, occ in enumerate(_positions(nl, inst.n)):
        for k, amount in zip(occ, random_composition(inst.p[i], sl[i], rng)):
            ptl[k] = amount
    return ThreeList(nl, ptl, sl)


RANDOM_CONSTRUCTORS = {
    "1L": random_one_list,
    "2L": random_two_list,
    "3L": random_three_list,
}


def random_representation(kind: str, inst: Instance, rng: random.Random) -> Representation:
    try:
        return RANDOM_CONSTRUCTORS[kind](inst, rng)
    except KeyError:
        raise ValueError(f"unknown representation {kind!r}") from None


def repair_ptl(rep: TwoList | ThreeList, inst: Instance, rng: random.Random):
    """Repair 1: nudge ptl entries by one unit until every node sums to p_i.

    Entries never drop below the representation's floor (0 for 2L, 1 for 3L).
    """
    floor = rep.ptl_floor
    ptl = rep.ptl
    for i, occ in enumerate(_positions(rep.nl, inst.n)):
        target = inst.p[i]
        diff = sum(ptl[k] for k in occ) - target
        if diff == 0:
            continue
        if not occ or floor * len(occ) > target:
            raise RepairError(
                f"node {i}: cannot reach sum {target} with {len(occ)} occurrences"
            )
        while diff < 0:
            ptl[rng.choice(occ)] += 1
            diff += 1
        while diff > 0:
            above = [k for k in occ if ptl[k] > floor]
            k = rng.choice(above)
            ptl[k] -= 1
            diff -= 1
    return rep


def repair_splits(rep: ThreeList, inst: Instance, rng: random.Random) -> ThreeList:
    """Repair 2: add or drop nl/ptl occurrences so node i occurs sl[i] times.

    The split list itself is never changed. Per-node sums are restored with
    :func:`repair_ptl` at the end.
    """
    nl, ptl, sl = rep.nl, rep.ptl, rep.sl
    for i in range(inst.n):
        occ = [k for k, node in enumerate(nl) if node == i]
        extra = len(occ) - sl[i]
        if extra > 0:
            drop = set(rng.sample(occ, extra))
            survivors = [k for k in occ if k not in drop]
            for k in sorted(drop):
                ptl[rng.choice(survivors)] += ptl[k]
            keep = [k for k in range(len(nl)) if k not in drop]
            nl[:] = [nl[k] for k in keep]
            ptl[:] = [ptl[k] for k in keep]
        elif extra < 0:
            for _ in range(-extra):
                donors = [k for k in occ if ptl[k] > 1]
                if donors:
                    ptl[rng.choice(donors)] -= 1
                pos = rng.randint(0, len(nl))
                nl.insert(pos, i)
                ptl.insert(pos, 1)
                occ = [k + (k >= pos) for k in occ]
                occ.append(pos)
    return repair_ptl(rep, inst, rng)


def check_valid(rep: Representation, inst: Instance) -> list[str]:
    """Return every invariant violation of ``rep`` on ``inst``."""
    problems: list[str] = []
    n = inst.n
    bad_nodes = [x for x in rep.nl if not (isinstance(x, int) and 0 <= x < n)]
    if bad_nodes:
        return [f"nl contains unknown nodes {sorted(set(map(str, bad_nodes)))}"]
    counts = Counter(rep.nl)

    if isinstance(rep, OneList):
        for i, need in enumerate(inst.splits()):
            if counts[i] != need:
                problems.append(f"node {i}: occurs {counts[i]} times in nl, expected {need}")
        return problems

    if len(rep.nl) != len(rep.ptl):
        problems.append(f"nl has length {len(rep.nl)} but ptl has length {len(rep.ptl)}")
        return problems

    if isinstance(rep, TwoList):
        expected_counts = list(inst.p)
        if len(rep.nl) != inst.total_processing:
            problems.append(
                f"list length {len(rep.nl)} != total processing {inst.total_processing}"
            )
    else:
        if len(rep.sl) != n:
            problems.append(f"sl has length {len(rep.sl)}, expected {n}")
            return problems
        expected_counts = list(rep.sl)
        for i, s in enumerate(rep.sl):
            if not 1 <= s <= inst.p[i]:
                problems.append(f"node {i}: sl={s} outside [1, {inst.p[i]}]")

    floor = rep.ptl_floor
    sums = [0] * n
    for k, (node, amount) in enumerate(zip(rep.nl, rep.ptl)):
        if amount < floor:
            problems.append(f"node {node}: ptl[{k}]={amount} below {floor}")
        sums[node] += amount
    for i in range(n):
        if counts[i] != expected_counts[i]:
            problems.append(
                f"node {i}: occurs {counts[i]} times in nl, expected {expected_counts[i]}"
            )
        if sums[i] != inst.p[i]:
            problems.append(f"node {i}: ptl sums to {sums[i]}, expected {inst.p[i]}")
    return problems
