"""Node temperature model: profile functions, counter semantics and instances.

A node's thermal state is a single integer counter ``c``: processing one time
unit raises it by one, any other time unit (travel, waiting, working
elsewhere) lowers it by one, never below zero. The temperature is the
profile function applied to the counter, using the increase profile while
the node is being processed and the decrease profile otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence


class ProfileKind(str, Enum):
    LINEAR = "L"
    QUADRATIC = "Q"
    EXPONENTIAL = "E"

    def __call__(self, c: int) -> float:
        return profile_value(self, c)


@dataclass(frozen=True)
class ProfilePair:
    increase: ProfileKind = ProfileKind.LINEAR
    decrease: ProfileKind = ProfileKind.LINEAR

    def __post_init__(self) -> None:
        object.__setattr__(self, "increase", ProfileKind(self.increase))
        object.__setattr__(self, "decrease", ProfileKind(self.decrease))

    @classmethod
    def same(cls, kind: ProfileKind | str) -> "ProfilePair":
        kind = ProfileKind(kind)
        return cls(kind, kind)

    def to_dict(self) -> dict[str, str]:
        return {"increase": self.increase.value, "decrease": self.decrease.value}

    @classmethod
    def from_dict(cls, data: dict) -> "ProfilePair":
        return cls(ProfileKind(data["increase"]), ProfileKind(data["decrease"]))

    @property
    def label(self) -> str:
        if self.increase is self.decrease:
            return self.increase.value
        return f"{self.increase.value}{self.decrease.value}"


class UnprocessableNodeError(ValueError):
    """Raised when B is below the temperature of a single processed unit."""


def profile_value(kind: ProfileKind, c: int) -> float:
    """Temperature for counter ``c``; exact ints for L and Q, a float for E."""
    if kind is ProfileKind.LINEAR:
        return c
    if kind is ProfileKind.QUADRATIC:
        return c * c
    if kind is ProfileKind.EXPONENTIAL:
        return math.exp(c)
    raise ValueError(f"unknown profile {kind!r}")


def max_consecutive(kind: ProfileKind, B: float) -> int:
    """Largest k with ``profile_value(kind, k) <= B``.

    The closed-form inverse only gives a starting guess; the result is
    confirmed by evaluating the profile directly on both sides.
    """
    kind = ProfileKind(kind)
    if profile_value(kind, 1) > B:
        raise UnprocessableNodeError(
            f"B={B} is below f(1)={profile_value(kind, 1)} for profile {kind.value}"
        )
    if kind is ProfileKind.LINEAR:
        k = math.floor(B)
    elif kind is ProfileKind.QUADRATIC:
        k = math.isqrt(math.floor(B))
    else:
        k = math.floor(math.log(B))
    while profile_value(kind, k + 1) <= B:
        k += 1
    while k > 1 and profile_value(kind, k) > B:
        k -= 1
    return k


def max_splits(p: int, kind: ProfileKind, B: float) -> int:
    """Number of visits a greedy plan needs to finish ``p`` units."""
    k = max_consecutive(kind, B)
    return -(-p // k)


def decay(c: int, elapsed: int) -> int:
    """Counter after ``elapsed`` time units without processing."""
    return max(c - elapsed, 0)


@dataclass(frozen=True)
class Instance:
    p: tuple[int, ...]
    d: tuple[tuple[int, ...], ...]
    B: float
    profile: ProfilePair = field(default_factory=ProfilePair)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        object.__setattr__(self, "d", tuple(tuple(int(x) for x in row) for row in self.d))

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def total_processing(self) -> int:
        return sum(self.p)

    @property
    def max_consecutive(self) -> int:
        return max_consecutive(self.profile.increase, self.B)

    def splits(self) -> list[int]:
        return [max_splits(pi, self.profile.increase, self.B) for pi in self.p]

    def with_profile(self, profile: ProfilePair | ProfileKind | str) -> "Instance":
        if not isinstance(profile, ProfilePair):
            profile = ProfilePair.same(profile)
        return replace(self, profile=profile)

    def to_dict(self) -> dict:
        B = int(self.B) if float(self.B).is_integer() else self.B
        return {
            "n": self.n,
            "p": list(self.p),
            "d": [list(row) for row in self.d],
            "B": B,
            "profile": self.profile.to_dict(),
        }


def validate_instance(inst: Instance) -> list[str]:
    """Return every violated instance invariant; an empty list means valid."""
    problems: list[str] = []
    n = inst.n
    if n < 1:
        problems.append("instance has no nodes")
    for i, pi in enumerate(inst.p):
        if pi < 1:
            problems.append(f"processing time p[{i}]={pi} must be >= 1")
    d = inst.d
    if len(d) != n or any(len(row) != n for row in d):
        problems.append(f"distance matrix must be {n}x{n}")
        return problems
    for i in range(n):
        if d[i][i] != 0:
            problems.append(f"nonzero diagonal d[{i}][{i}]={d[i][i]}")
        for j in range(n):
            if d[i][j] < 0:
                problems.append(f"negative distance d[{i}][{j}]={d[i][j]}")
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                problems.append(
                    f"asymmetric distance d[{i}][{j}]={d[i][j]} != d[{j}][{i}]={d[j][i]}"
                )
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            di = d[i]
            for j in range(n):
                if di[j] > dik + dk[j]:
                    problems.append(
                        f"triangle inequality violated: d[{i}][{j}]={di[j]} > "
                        f"d[{i}][{k}]+d[{k}][{j}]={dik + dk[j]}"
                    )
    f1 = profile_value(inst.profile.increase, 1)
    if inst.B < f1:
        problems.append(f"unprocessable nodes: B={inst.B} < f1(1)={f1}")
    return problems


def thermal_step(c: int, processing: bool) -> int:
    """One time unit of the counter recurrence."""
    return c + 1 if processing else max(c - 1, 0)


def temperature(profile: ProfilePair, c: int, processing: bool) -> float:
    kind = profile.increase if processing else profile.decrease
    return profile_value(kind, c)


def as_profile_pair(value: ProfilePair | ProfileKind | str | Sequence[str]) -> ProfilePair:
    if isinstance(value, ProfilePair):
        return value
    if isinstance(value, (list, tuple)):
        return ProfilePair(ProfileKind(value[0]), ProfileKind(value[1]))
    return ProfilePair.same(value)
