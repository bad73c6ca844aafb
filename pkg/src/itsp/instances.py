"""Benchmark instance generation, metric closure and JSON (de)serialization."""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .temperature import Instance, ProfilePair, validate_instance


class InstanceFileError(ValueError):
    """Base class for unreadable instance files."""


class InstanceParseError(InstanceFileError):
    pass


class InstanceSchemaError(InstanceFileError):
    pass


class InstanceValidationError(InstanceFileError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class GridCell:
    n: int
    p_range: tuple[int, int]
    d_range: tuple[int, int]
    B: int

    @property
    def label(self) -> str:
        return (
            f"n{self.n}_p{self.p_range[0]}-{self.p_range[1]}"
            f"_d{self.d_range[0]}-{self.d_range[1]}_B{self.B}"
        )


@dataclass(frozen=True)
class GenConfig:
    nodes: tuple[int, ...] = (10, 50)
    p_ranges: tuple[tuple[int, int], ...] = ((10, 20), (10, 100))
    d_ranges: tuple[tuple[int, int], ...] = ((10, 20), (10, 100))
    B_values: tuple[int, ...] = (20, 40, 60, 80, 100)
    variations: int = 10
    master_seed: int = 0

    def cells(self) -> list[GridCell]:
        return [
            GridCell(n, p, dr, B)
            for n, p, dr, B in itertools.product(
                self.nodes, self.p_ranges, self.d_ranges, self.B_values
            )
        ]

    def __len__(self) -> int:
        return len(self.cells()) * self.variations


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from arbitrary parts (independent of PYTHONHASHSEED)."""
    digest = hashlib.sha256(":".join(map(str, parts)).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def metric_closure(d) -> list[list[int]]:
    """All-pairs shortest path lengths (Floyd-Warshall)."""
    m = np.array(d, dtype=np.int64)
    for k in range(m.shape[0]):
        np.minimum(m, m[:, k, None] + m[None, k, :], out=m)
    return m.tolist()


def generate_instance(
    cell: GridCell,
    variation: int,
    master_seed: int,
    profile: ProfilePair | None = None,
) -> Instance:
    rng = random.Random(derive_seed(master_seed, cell.label, variation))
    n = cell.n
    p = [rng.randint(*cell.p_range) for _ in range(n)]
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(*cell.d_range)
    return Instance(p, metric_closure(d), cell.B, profile or ProfilePair())


def instance_filename(cell: GridCell, variation: int) -> str:
    return f"itsp_{cell.label}_v{variation}.json"


def generate_suite(config: GenConfig, profile: ProfilePair | None = None) -> Iterator[tuple[str, Instance]]:
    for cell in config.cells():
        for v in range(config.variations):
            yield instance_filename(cell, v), generate_instance(cell, v, config.master_seed, profile)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(inst.to_dict()) + "\n"


def write_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps_instance(inst), encoding="utf-8")


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise InstanceSchemaError(f"{what} must be a list of integers")
    return value


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"malformed instance JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceSchemaError("instance must be a JSON object")
    missing = [k for k in ("n", "p", "d", "B", "profile") if k not in data]
    if missing:
        raise InstanceSchemaError(f"missing keys: {', '.join(missing)}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceSchemaError("n must be an integer")
    p = _int_list(data["p"], "p")
    if not isinstance(data["d"], list):
        raise InstanceSchemaError("d must be a list of lists")
    d = [_int_list(row, "each row of d") for row in data["d"]]
    if len(p) != n or len(d) != n or any(len(row) != n for row in d):
        raise InstanceSchemaError(f"p and d must have n={n} entries per dimension")
    B = data["B"]
    if not isinstance(B, (int, float)) or isinstance(B, bool):
        raise InstanceSchemaError("B must be a number")
    try:
        profile = ProfilePair.from_dict(data["profile"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceSchemaError(
            f"profile must be {{'increase': L|Q|E, 'decrease': L|Q|E}}: {exc}"
        ) from exc
    inst = Instance(p, d, B, profile)
    problems = validate_instance(inst)
    if problems:
        raise InstanceValidationError(problems)
    return inst


def read_instance(path: str | Path) -> Instance:
    return loads_instance(Path(path).read_text(encoding="utf-8"))

