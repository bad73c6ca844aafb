"""Benchmark harness: run every (instance, representation, profile) cell."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .evaluator import evaluate
from .ga import GAParams, run
from .instances import derive_seed, read_instance
from .oracle import simulate_timeline
from .temperature import ProfilePair

RUN_FIELDS = [
    "instance", "repr", "profile", "seed", "total", "processing",
    "travel", "waiting", "evaluations", "status", "error",
]
SUMMARY_FIELDS = ["repr", "profile", "AvDur", "mean_travel", "mean_wait", "n_instances"]


@dataclass(frozen=True)
class Cell:
    instance: str
    representation: str
    profile: ProfilePair
    params: GAParams


def cell_seed(master_seed: int, instance: str, representation: str) -> int:
    # profiles share a seed so they are compared on common random numbers
    return derive_seed(master_seed, Path(instance).name, representation) % (2**63)


def run_cell(cell: Cell) -> dict:
    row = {
        "instance": Path(cell.instance).name,
        "repr": cell.representation,
        "profile": cell.profile.label,
        "seed": cell.params.seed,
        "status": "ok",
        "error": "",
    }
    try:
        inst = read_instance(cell.instance).with_profile(cell.profile)
        result = run(inst, cell.params)
        schedule, breakdown = evaluate(result.best.rep, inst)
        trace = simulate_timeline(schedule, inst)
        if not trace.ok or trace.duration != breakdown.total:
            raise RuntimeError("; ".join(trace.report()) or "oracle total mismatch")
        row.update(
            total=breakdown.total,
            processing=breakdown.processing,
            travel=breakdown.travel,
            waiting=breakdown.waiting,
            evaluations=result.evaluations,
        )
    except Exception as exc:  # recorded per cell, reported by exit status
        row.update(status="failed", error=f"{type(exc).__name__}: {exc}")
    return row


def make_cells(
    instances: Sequence[str | Path],
    representations: Sequence[str],
    profiles: Sequence[ProfilePair],
    master_seed: int,
    **overrides,
) -> list[Cell]:
    """One cell per (instance, representation, profile); ``overrides`` go to GAParams."""
    cells = []
    for path in instances:
        for rep in representations:
            seed = cell_seed(master_seed, str(path), rep)
            params = GAParams(representation=rep, seed=seed, **overrides)
            for profile in profiles:
                cells.append(Cell(str(path), rep, profile, params))
    return cells


def run_cells(cells: Sequence[Cell], workers: int = 1) -> list[dict]:
    if workers <= 1:
        return [run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, cells, chunksize=1))


def summarize(rows: Iterable[dict]) -> list[dict]:
    """Mean duration per (repr, profile) over completed runs, in first-seen order."""
    groups: dict[tuple[str, str], list[dict]] = {}
    for row in rows:
        key = (row["repr"], row["profile"])
        groups.setdefault(key, [])
        if row["status"] == "ok":
            groups[key].append(row)
    summary = []
    for (rep, profile), done in groups.items():
        k = len(done)

        def mean(field: str) -> str:
            return f"{sum(float(r[field]) for r in done) / k:.2f}" if k else ""

        summary.append({
            "repr": rep,
            "profile": profile,
            "AvDur": mean("total"),
            "mean_travel": mean("travel"),
            "mean_wait": mean("waiting"),
            "n_instances": k,
        })
    return summary


def to_csv(rows: Iterable[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def read_csv(path: str | Path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
