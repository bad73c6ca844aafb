"""Solution files: a representation plus its objective and decoded schedule."""

from __future__ import annotations

import json
from pathlib import Path

from .evaluator import ObjectiveBreakdown, Schedule, evaluate
from .oracle import simulate_timeline
from .representations import Representation, check_valid, representation_from_dict
from .temperature import Instance, ProfilePair


def solution_to_dict(rep: Representation, inst: Instance, **meta) -> dict:
    schedule, breakdown = evaluate(rep, inst)
    data = rep.to_dict()
    data["objective"] = breakdown.to_dict()
    data["profile"] = inst.profile.to_dict()
    data.update(meta)
    data["schedule"] = schedule.to_dict()
    return data


def write_solution(data: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def read_solution(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def solution_profile(data: dict) -> ProfilePair | None:
    if "profile" in data:
        return ProfilePair.from_dict(data["profile"])
    return None


def verify_solution(inst: Instance, data: dict) -> list[str]:
    """All problems found when re-decoding and replaying a solution file.

    The representation is re-evaluated and replayed by the time-step
    simulator. A stored schedule, if present, is replayed as written, so a
    hand-edited schedule is checked on its own terms.
    """
    try:
        rep = representation_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        return [f"unreadable representation: {exc}"]
    problems = check_valid(rep, inst)
    claimed = None
    if "objective" in data:
        try:
            claimed = ObjectiveBreakdown.from_dict(data["objective"])
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"unreadable objective: {exc}")
    if not problems:
        schedule, breakdown = evaluate(rep, inst)
        trace = simulate_timeline(schedule, inst)
        problems += trace.report()
        if claimed is not None and claimed != breakdown:
            problems.append(
                f"objective mismatch: file says {claimed.to_dict()}, "
                f"re-evaluation gives {breakdown.to_dict()}"
            )
    if "schedule" in data:
        try:
            stored = Schedule.from_dict(data["schedule"])
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"unreadable schedule: {exc}")
        else:
            problems += [f"schedule: {p}" for p in simulate_timeline(stored, inst).report()]
            if claimed is not None and stored.total != claimed.total:
                problems.append(
                    f"schedule total {stored.total} != objective total {claimed.total}"
                )
    return problems
