"""Plain-text schedule files.

Layout: optional ``#`` comment lines, then a header ``n t rounds``, then one
line per comparator holding space-separated element ids, with a line
containing ``--`` between consecutive rounds.  Serialization preserves
assignment order, so write -> read round-trips losslessly.
"""

from __future__ import annotations

import io
from typing import Iterable

from .core import Batch, Schedule


def dumps_schedule(schedule: Schedule, comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for comment in comments:
        out.write(f"# {comment}\n")
    out.write(f"{schedule.n} {schedule.width} {schedule.num_rounds}\n")
    for r, batch in enumerate(schedule.rounds):
        if r > 0:
            out.write("--\n")
        for assignment in batch:
            out.write(" ".join(str(int(x)) for x in assignment))
            out.write("\n")
    return out.getvalue()


def loads_schedule(text: str) -> Schedule:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty schedule file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError(f"malformed header {lines[0]!r}; expected 'n t rounds'")
    n, width, num_rounds = (int(x) for x in header)
    round_lists: list[list[list[int]]] = [[]]
    for ln in lines[1:]:
        if ln == "--":
            round_lists.append([])
        else:
            round_lists[-1].append([int(x) for x in ln.split()])
    if num_rounds == 0:
        if round_lists != [[]]:
            raise ValueError("header declares 0 rounds but comparators are present")
        round_lists = []
    elif len(round_lists) != num_rounds:
        raise ValueError(
            f"header declares {num_rounds} rounds but file contains {len(round_lists)}"
        )
    return Schedule(n, width, [Batch.from_lists(rl) for rl in round_lists])


def write_schedule(schedule: Schedule, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_schedule(schedule, comments))


def read_schedule(path) -> Schedule:
    with open(path, "r", encoding="ascii") as fh:
        return loads_schedule(fh.read())
