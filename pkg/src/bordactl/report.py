"""Deterministic run reports.

A report renders as a flat block of `key<TAB>value` lines so golden-file
comparisons are language-agnostic.  Everything in the block is part of
the byte-stability contract except the `stat.*` counters and
`wallclock_ms`, which depend on the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .election import Election, WinnerModel, score_str, total_scores, winners_of_totals


@dataclass
class RunReport:
    command: str
    exit_code: int
    feasible: bool | None = None
    solution: list[str] | None = None
    lines: list[tuple[str, str]] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)
    wallclock_ms: int = 0

    def render(self) -> str:
        rows = [("command", self.command)] + list(self.lines)
        rows += [(f"stat.{k}", str(v)) for k, v in sorted(self.stats.items())]
        rows.append(("wallclock_ms", str(self.wallclock_ms)))
        return "\n".join(f"{k}\t{v}" for k, v in rows) + "\n"


def score_table(e: Election, prefix: str) -> list[tuple[str, str]]:
    totals = total_scores(e)
    return [(f"{prefix}.{e.labels[c]}", score_str(totals[c])) for c in sorted(e.active)]


def winner_lines(e: Election, prefix: str) -> list[tuple[str, str]]:
    totals = total_scores(e)
    rows = []
    for model in (WinnerModel.UNIQUE, WinnerModel.COWINNER):
        won = winners_of_totals(totals, model)
        value = " ".join(e.labels[c] for c in sorted(won)) if won else "-"
        rows.append((f"{prefix}_{model.value}", value))
    return rows
