"""Ground-truth exhaustive solvers for the control problems.

Subsets of the legal pool are enumerated by increasing size and then
lexicographically by sorted indices, so the returned solution is always
the minimum-cardinality, lexicographically least one.  These solvers are
meant for desk-scale verification; a hard cap on examined subsets guards
against accidental blow-ups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .control import VOTE_KINDS, ControlInstance, ControlKind, expand_votes
from .election import (
    Rule,
    WinnerModel,
    project_ranking,
    total_scores,
    vote_score_deltas,
)

DEFAULT_SUBSET_CAP = 1 << 24


class SearchBudgetExceeded(RuntimeError):
    """The exhaustive search hit its subset-examination cap."""


@dataclass
class SolveResult:
    """Outcome record shared by the exact solvers."""

    solution: frozenset[int] | None
    solver: str
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def _wins(totals: dict[int, int], p: int, model: WinnerModel) -> bool:
    best = max(totals.values())
    if totals[p] != best:
        return False
    if model is WinnerModel.UNIQUE:
        return sum(1 for s in totals.values() if s == best) == 1
    return True


def _vote_contribution(ranking: tuple[int, ...], m: int, rule: Rule) -> tuple[int, dict[int, int]]:
    return vote_score_deltas(ranking, m, rule)


def _totals_with_votes(
    base: dict[int, int],
    contribs: list[tuple[int, dict[int, int]]],
    picks: tuple[int, ...],
    sign: int,
) -> dict[int, int]:
    totals = dict(base)
    for i in picks:
        unranked, ranked = contribs[i]
        if unranked:
            for c in totals:
                totals[c] += sign * unranked
        for c, s in ranked.items():
            totals[c] += sign * (s - unranked)
    return totals


def _candidate_control_totals(inst: ControlInstance, active: frozenset[int]) -> dict[int, int]:
    m = len(active)
    totals = dict.fromkeys(active, 0)
    for vote in inst.base.votes:
        ranking = project_ranking(vote.ranking, active)
        unranked, ranked = vote_score_deltas(ranking, m, inst.base.rule)
        if unranked:
            for c in totals:
                totals[c] += unranked * vote.multiplicity
        for c, s in ranked.items():
            totals[c] += (s - unranked) * vote.multiplicity
    return totals


def _group_offsets(inst: ControlInstance) -> list[int]:
    """offset-within-group for every expanded ballot index."""
    offsets: list[int] = []
    for vote in inst.base.votes:
        offsets.extend(range(vote.multiplicity))
    return offsets


def solve_control_bruteforce(
    inst: ControlInstance, *, subset_cap: int = DEFAULT_SUBSET_CAP
) -> SolveResult:
    """Exhaustively solve any of the four control kinds.

    For vote deletion, subsets that take a non-prefix slice of a group of
    identical ballots are skipped: deleting any j copies of a group is
    equivalent, and the prefix choice is the lexicographically least
    representative, so the output contract is unchanged.
    """
    p = inst.special
    model = inst.model
    examined = 0
    verified = 0

    def bump() -> None:
        nonlocal examined
        examined += 1
        if examined > subset_cap:
            raise SearchBudgetExceeded(f"subset cap {subset_cap} exceeded")

    def result(solution: frozenset[int] | None) -> SolveResult:
        return SolveResult(
            solution,
            "brute",
            {"subsets_examined": examined, "verifications": verified},
        )

    if inst.kind in VOTE_KINDS:
        base_totals = total_scores(inst.base)
        m = inst.base.m
        rule = inst.base.rule
        if inst.kind is ControlKind.CCAV:
            flat = expand_votes(inst.pool_votes)
            sign = 1
            offsets = None
        else:
            flat = expand_votes(inst.base.votes)
            sign = -1
            offsets = _group_offsets(inst)
        contribs = [_vote_contribution(r, m, rule) for r in flat]
        indices = range(len(flat))
        for size in range(inst.budget + 1):
            for combo in combinations(indices, size):
                bump()
                if offsets is not None:
                    picked = set(combo)
                    if any(offsets[i] > 0 and (i - 1) not in picked for i in combo):
                        continue
                verified += 1
                totals = _totals_with_votes(base_totals, contribs, combo, sign)
                if _wins(totals, p, model):
                    return result(frozenset(combo))
        return result(None)

    if inst.kind is ControlKind.CCAC:
        pool = sorted(inst.pool_candidates)
        for size in range(inst.budget + 1):
            for combo in combinations(pool, size):
                bump()
                verified += 1
                totals = _candidate_control_totals(inst, inst.base.active | set(combo))
                if _wins(totals, p, model):
                    return result(frozenset(combo))
        return result(None)

    deletable = sorted(inst.base.active - {p})
    for size in range(inst.budget + 1):
        for combo in combinations(deletable, size):
            bump()
            verified += 1
            totals = _candidate_control_totals(inst, inst.base.active - set(combo))
            if _wins(totals, p, model):
                return result(frozenset(combo))
    return result(None)
