"""Constructive control instances: edit semantics and solution checking.

Four edit kinds are supported: adding or deleting votes, adding or
deleting candidates.  Vote picks are indices into the *expanded* ballot
list (a multiplicity-g group occupies g consecutive indices in file
order), so distinct copies of identical ballots are individually
addressable while solutions stay plain index sets.  Candidate picks are
candidate ids.

Applying a solution yields a fresh, eagerly projected election; nothing
is mutated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .election import (
    Election,
    ElectionError,
    Vote,
    WinnerModel,
    project_vote,
    winners,
)


class ControlKind(str, Enum):
    CCAV = "ccav"  # add votes
    CCDV = "ccdv"  # delete votes
    CCAC = "ccac"  # add candidates
    CCDC = "ccdc"  # delete candidates


VOTE_KINDS = (ControlKind.CCAV, ControlKind.CCDV)
CANDIDATE_KINDS = (ControlKind.CCAC, ControlKind.CCDC)


class InvalidSolutionError(ValueError):
    """A pick set is illegal for its instance (budget, range, special)."""


def expand_votes(votes: tuple[Vote, ...]) -> list[tuple[int, ...]]:
    """Flatten grouped ballots into one ranking per copy, file order."""
    flat: list[tuple[int, ...]] = []
    for vote in votes:
        flat.extend([vote.ranking] * vote.multiplicity)
    return flat


def expanded_count(votes: tuple[Vote, ...]) -> int:
    return sum(v.multiplicity for v in votes)


@dataclass(frozen=True)
class ControlInstance:
    """One constructive-control question: can `budget` edits of `kind`
    make the base election's special candidate win?"""

    kind: ControlKind
    base: Election
    budget: int
    pool_votes: tuple[Vote, ...] = ()
    pool_candidates: frozenset[int] = frozenset()
    model: WinnerModel = WinnerModel.UNIQUE

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise ElectionError("negative budget")
        base = self.base
        if self.kind is ControlKind.CCAV:
            if self.pool_candidates:
                raise ElectionError("vote control carries no candidate pool")
            for vote in self.pool_votes:
                if vote.multiplicity < 1:
                    raise ElectionError("pool vote multiplicity must be positive")
                if not all(c in base.active for c in vote.ranking):
                    raise ElectionError("pool vote ranks an inactive candidate")
                if len(set(vote.ranking)) != len(vote.ranking):
                    raise ElectionError("duplicate candidate in a pool vote")
                if base.t_cap is not None and len(vote.ranking) > base.t_cap:
                    raise ElectionError("pool vote exceeds the truncation cap")
                if base.rule.truncated is False and len(vote.ranking) != base.m:
                    raise ElectionError("pool vote of a complete-vote election is partial")
            if self.budget > expanded_count(self.pool_votes):
                raise ElectionError("budget exceeds the unregistered vote pool")
        elif self.kind is ControlKind.CCDV:
            if self.pool_votes or self.pool_candidates:
                raise ElectionError("vote deletion carries no pool")
            if self.budget > base.n_votes:
                raise ElectionError("budget exceeds the number of votes")
        elif self.kind is ControlKind.CCAC:
            if self.pool_votes:
                raise ElectionError("candidate control carries no vote pool")
            universe = range(len(base.labels))
            if not all(c in universe for c in self.pool_candidates):
                raise ElectionError("pool candidate outside the declared universe")
            if self.pool_candidates & base.active:
                raise ElectionError("pool candidate already registered")
            if self.budget > len(self.pool_candidates):
                raise ElectionError("budget exceeds the unregistered candidate pool")
        else:  # CCDC
            if self.pool_votes or self.pool_candidates:
                raise ElectionError("candidate deletion carries no pool")
            if self.budget > base.m - 1:
                raise ElectionError("budget exceeds the deletable candidate count")

    @property
    def special(self) -> int:
        return self.base.special


def check_solution(inst: ControlInstance, picks: frozenset[int]) -> str | None:
    """Return a rejection reason for an illegal pick set, else None."""
    if len(picks) > inst.budget:
        return "budget"
    kind = inst.kind
    if kind is ControlKind.CCAV:
        limit = expanded_count(inst.pool_votes)
        if any(i < 0 or i >= limit for i in picks):
            return "unknown-pool-vote"
    elif kind is ControlKind.CCDV:
        limit = inst.base.n_votes
        if any(i < 0 or i >= limit for i in picks):
            return "unknown-vote"
    elif kind is ControlKind.CCAC:
        if not picks <= inst.pool_candidates:
            return "unknown-pool-candidate"
    else:
        if inst.special in picks:
            return "special-not-deletable"
        if not picks <= inst.base.active:
            return "unknown-candidate"
    return None


def _delete_expanded(votes: tuple[Vote, ...], picks: frozenset[int]) -> tuple[Vote, ...]:
    out: list[Vote] = []
    start = 0
    for vote in votes:
        end = start + vote.multiplicity
        removed = sum(1 for i in picks if start <= i < end)
        if vote.multiplicity - removed > 0:
            out.append(Vote(vote.ranking, vote.multiplicity - removed))
        start = end
    return tuple(out)


def apply_solution(inst: ControlInstance, picks: frozenset[int]) -> Election:
    """Apply an edit set and return the resulting election.

    Vote edits leave the candidate set alone; candidate edits re-project
    every ballot onto the new active set, which resizes the scoring
    vector accordingly.  The rule tag is always preserved.
    """
    reason = check_solution(inst, picks)
    if reason is not None:
        raise InvalidSolutionError(reason)
    base = inst.base
    if inst.kind is ControlKind.CCAV:
        flat = expand_votes(inst.pool_votes)
        added = tuple(Vote(flat[i], 1) for i in sorted(picks))
        return replace(base, votes=base.votes + added)
    if inst.kind is ControlKind.CCDV:
        return replace(base, votes=_delete_expanded(base.votes, picks))
    if inst.kind is ControlKind.CCAC:
        active = base.active | picks
    else:
        active = base.active - picks
    projected = tuple(project_vote(v, active) for v in base.votes)
    return replace(base, active=active, votes=projected)


def verify_explain(inst: ControlInstance, picks: frozenset[int]) -> tuple[bool, str]:
    """Check a solution; returns (verdict, reason). Illegal picks verify
    False with the rejecting reason rather than raising."""
    reason = check_solution(inst, picks)
    if reason is not None:
        return False, reason
    after = apply_solution(inst, picks)
    if inst.special in winners(after, inst.model):
        return True, "ok"
    return False, "not-winner"


def verify(inst: ControlInstance, picks: frozenset[int]) -> bool:
    """True iff `picks` is legal and makes the special candidate win."""
    return verify_explain(inst, picks)[0]


