"""Candidates, complete and top-truncated votes, Borda scoring, winners.

All scores are exact half-integers: the only fractional source is the
averaged rule's unranked score (m - |v| - 1) / 2, whose denominator is
always 2.  Every score in this package is therefore stored as a *doubled*
integer (twice the real value), and no floating point is used anywhere.

Everything here is immutable and purely functional; values can be shared
freely across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple


class ElectionError(ValueError):
    """Domain error: unknown candidate, inconsistent election, bad rule."""


class MalformedVoteError(ElectionError):
    """A vote violates the structural requirements of its scoring rule."""


class Rule(str, Enum):
    """Scoring rule tag.

    BORDA: classic rule on complete votes; position i of m scores m - i.
    UP:    truncated votes; ranked position i scores m - i, unranked 0.
    DOWN:  truncated votes; ranked position i scores |v| - i + 1, unranked 0.
    AV:    truncated votes; ranked position i scores m - i, unranked
           candidates share the leftover average (m - |v| - 1) / 2.
    """

    BORDA = "borda"
    UP = "up"
    DOWN = "down"
    AV = "av"

    @property
    def truncated(self) -> bool:
        return self is not Rule.BORDA


TRUNCATED_RULES = (Rule.UP, Rule.DOWN, Rule.AV)


class WinnerModel(str, Enum):
    UNIQUE = "unique"
    COWINNER = "cowinner"


class Vote(NamedTuple):
    """An ordered ranking (most preferred first) with a copy count."""

    ranking: tuple[int, ...]
    multiplicity: int = 1


def score_str(doubled: int) -> str:
    """Render a doubled score as `a` or `a.5`, never as a float."""
    sign = "-" if doubled < 0 else ""
    a = abs(doubled)
    return f"{sign}{a // 2}.5" if a % 2 else f"{sign}{a // 2}"


def _check_label(label: str) -> None:
    if not label or any(ch.isspace() for ch in label) or ">" in label or ":" in label:
        raise ElectionError(f"illegal candidate label {label!r}")


@dataclass(frozen=True)
class Election:
    """An election over a fixed candidate universe.

    `labels` is the declared universe (candidate id = index).  `active` is
    the subset currently standing; votes may rank inactive universe
    candidates (they are projected away when scoring), which is how
    candidate-addition instances carry their unregistered pool.

    Invariants (checked at construction):
      - active is a nonempty subset of the universe and contains `special`;
      - rankings are duplicate-free and drawn from the universe;
      - rule BORDA pairs with t_cap=None and every vote projects onto the
        full active set; truncated rules pair with t_cap >= 1 and every
        stored ranking has length <= t_cap.
    """

    labels: tuple[str, ...]
    active: frozenset[int]
    special: int
    votes: tuple[Vote, ...]
    rule: Rule
    t_cap: int | None = None

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise ElectionError("duplicate candidate labels")
        for label in self.labels:
            _check_label(label)
        universe = range(len(self.labels))
        if not self.active:
            raise ElectionError("empty active candidate set")
        if not all(c in universe for c in self.active):
            raise ElectionError("active candidate outside the declared universe")
        if self.special not in self.active:
            raise ElectionError("special candidate is not active")
        if self.rule is Rule.BORDA:
            if self.t_cap is not None:
                raise ElectionError("complete-vote rule cannot carry a truncation cap")
        else:
            if self.t_cap is None or self.t_cap < 1:
                raise ElectionError(f"rule {self.rule.value} requires a positive truncation cap")
        m = len(self.active)
        for vote in self.votes:
            if vote.multiplicity < 1:
                raise ElectionError("vote multiplicity must be positive")
            if len(set(vote.ranking)) != len(vote.ranking):
                raise MalformedVoteError("duplicate candidate in a ranking")
            if not all(c in universe for c in vote.ranking):
                raise ElectionError("vote ranks a candidate outside the universe")
            if self.t_cap is not None and len(vote.ranking) > self.t_cap:
                raise MalformedVoteError(
                    f"ranking of length {len(vote.ranking)} exceeds cap {self.t_cap}"
                )
            if self.rule is Rule.BORDA:
                if len(project_ranking(vote.ranking, self.active)) != m:
                    raise MalformedVoteError("complete-vote election contains a partial vote")

    @property
    def m(self) -> int:
        """Number of active candidates (the scoring dimension)."""
        return len(self.active)

    @property
    def n_votes(self) -> int:
        """Total ballot count, multiplicities included."""
        return sum(v.multiplicity for v in self.votes)

    def label(self, c: int) -> str:
        return self.labels[c]

    def id_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ElectionError(f"unknown candidate {label!r}") from None


def project_ranking(ranking: tuple[int, ...], active: frozenset[int]) -> tuple[int, ...]:
    return tuple(c for c in ranking if c in active)


def project_vote(vote: Vote, active: frozenset[int]) -> Vote:
    """Delete inactive candidates from a vote, keeping relative order."""
    return Vote(project_ranking(vote.ranking, active), vote.multiplicity)


def _ranked_doubled(i: int, length: int, m: int, rule: Rule) -> int:
    """Doubled score of the candidate at 1-based position i."""
    if rule is Rule.DOWN:
        return 2 * (length - i + 1)
    return 2 * (m - i)


def _unranked_doubled(length: int, m: int, rule: Rule) -> int:
    if rule is Rule.AV:
        return m - length - 1
    return 0


def score_in_vote(c: int, vote: Vote, m: int, rule: Rule) -> int:
    """Doubled score candidate `c` receives from one (projected) ballot.

    The vote must already be projected onto the active set of size m.
    """
    length = len(vote.ranking)
    if rule is Rule.BORDA and length != m:
        raise MalformedVoteError(f"complete vote must rank all {m} candidates, got {length}")
    try:
        i = vote.ranking.index(c) + 1
    except ValueError:
        if rule is Rule.BORDA:
            raise ElectionError("candidate missing from a complete vote") from None
        return _unranked_doubled(length, m, rule)
    return _ranked_doubled(i, length, m, rule)


def vote_score_deltas(
    ranking: tuple[int, ...], m: int, rule: Rule
) -> tuple[int, dict[int, int]]:
    """Doubled scores of one projected ballot as (unranked_base, ranked map).

    Every active candidate scores `unranked_base` except those in the map.
    Useful for bulk and incremental scoring.
    """
    length = len(ranking)
    base = _unranked_doubled(length, m, rule)
    ranked = {c: _ranked_doubled(i, length, m, rule) for i, c in enumerate(ranking, start=1)}
    return base, ranked


def total_scores(e: Election) -> dict[int, int]:
    """Doubled multiplicity-weighted totals for every active candidate."""
    m = e.m
    totals = dict.fromkeys(e.active, 0)
    for vote in e.votes:
        ranking = project_ranking(vote.ranking, e.active)
        if e.rule is Rule.BORDA and len(ranking) != m:
            raise MalformedVoteError("complete-vote election contains a partial vote")
        mult = vote.multiplicity
        base, ranked = vote_score_deltas(ranking, m, e.rule)
        if base:
            for c in totals:
                totals[c] += base * mult
        for c, s in ranked.items():
            totals[c] += (s - base) * mult
    return totals


def total_score(c: int, e: Election) -> int:
    """Doubled total score of one candidate."""
    if c not in e.active:
        raise ElectionError(f"candidate {c} is not active")
    return total_scores(e)[c]


def diff(a: int, b: int, e: Election) -> int:
    """Doubled score difference total(a) - total(b)."""
    totals = total_scores(e)
    if a not in totals or b not in totals:
        raise ElectionError("diff over inactive candidates")
    return totals[a] - totals[b]


def winners_of_totals(totals: dict[int, int], model: WinnerModel) -> frozenset[int]:
    best = max(totals.values())
    top = frozenset(c for c, s in totals.items() if s == best)
    if model is WinnerModel.UNIQUE and len(top) != 1:
        return frozenset()
    return top


def winners(e: Election, model: WinnerModel = WinnerModel.UNIQUE) -> frozenset[int]:
    """Winner set: strict maximum (or empty on a tie) under UNIQUE,
    all maximum-score candidates under COWINNER."""
    return winners_of_totals(total_scores(e), model)


def votes_subset(e: Election, votes: Iterable[Vote]) -> Election:
    """Same election restricted to the given ballots (for per-group checks)."""
    return Election(e.labels, e.active, e.special, tuple(votes), e.rule, e.t_cap)
