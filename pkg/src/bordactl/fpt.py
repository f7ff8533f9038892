"""Parameterized solvers for truncated-vote control.

Vote deletion and vote addition are solved by the type-combination
method: classify ballots by (position of the special candidate, length),
enumerate how many ballots of each type the edit uses, derive the special
candidate's implied final score, prune provably redundant ballots, and
finish with a small exhaustive search over the survivors.  With ballots
of length at most t and budget l this examines at most (l+1)^((t+1)(t+2)/2)
combinations (deletion) or (l+1)^(t(t+1)/2) (addition).

For single-candidate ballots (t = 1), candidate deletion collapses to a
counting argument solved in O(n*m), and candidate addition is feasible
only when the special candidate already wins.

Under the averaged rule all internal bookkeeping uses per-ballot shifted
scores (score minus the ballot's unranked share), which leaves every
pairwise score difference unchanged while making unranked contributions
vanish.  Final winner checks always use the real rule.
"""

from __future__ import annotations

import math
from collections import Counter
from enum import Enum
from itertools import chain, combinations, product
from typing import Iterator, Mapping, NamedTuple

from .bruteforce import SolveResult, _totals_with_votes, _wins
from .control import ControlInstance, ControlKind, expand_votes
from .election import (
    Election,
    ElectionError,
    Rule,
    WinnerModel,
    project_ranking,
    total_scores,
    vote_score_deltas,
    winners,
)


class FptApplicabilityError(ValueError):
    """The requested parameterized solver does not cover this instance."""


class VoteType(NamedTuple):
    """Ballot classification: special candidate's position (0 = unranked)
    and ballot length."""

    p_pos: int
    length: int


class EditDirection(str, Enum):
    DELETE = "delete"
    ADD = "add"


class CandidateSplit(NamedTuple):
    """Candidates at or above the implied final score, and the rest."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]


def vote_type(ranking: tuple[int, ...], p: int) -> VoteType:
    """Type of a projected ballot with respect to the special candidate."""
    try:
        pos = ranking.index(p) + 1
    except ValueError:
        pos = 0
    return VoteType(pos, len(ranking))


def _shifted_ranked_scores(ranking: tuple[int, ...], m: int, rule: Rule) -> dict[int, int]:
    """Doubled shifted scores of the ranked candidates (unranked are 0)."""
    _, ranked = vote_score_deltas(ranking, m, rule)
    if rule is Rule.AV:
        shift = m - len(ranking) - 1
        return {c: s - shift for c, s in ranked.items()}
    return ranked


def shifted_totals(e: Election) -> dict[int, int]:
    """Doubled shifted totals; equals the real totals except under the
    averaged rule, where per-ballot unranked shares are subtracted."""
    totals = dict.fromkeys(e.active, 0)
    for vote in e.votes:
        ranking = project_ranking(vote.ranking, e.active)
        for c, s in _shifted_ranked_scores(ranking, e.m, e.rule).items():
            totals[c] += s * vote.multiplicity
    return totals


def type_score_for_special(ty: VoteType, m: int, rule: Rule) -> int:
    """Doubled shifted score the special candidate takes from any ballot
    of the given type."""
    i, j = ty.p_pos, ty.length
    if i == 0:
        return 0
    if rule is Rule.DOWN:
        return 2 * (j - i + 1)
    score = 2 * (m - i)
    if rule is Rule.AV:
        score -= m - j - 1
    return score


def all_vote_types(t: int, *, require_ranked: bool) -> list[VoteType]:
    """All ballot types for cap t, ordered by (length, position)."""
    low = 1 if require_ranked else 0
    return [VoteType(i, j) for j in range(low, t + 1) for i in range(low, j + 1)]


def final_score(
    e: Election, combo: Mapping[VoteType, int], direction: EditDirection
) -> int:
    """Doubled shifted final score of the special candidate implied by a
    type combination (counts of ballots deleted from or added to e)."""
    for ty, cnt in combo.items():
        if cnt < 0 or not (0 <= ty.p_pos <= ty.length):
            raise ElectionError(f"infeasible type combination entry {ty}: {cnt}")
    total = shifted_totals(e)[e.special]
    moved = sum(cnt * type_score_for_special(ty, e.m, e.rule) for ty, cnt in combo.items())
    return total + moved if direction is EditDirection.ADD else total - moved


def _blocks(score: int, f_score: int, model: WinnerModel) -> bool:
    """Whether a candidate at `score` stops the special candidate whose
    final score is `f_score` (ties block only under the unique model)."""
    if model is WinnerModel.UNIQUE:
        return score >= f_score
    return score > f_score


def split_candidates(
    sh_totals: dict[int, int],
    p: int,
    f_score: int,
    model: WinnerModel = WinnerModel.UNIQUE,
) -> CandidateSplit:
    plus = tuple(
        sorted(c for c, s in sh_totals.items() if c != p and _blocks(s, f_score, model))
    )
    minus = tuple(sorted(c for c in sh_totals if c != p and c not in plus))
    return CandidateSplit(plus, minus)


def _enumerate_count_vectors(
    types: list[VoteType], avail: Mapping[VoteType, int], budget: int
) -> Iterator[tuple[int, ...]]:
    """Count vectors (aligned to `types`) in lexicographic order, each
    entry bounded by availability and the total by the budget."""
    caps = [min(budget, avail.get(ty, 0)) for ty in types]

    def rec(idx: int, remaining: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if idx == len(types):
            yield tuple(acc)
            return
        for cnt in range(min(caps[idx], remaining) + 1):
            acc.append(cnt)
            yield from rec(idx + 1, remaining - cnt, acc)
            acc.pop()

    return rec(0, budget, [])


def _require_truncated(inst: ControlInstance, kind: ControlKind, name: str) -> int:
    if inst.kind is not kind:
        raise FptApplicabilityError(f"{name} expects a {kind.value} instance")
    if inst.base.t_cap is None:
        raise FptApplicabilityError("instance is not top-truncated")
    return inst.base.t_cap


def solve_ccdv_fpt(inst: ControlInstance, *, use_dr: bool = True) -> SolveResult:
    """Vote-deletion solver.

    Per combination: derive the implied final score, split candidates,
    skip combinations needing more than t*l suppressed candidates, thin
    ballots that agree on length and on every critical candidate's
    position down to l+1 copies per class, then search subsets matching
    the combination's per-type counts exactly.  With `use_dr=False` the
    thinning step is skipped (for soundness cross-checks).
    """
    t = _require_truncated(inst, ControlKind.CCDV, "solve_ccdv_fpt")
    base = inst.base
    p, m, ell, rule = base.special, base.m, inst.budget, base.rule
    flat = [project_ranking(r, base.active) for r in expand_votes(base.votes)]
    real_totals = total_scores(base)
    contribs = [vote_score_deltas(r, m, rule) for r in flat]
    sh_totals = shifted_totals(base)
    types = [vote_type(r, p) for r in flat]
    avail = Counter(types)
    type_slots = all_vote_types(t, require_ranked=False)
    combo_bound = (ell + 1) ** ((t + 1) * (t + 2) // 2)

    combos = 0
    subsets = 0
    survivors_n = len(flat)
    for counts in _enumerate_count_vectors(type_slots, avail, ell):
        combos += 1
        if combos > combo_bound:
            raise AssertionError("combination enumerator exceeded its bound")
        f_score = sh_totals[p] - sum(
            cnt * type_score_for_special(ty, m, rule)
            for ty, cnt in zip(type_slots, counts)
        )
        plus, _ = split_candidates(sh_totals, p, f_score, inst.model)
        if len(plus) > t * ell:
            continue
        if use_dr:
            key_cands = plus + (p,)
            classes: dict[tuple, list[int]] = {}
            for idx, ranking in enumerate(flat):
                posmap = {c: i for i, c in enumerate(ranking, start=1)}
                sig = (len(ranking), tuple(posmap.get(c, 0) for c in key_cands))
                classes.setdefault(sig, []).append(idx)
            kept = sorted(chain.from_iterable(ids[: ell + 1] for ids in classes.values()))
        else:
            kept = list(range(len(flat)))
        survivors_n = len(kept)
        by_type: dict[VoteType, list[int]] = {}
        for idx in kept:
            by_type.setdefault(types[idx], []).append(idx)
        choosers = []
        satisfiable = True
        for ty, cnt in zip(type_slots, counts):
            if cnt == 0:
                continue
            candidates_of_type = by_type.get(ty, [])
            if len(candidates_of_type) < cnt:
                satisfiable = False
                break
            choosers.append(combinations(candidates_of_type, cnt))
        if not satisfiable:
            continue
        for parts in product(*choosers):
            subsets += 1
            picks = tuple(sorted(chain.from_iterable(parts)))
            totals = _totals_with_votes(real_totals, contribs, picks, -1)
            if _wins(totals, p, inst.model):
                return SolveResult(
                    frozenset(picks),
                    "fpt-ccdv",
                    {
                        "combinations": combos,
                        "subsets_examined": subsets,
                        "votes_after_reduction": survivors_n,
                    },
                )
    return SolveResult(
        None,
        "fpt-ccdv",
        {
            "combinations": combos,
            "subsets_examined": subsets,
            "votes_after_reduction": survivors_n,
        },
    )


def _cascade_bound(r: int, t: int, ell: int) -> int:
    return math.factorial(r) * (t - 1) ** r * (ell - 1) ** r * ell


def _round_robin_keep(members: list[int], variants: dict[int, tuple], limit: int) -> set[int]:
    """Keep `limit` members, cycling across distinct variant patterns in
    first-appearance order so the kept set spans as many patterns as
    possible."""
    buckets: dict[tuple, list[int]] = {}
    for idx in members:
        buckets.setdefault(variants[idx], []).append(idx)
    kept: set[int] = set()
    lanes = list(buckets.values())
    depth = 0
    while len(kept) < limit:
        added = False
        for lane in lanes:
            if depth < len(lane):
                kept.add(lane[depth])
                added = True
                if len(kept) == limit:
                    break
        if not added:
            break
        depth += 1
    return kept


def solve_ccav_fpt(inst: ControlInstance, *, use_dr: bool = True) -> SolveResult:
    """Vote-addition solver.

    Pool ballots that do not rank the special candidate can never help
    and are dropped up front.  Per combination: compute the implied final
    score, clean pool ballots that would single-handedly lift some other
    candidate to that score, cap identical ballots at l+1 copies, run the
    near-duplicate thinning cascade on each position class, then search
    all subsets of the survivors up to the budget.
    """
    t = _require_truncated(inst, ControlKind.CCAV, "solve_ccav_fpt")
    base = inst.base
    p, m, ell, rule = base.special, base.m, inst.budget, base.rule
    flat = [project_ranking(r, base.active) for r in expand_votes(inst.pool_votes)]
    real_totals = total_scores(base)
    contribs = [vote_score_deltas(r, m, rule) for r in flat]
    sh_totals = shifted_totals(base)
    shifted_maps = [_shifted_ranked_scores(r, m, rule) for r in flat]
    ranked_idx = [i for i, r in enumerate(flat) if p in r]
    types = {i: vote_type(flat[i], p) for i in ranked_idx}
    avail = Counter(types.values())
    type_slots = [VoteType(i, j) for j in range(1, t + 1) for i in range(1, j + 1)]
    combo_bound = (ell + 1) ** (t * (t + 1) // 2)
    others = sorted(c for c in base.active if c != p)

    combos = 0
    subsets = 0
    survivors_n = len(ranked_idx)
    for counts in _enumerate_count_vectors(type_slots, avail, ell):
        combos += 1
        if combos > combo_bound:
            raise AssertionError("combination enumerator exceeded its bound")
        f_score = sh_totals[p] + sum(
            cnt * type_score_for_special(ty, m, rule)
            for ty, cnt in zip(type_slots, counts)
        )
        over = [c for c in others if _blocks(sh_totals[c], f_score, inst.model)]

        def survives_cleaning(i: int) -> bool:
            shm = shifted_maps[i]
            if any(c not in shm for c in over):
                return False
            return not any(
                c != p and _blocks(sh_totals[c] + s, f_score, inst.model)
                for c, s in shm.items()
            )

        alive = [i for i in ranked_idx if survives_cleaning(i)]
        copies: Counter[tuple[int, ...]] = Counter()
        deduped = []
        for i in alive:
            copies[flat[i]] += 1
            if copies[flat[i]] <= ell + 1:
                deduped.append(i)
        alive_set = set(deduped)
        if use_dr and t >= 2:
            for p_pos in range(1, t + 1):
                for r in range(1, t):
                    if r >= 2:
                        prev_bound = _cascade_bound(r - 1, t, ell)
                        prev = _position_classes(flat, alive_set, types, p_pos, r - 1)
                        if any(len(v) > prev_bound + 1 for v in prev.values()):
                            raise AssertionError(
                                "thinning cascade applied out of order"
                            )
                    bound = _cascade_bound(r, t, ell)
                    for sig, members in sorted(
                        _position_classes(flat, alive_set, types, p_pos, r).items()
                    ):
                        live = [idx for idx in members if idx in alive_set]
                        if len(live) <= bound + 1:
                            continue
                        variant_positions = sig[1]
                        variants = {
                            idx: tuple(flat[idx][pos - 1] for pos in variant_positions)
                            for idx in live
                        }
                        kept = _round_robin_keep(live, variants, bound + 1)
                        alive_set -= set(live) - kept
        survivors = sorted(alive_set)
        survivors_n = len(survivors)
        for size in range(min(ell, len(survivors)) + 1):
            for picks in combinations(survivors, size):
                subsets += 1
                totals = _totals_with_votes(real_totals, contribs, picks, 1)
                if _wins(totals, p, inst.model):
                    return SolveResult(
                        frozenset(picks),
                        "fpt-ccav",
                        {
                            "combinations": combos,
                            "subsets_examined": subsets,
                            "votes_after_reduction": survivors_n,
                        },
                    )
    return SolveResult(
        None,
        "fpt-ccav",
        {
            "combinations": combos,
            "subsets_examined": subsets,
            "votes_after_reduction": survivors_n,
        },
    )


def _position_classes(
    flat: list[tuple[int, ...]],
    alive: set[int],
    types: dict[int, VoteType],
    p_pos: int,
    r: int,
) -> dict[tuple, list[int]]:
    """Group alive pool ballots with the special candidate at `p_pos` by
    "identical except for r designated non-special positions"."""
    classes: dict[tuple, list[int]] = {}
    for idx in sorted(alive):
        if types[idx].p_pos != p_pos:
            continue
        ranking = flat[idx]
        length = len(ranking)
        free = [pos for pos in range(1, length + 1) if pos != p_pos]
        for chosen in combinations(free, r):
            masked = tuple(
                None if pos in chosen else ranking[pos - 1]
                for pos in range(1, length + 1)
            )
            sig = (length, chosen, masked)
            classes.setdefault(sig, []).append(idx)
    return classes


def _require_single_ranked(inst: ControlInstance, kind: ControlKind, name: str) -> None:
    if inst.kind is not kind:
        raise FptApplicabilityError(f"{name} expects a {kind.value} instance")
    longest = max((len(v.ranking) for v in inst.base.votes), default=0)
    if longest > 1:
        raise FptApplicabilityError("instance ballots rank more than one candidate")


def solve_1ccdc(inst: ControlInstance) -> SolveResult:
    """Candidate deletion with single-candidate ballots: delete exactly
    the candidates scoring at least as well as the special one (strictly
    better under the co-winner model); feasible iff they fit the budget."""
    _require_single_ranked(inst, ControlKind.CCDC, "solve_1ccdc")
    base = inst.base
    totals = total_scores(base)
    p_score = totals[base.special]
    if inst.model is WinnerModel.UNIQUE:
        blockers = frozenset(
            c for c, s in totals.items() if c != base.special and s >= p_score
        )
    else:
        blockers = frozenset(
            c for c, s in totals.items() if c != base.special and s > p_score
        )
    stats = {"blockers": len(blockers)}
    if len(blockers) <= inst.budget:
        return SolveResult(blockers, "fpt-1ccdc", stats)
    return SolveResult(None, "fpt-1ccdc", stats)


def solve_1ccac(inst: ControlInstance) -> SolveResult:
    """Candidate addition with single-candidate ballots: additions never
    improve the special candidate's standing, so the answer is the empty
    edit iff it already wins."""
    if inst.kind is not ControlKind.CCAC:
        raise FptApplicabilityError("solve_1ccac expects a ccac instance")
    longest = max((len(v.ranking) for v in inst.base.votes), default=0)
    if longest > 1:
        raise FptApplicabilityError("instance ballots rank more than one candidate")
    if inst.special in winners(inst.base, inst.model):
        return SolveResult(frozenset(), "fpt-1ccac", {})
    return SolveResult(None, "fpt-1ccac", {})
