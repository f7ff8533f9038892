"""Parameterized solvers: typing, implied final scores, oracle agreement."""

import pytest

from bordactl.bruteforce import solve_control_bruteforce
from bordactl.control import ControlInstance, ControlKind, verify
from bordactl.election import Election, Rule, Vote, WinnerModel
from bordactl.fpt import (
    EditDirection,
    FptApplicabilityError,
    VoteType,
    final_score,
    shifted_totals,
    solve_1ccac,
    solve_1ccdc,
    solve_ccav_fpt,
    solve_ccdv_fpt,
    vote_type,
)
from helpers import (
    example2_truncated_instance,
    make_election,
    random_truncated_instance,
)


class TestVoteType:
    def test_special_first(self):
        assert vote_type((3, 1, 0), p=3) == VoteType(1, 3)

    def test_unranked_sentinel(self):
        assert vote_type((0, 1), p=5) == VoteType(0, 2)

    def test_empty(self):
        assert vote_type((), p=0) == VoteType(0, 0)


class TestFinalScore:
    def test_empty_combination_is_current_score(self):
        e = make_election(["a", "p"], "p", ["p > a", "a"], Rule.UP, t_cap=2)
        assert final_score(e, {}, EditDirection.DELETE) == shifted_totals(e)[1]

    def test_delete_one_top_vote_rounded_up(self):
        # m=4: a deleted ballot ranking the special candidate first costs m-1 = 3
        e = make_election(
            ["a", "b", "c", "p"], "p", ["p > a", "b > c"], Rule.UP, t_cap=2
        )
        before = shifted_totals(e)[3]
        got = final_score(e, {VoteType(1, 2): 1}, EditDirection.DELETE)
        assert got == before - 6  # doubled

    def test_add_one_second_place_rounded_down(self):
        # j - i + 1 = 2 - 2 + 1 = 1 point gained
        e = make_election(["a", "p"], "p", ["a"], Rule.DOWN, t_cap=2)
        before = shifted_totals(e)[1]
        got = final_score(e, {VoteType(2, 2): 1}, EditDirection.ADD)
        assert got == before + 2

    def test_averaged_uses_shifted_per_type_score(self):
        # ranked contribution is m - i minus the ballot's unranked share
        e = make_election(["a", "b", "c", "p"], "p", [], Rule.AV, t_cap=2)
        got = final_score(e, {VoteType(1, 2): 1}, EditDirection.ADD)
        assert got == 2 * (4 - 1) - (4 - 2 - 1)


class TestShiftedTotals:
    def test_shift_preserves_diffs(self):
        for seed in range(60):
            inst = random_truncated_instance(seed, ControlKind.CCDV)
            e = inst.base
            from bordactl.election import total_scores

            real = total_scores(e)
            shifted = shifted_totals(e)
            anchor = min(e.active)
            for c in e.active:
                assert real[c] - real[anchor] == shifted[c] - shifted[anchor]


class TestDeletionSolver:
    def test_example2_as_truncated(self):
        inst = example2_truncated_instance()
        res = solve_ccdv_fpt(inst)
        assert res.solution is not None and len(res.solution) == 1
        assert verify(inst, res.solution)

    def test_budget_zero_infeasible_when_not_winner(self):
        e = make_election(["a", "p"], "p", ["a"], Rule.UP, t_cap=1)
        inst = ControlInstance(ControlKind.CCDV, e, 0)
        assert solve_ccdv_fpt(inst).solution is None

    def test_budget_zero_feasible_when_winner(self):
        e = make_election(["a", "p"], "p", [("p", 2), "a"], Rule.UP, t_cap=1)
        inst = ControlInstance(ControlKind.CCDV, e, 0)
        assert solve_ccdv_fpt(inst).solution == frozenset()

    def test_rejects_complete_instance(self):
        e = make_election(["a", "p"], "p", ["a > p"], Rule.BORDA)
        inst = ControlInstance(ControlKind.CCDV, e, 1)
        with pytest.raises(FptApplicabilityError):
            solve_ccdv_fpt(inst)

    def test_combination_counter_within_bound(self):
        inst = example2_truncated_instance()
        res = solve_ccdv_fpt(inst)
        t, ell = 4, 1
        assert res.stats["combinations"] <= (ell + 1) ** ((t + 1) * (t + 2) // 2)

    @pytest.mark.parametrize("use_dr", [True, False])
    def test_oracle_agreement(self, use_dr):
        for seed in range(150):
            inst = random_truncated_instance(seed, ControlKind.CCDV)
            oracle = solve_control_bruteforce(inst)
            mine = solve_ccdv_fpt(inst, use_dr=use_dr)
            assert (oracle.solution is None) == (mine.solution is None), (seed, use_dr)
            if mine.solution is not None:
                assert verify(inst, mine.solution)

    def test_dr_soundness_with_heavy_duplication(self):
        # many identical ballots force the thinning rule to actually bite
        e = make_election(
            ["a", "b", "p"],
            "p",
            [("a > b", 7), ("b > a", 2), ("p > a", 3)],
            Rule.UP,
            t_cap=2,
        )
        inst = ControlInstance(ControlKind.CCDV, e, 2)
        with_dr = solve_ccdv_fpt(inst, use_dr=True)
        without = solve_ccdv_fpt(inst, use_dr=False)
        oracle = solve_control_bruteforce(inst)
        assert (with_dr.solution is None) == (without.solution is None) == (
            oracle.solution is None
        )
        assert with_dr.stats["votes_after_reduction"] <= without.stats[
            "votes_after_reduction"
        ]


class TestAdditionSolver:
    def test_pool_copies_of_winning_vote(self):
        e = make_election(["a", "p"], "p", [("a", 2)], Rule.UP, t_cap=1)
        pool = (Vote((1,), 3),)
        inst = ControlInstance(ControlKind.CCAV, e, 3, pool_votes=pool)
        res = solve_ccav_fpt(inst)
        assert res.solution == frozenset({0, 1, 2})
        assert verify(inst, res.solution)

    def test_unhelpful_pool_is_infeasible(self):
        # every pool ballot boosts the blocker at least as much as p
        e = make_election(["a", "p"], "p", [("a", 1)], Rule.UP, t_cap=2)
        pool = (Vote((0, 1), 4),)  # a > p
        inst = ControlInstance(ControlKind.CCAV, e, 2, pool_votes=pool)
        assert solve_ccav_fpt(inst).solution is None

    def test_budget_zero_with_winner(self):
        e = make_election(["a", "p"], "p", ["p"], Rule.UP, t_cap=1)
        inst = ControlInstance(ControlKind.CCAV, e, 0, pool_votes=())
        assert solve_ccav_fpt(inst).solution == frozenset()

    @pytest.mark.parametrize("use_dr", [True, False])
    def test_oracle_agreement(self, use_dr):
        for seed in range(150):
            inst = random_truncated_instance(seed, ControlKind.CCAV)
            oracle = solve_control_bruteforce(inst)
            mine = solve_ccav_fpt(inst, use_dr=use_dr)
            assert (oracle.solution is None) == (mine.solution is None), (seed, use_dr)
            if mine.solution is not None:
                assert verify(inst, mine.solution)

    def test_combination_counter_within_bound(self):
        for seed in range(30):
            inst = random_truncated_instance(seed, ControlKind.CCAV)
            res = solve_ccav_fpt(inst)
            t, ell = inst.base.t_cap, inst.budget
            assert res.stats["combinations"] <= (ell + 1) ** (t * (t + 1) // 2)

    def test_thinning_cascade_with_near_duplicates(self):
        # eight pool ballots identical except one position, p always second
        labels = ["p"] + [f"c{i}" for i in range(1, 10)]
        e = make_election(labels, "p", [("c1 > c2", 4)], Rule.UP, t_cap=3)
        pool = tuple(Vote((i, 0, 1)) for i in range(2, 10))  # c_i > p > c1
        inst = ControlInstance(ControlKind.CCAV, e, 2, pool_votes=pool)
        oracle = solve_control_bruteforce(inst)
        mine = solve_ccav_fpt(inst)
        assert (oracle.solution is None) == (mine.solution is None)
        if mine.solution is not None:
            assert verify(inst, mine.solution)

    def test_duplicate_heavy_pools_agree_with_oracle(self):
        # adversarial pools built from few distinct ballots trip every rule
        from bordactl.gen import Lcg

        for seed in range(120):
            rng = Lcg(seed * 71 + 5)
            m = 3 + rng.randbelow(3)
            t = 2 + rng.randbelow(2)
            t = min(t, m)
            distinct = 1 + rng.randbelow(3)
            shapes = []
            for _ in range(distinct):
                length = 1 + rng.randbelow(t)
                shapes.append(tuple(rng.sample(list(range(m)), length)))
            pool = tuple(
                Vote(shapes[rng.randbelow(distinct)]) for _ in range(8)
            )
            votes = tuple(
                Vote(tuple(rng.sample(list(range(m)), rng.randbelow(t + 1))))
                for _ in range(rng.randbelow(5))
            )
            labels = tuple(["p"] + [f"c{i}" for i in range(1, m)])
            e = Election(labels, frozenset(range(m)), 0, votes, Rule.UP, t)
            inst = ControlInstance(ControlKind.CCAV, e, 2, pool_votes=pool)
            oracle = solve_control_bruteforce(inst)
            mine = solve_ccav_fpt(inst)
            assert (oracle.solution is None) == (mine.solution is None), seed
            if mine.solution is not None:
                assert verify(inst, mine.solution)


class TestCowinnerModel:
    @pytest.mark.parametrize("kind,solver,t_max", [
        (ControlKind.CCDV, solve_ccdv_fpt, 3),
        (ControlKind.CCAV, solve_ccav_fpt, 3),
        (ControlKind.CCDC, solve_1ccdc, 1),
        (ControlKind.CCAC, solve_1ccac, 1),
    ])
    def test_oracle_agreement(self, kind, solver, t_max):
        for seed in range(100):
            base = random_truncated_instance(seed, kind, t_max=t_max)
            inst = ControlInstance(
                base.kind,
                base.base,
                base.budget,
                pool_votes=base.pool_votes,
                pool_candidates=base.pool_candidates,
                model=WinnerModel.COWINNER,
            )
            oracle = solve_control_bruteforce(inst)
            mine = solver(inst)
            assert (oracle.solution is None) == (mine.solution is None), (kind, seed)
            if mine.solution is not None:
                assert verify(inst, mine.solution)


class TestSingleRankedCandidateControl:
    def test_deletion_counts(self):
        e = make_election(
            ["a", "b", "p"], "p", [("a", 3), ("p", 2), ("b", 1)], Rule.UP, t_cap=1
        )
        inst = ControlInstance(ControlKind.CCDC, e, 1)
        res = solve_1ccdc(inst)
        assert res.solution == frozenset({0})
        assert verify(inst, res.solution)

    def test_deletion_already_winning(self):
        e = make_election(["a", "p"], "p", [("p", 2), ("a", 1)], Rule.UP, t_cap=1)
        inst = ControlInstance(ControlKind.CCDC, e, 1)
        assert solve_1ccdc(inst).solution == frozenset()

    def test_deletion_two_blockers_one_budget(self):
        e = make_election(
            ["a", "b", "p"], "p", [("a", 2), ("b", 2), ("p", 1)], Rule.UP, t_cap=1
        )
        inst = ControlInstance(ControlKind.CCDC, e, 1)
        assert solve_1ccdc(inst).solution is None

    def test_deletion_cowinner_strict_threshold(self):
        e = make_election(
            ["a", "p"], "p", [("a", 2), ("p", 2)], Rule.UP, t_cap=1
        )
        inst = ControlInstance(
            ControlKind.CCDC, e, 0, model=WinnerModel.COWINNER
        )
        assert solve_1ccdc(inst).solution == frozenset()

    def test_addition_only_when_already_winner(self):
        e = make_election(
            ["a", "p", "u"], "p", [("p", 2), ("a", 1)], Rule.UP, t_cap=1, active=["a", "p"]
        )
        inst = ControlInstance(ControlKind.CCAC, e, 1, pool_candidates=frozenset({2}))
        assert solve_1ccac(inst).solution == frozenset()

    def test_addition_tied_is_hopeless(self):
        e = make_election(
            ["a", "p", "u"], "p", [("p", 1), ("a", 1)], Rule.UP, t_cap=1, active=["a", "p"]
        )
        inst = ControlInstance(ControlKind.CCAC, e, 1, pool_candidates=frozenset({2}))
        assert solve_1ccac(inst).solution is None

    def test_rejects_longer_ballots(self):
        e = make_election(["a", "b", "p"], "p", ["a > b"], Rule.UP, t_cap=2)
        with pytest.raises(FptApplicabilityError):
            solve_1ccdc(ControlInstance(ControlKind.CCDC, e, 1))

    @pytest.mark.parametrize("kind,solver", [
        (ControlKind.CCDC, solve_1ccdc),
        (ControlKind.CCAC, solve_1ccac),
    ])
    def test_oracle_agreement(self, kind, solver):
        for seed in range(150):
            inst = random_truncated_instance(seed, kind, t_max=1)
            oracle = solve_control_bruteforce(inst)
            mine = solver(inst)
            assert (oracle.solution is None) == (mine.solution is None), (kind, seed)
            if mine.solution is not None:
                assert verify(inst, mine.solution)
