"""Seeded generator: determinism, boundaries, parameter validation."""

import pytest

from bordactl.control import ControlKind
from bordactl.election import Rule
from bordactl.gen import GenError, Lcg, gen_instance
from bordactl.textio import serialize_instance


class TestLcg:
    def test_sequence_is_pinned(self):
        rng = Lcg(42)
        first = rng.next_u64()
        assert first == (6364136223846793005 * 42 + 1442695040888963407) % 2**64

    def test_randbelow_range(self):
        rng = Lcg(7)
        values = [rng.randbelow(5) for _ in range(200)]
        assert set(values) <= set(range(5)) and len(set(values)) == 5

    def test_sample_is_distinct(self):
        rng = Lcg(1)
        got = rng.sample(list(range(10)), 6)
        assert len(set(got)) == 6


class TestGenerator:
    def test_same_seed_same_bytes(self):
        a = serialize_instance(gen_instance(99, 5, 6, 3, Rule.AV, ControlKind.CCAV, 2, pool=5))
        b = serialize_instance(gen_instance(99, 5, 6, 3, Rule.AV, ControlKind.CCAV, 2, pool=5))
        assert a == b

    def test_different_seed_differs(self):
        a = serialize_instance(gen_instance(1, 5, 6, 3, Rule.AV, ControlKind.CCDV, 2))
        b = serialize_instance(gen_instance(2, 5, 6, 3, Rule.AV, ControlKind.CCDV, 2))
        assert a != b

    def test_complete_boundary(self):
        inst = gen_instance(3, 4, 3, 4, Rule.BORDA, ControlKind.CCDV, 1)
        assert inst.base.t_cap is None
        assert all(len(v.ranking) == 4 for v in inst.base.votes)

    def test_complete_requires_t_equals_m(self):
        with pytest.raises(GenError):
            gen_instance(3, 4, 3, 2, Rule.BORDA, ControlKind.CCDV, 1)

    def test_lengths_within_cap(self):
        inst = gen_instance(11, 6, 8, 3, Rule.UP, ControlKind.CCDV, 2)
        assert all(len(v.ranking) <= 3 for v in inst.base.votes)

    def test_ccac_pool_candidates(self):
        inst = gen_instance(4, 4, 3, 2, Rule.DOWN, ControlKind.CCAC, 2, pool=3)
        assert len(inst.pool_candidates) == 3
        assert not inst.pool_candidates & inst.base.active

    def test_t_above_m_rejected(self):
        with pytest.raises(GenError):
            gen_instance(0, 3, 2, 4, Rule.UP, ControlKind.CCDV, 0)

    def test_budget_above_votes_rejected(self):
        with pytest.raises(GenError):
            gen_instance(0, 3, 2, 2, Rule.UP, ControlKind.CCDV, 5)

    def test_pool_for_deletion_kinds_rejected(self):
        with pytest.raises(GenError):
            gen_instance(0, 3, 2, 2, Rule.UP, ControlKind.CCDV, 1, pool=3)
