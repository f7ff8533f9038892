"""Seeded random instance generation.

Reproducibility contract: the generator is driven by a 64-bit linear
congruential sequence, x <- (6364136223846793005 * x + 1442695040888963407)
mod 2^64, seeded directly with the user's seed.  `randbelow(n)` is
(next_state >> 16) % n.  Registered votes are drawn first, then pool
votes; each vote draws its length uniformly from [0, t] and then its
ranking uniformly without replacement (a partial Fisher-Yates using
randbelow).  The same seed therefore yields byte-identical instance
files on any platform, and the recipe is simple enough to replay from
another language when cross-checking outputs.
"""

from __future__ import annotations

from .control import ControlInstance, ControlKind
from .election import Election, Rule, Vote


class GenError(ValueError):
    pass


class Lcg:
    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.MULT * self.state + self.INC) & self.MASK
        return self.state

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise GenError("randbelow needs a positive bound")
        return (self.next_u64() >> 16) % n

    def sample(self, population: list[int], k: int) -> list[int]:
        """k distinct elements, order-significant, partial Fisher-Yates."""
        pool = list(population)
        for i in range(k):
            j = i + self.randbelow(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def gen_instance(
    seed: int,
    m: int,
    n: int,
    t: int,
    rule: Rule,
    kind: ControlKind,
    budget: int,
    pool: int | None = None,
) -> ControlInstance:
    """Deterministic random control instance.

    `m` counts registered candidates (the special one included); `pool`
    sizes the unregistered vote or candidate pool where the kind has one.
    `rule=borda` requires t == m and draws complete permutations.
    """
    if m < 1 or n < 0 or budget < 0:
        raise GenError("m must be >= 1 and n, budget must be >= 0")
    if not 1 <= t <= m:
        raise GenError(f"need 1 <= t <= m, got t={t}, m={m}")
    if rule is Rule.BORDA and t != m:
        raise GenError("complete-vote generation requires t == m")
    if pool is not None and pool < 0:
        raise GenError("pool must be >= 0")
    if kind is ControlKind.CCAV:
        pool_n = pool if pool is not None else n
    elif kind is ControlKind.CCAC:
        pool_n = pool if pool is not None else max(1, m // 2)
    else:
        if pool:
            raise GenError(f"{kind.value} takes no pool")
        pool_n = 0

    labels = ["p"] + [f"c{i}" for i in range(1, m)]
    if kind is ControlKind.CCAC:
        labels += [f"u{i}" for i in range(1, pool_n + 1)]
    active = frozenset(range(m))
    vote_universe = list(range(len(labels))) if kind is ControlKind.CCAC else list(range(m))

    rng = Lcg(seed)

    def draw_vote() -> Vote:
        if rule is Rule.BORDA:
            return Vote(tuple(rng.sample(vote_universe, len(vote_universe))))
        length = rng.randbelow(t + 1)
        return Vote(tuple(rng.sample(vote_universe, length)))

    votes = tuple(draw_vote() for _ in range(n))
    pool_votes: tuple[Vote, ...] = ()
    if kind is ControlKind.CCAV:
        pool_votes = tuple(draw_vote() for _ in range(pool_n))

    t_cap = None if rule is Rule.BORDA else t
    election = Election(tuple(labels), active, 0, votes, rule, t_cap)

    if kind is ControlKind.CCAV and budget > sum(v.multiplicity for v in pool_votes):
        raise GenError("budget exceeds the pool size")
    if kind is ControlKind.CCDV and budget > election.n_votes:
        raise GenError("budget exceeds the vote count")
    if kind is ControlKind.CCAC and budget > pool_n:
        raise GenError("budget exceeds the pool size")
    if kind is ControlKind.CCDC and budget > m - 1:
        raise GenError("budget exceeds the deletable candidate count")

    pool_candidates = (
        frozenset(range(m, m + pool_n)) if kind is ControlKind.CCAC else frozenset()
    )
    return ControlInstance(
        kind,
        election,
        budget,
        pool_votes=pool_votes,
        pool_candidates=pool_candidates,
    )
