"""Shared builders for the test suite: worked examples, graphs, generators."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from bordactl.control import ControlInstance, ControlKind
from bordactl.election import Election, Rule, Vote, WinnerModel
from bordactl.gen import Lcg
from bordactl.graphs import Graph


def make_votes(ids: dict[str, int], vote_specs: list) -> tuple[Vote, ...]:
    votes = []
    for spec in vote_specs:
        ranking_str, mult = spec if isinstance(spec, tuple) else (spec, 1)
        if ranking_str.strip():
            ranking = tuple(ids[tok.strip()] for tok in ranking_str.split(">"))
        else:
            ranking = ()
        votes.append(Vote(ranking, mult))
    return tuple(votes)


def make_election(
    labels: list[str],
    special: str,
    vote_specs: list,
    rule: Rule,
    t_cap: int | None = None,
    active: list[str] | None = None,
) -> Election:
    ids = {label: i for i, label in enumerate(labels)}
    act = frozenset(ids[l] for l in active) if active else frozenset(range(len(labels)))
    return Election(
        tuple(labels), act, ids[special], make_votes(ids, vote_specs), rule, t_cap
    )


def ids_of(e: Election) -> dict[str, int]:
    return {label: i for i, label in enumerate(e.labels)}


def by_label(e: Election, totals: dict[int, int]) -> dict[str, int]:
    return {e.labels[c]: s for c, s in totals.items()}


# -- the paper-style worked elections used across modules -------------------

def example1_election(rule: Rule) -> Election:
    return make_election(
        ["c1", "c2", "c3", "c4", "c5"], "c1", ["c2 > c3 > c4"], rule, t_cap=3
    )


def example2_instance(model: WinnerModel = WinnerModel.UNIQUE) -> ControlInstance:
    e = make_election(
        ["c1", "c2", "c3", "p"],
        "p",
        ["c1 > p > c2 > c3", "p > c3 > c1 > c2", "c1 > c2 > c3 > p"],
        Rule.BORDA,
    )
    return ControlInstance(ControlKind.CCDV, e, 1, model=model)


def example2_truncated_instance() -> ControlInstance:
    e = make_election(
        ["c1", "c2", "c3", "p"],
        "p",
        ["c1 > p > c2 > c3", "p > c3 > c1 > c2", "c1 > c2 > c3 > p"],
        Rule.UP,
        t_cap=4,
    )
    return ControlInstance(ControlKind.CCDV, e, 1)


def example3_instance() -> ControlInstance:
    e = make_election(
        ["c1", "c2", "p", "c3", "c4", "c5"],
        "p",
        ["c1 > p > c5", "p > c3 > c2", "c5 > c4 > c1"],
        Rule.UP,
        t_cap=3,
        active=["c1", "c2", "p"],
    )
    return ControlInstance(
        ControlKind.CCAC, e, 2, pool_candidates=frozenset({3, 4, 5})
    )


def _addition_example(rule: Rule) -> ControlInstance:
    e = make_election(
        ["c1", "p", "c2", "c3"],
        "p",
        ["p > c3 > c1", "c2 > c1 > p"],
        rule,
        t_cap=3,
        active=["c1", "p"],
    )
    return ControlInstance(ControlKind.CCAC, e, 1, pool_candidates=frozenset({2, 3}))


def _deletion_example(rule: Rule) -> ControlInstance:
    e = make_election(
        ["c1", "c2", "c3", "p"],
        "p",
        ["c1 > c3 > p", "p > c2 > c1"],
        rule,
        t_cap=3,
    )
    return ControlInstance(ControlKind.CCDC, e, 1)


def example4_instance() -> ControlInstance:
    return _addition_example(Rule.UP)


def example5_instance() -> ControlInstance:
    return _deletion_example(Rule.DOWN)


def example6_instance() -> ControlInstance:
    return _addition_example(Rule.DOWN)


def example7_instance() -> ControlInstance:
    return _deletion_example(Rule.UP)


# -- graphs ------------------------------------------------------------------

def k2() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


def p3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def k3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def p4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def c4() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def c5() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism (brute canonicalization)."""
    pairs = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    seen: set[tuple] = set()
    out: list[Graph] = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        canon = min(
            tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
            for perm in perms
        )
        if canon not in seen:
            seen.add(canon)
            out.append(Graph.from_edges(n, edges))
    return tuple(out)


def random_truncated_instance(
    seed: int,
    kind: ControlKind,
    *,
    t_max: int = 3,
    m_max: int = 6,
    n_max: int = 8,
    pool_max: int = 8,
    ell_max: int = 2,
) -> ControlInstance:
    """Deterministic small random instance within the cross-check envelope."""
    from bordactl.gen import gen_instance

    rng = Lcg(seed * 977 + 13)
    rule = (Rule.UP, Rule.DOWN, Rule.AV)[rng.randbelow(3)]
    m = 2 + rng.randbelow(m_max - 1)
    t = 1 + rng.randbelow(min(t_max, m))
    n = rng.randbelow(n_max + 1)
    ell = rng.randbelow(ell_max + 1)
    pool = None
    if kind is ControlKind.CCAV:
        pool = max(ell, rng.randbelow(pool_max + 1))
    elif kind is ControlKind.CCAC:
        pool = max(ell, 1 + rng.randbelow(3))
    elif kind is ControlKind.CCDV:
        ell = min(ell, n)
    else:
        ell = min(ell, m - 1)
    return gen_instance(seed, m, n, t, rule, kind, ell, pool=pool)


def uniform_length_vote_instance(seed: int, kind: ControlKind) -> ControlInstance:
    """Vote-control instance whose ballots all have length exactly t."""
    rng = Lcg(seed * 31 + 7)
    t = 1 + rng.randbelow(3)
    m = t + 1 + rng.randbelow(3)
    n = 1 + rng.randbelow(6)
    ell = rng.randbelow(3)
    labels = ["p"] + [f"c{i}" for i in range(1, m)]
    universe = list(range(m))

    def draw() -> Vote:
        return Vote(tuple(rng.sample(universe, t)))

    votes = tuple(draw() for _ in range(n))
    if kind is ControlKind.CCDV:
        ell = min(ell, n)
        pool = ()
    else:
        pool = tuple(draw() for _ in range(max(ell, rng.randbelow(7))))
    e = Election(tuple(labels), frozenset(universe), 0, votes, Rule.UP, t_cap=t)
    return ControlInstance(kind, e, ell, pool_votes=pool)
