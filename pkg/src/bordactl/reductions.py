"""Dominating-set gadget constructions that emit control instances.

Each generator turns a graph and a budget into a control instance whose
feasibility matches the existence of a dominating set of that size, plus
a witness map sending each vertex to its solution-relevant gadget (a
candidate id, or an expanded ballot index for vote control).  Every
construction asserts its pre-control score identities at emission time
and refuses to proceed if they fail, so a miswired gadget can never leak
out silently.

Naming is deterministic (c1_i, c2_i, x_i_j, y_i_j, z_i_j, ch, cw, ca,
cb, p, dum_i), so emitted files are byte-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .control import ControlInstance, ControlKind
from .election import Election, Rule, Vote, diff, total_scores, votes_subset
from .graphs import Graph, closed_neighborhood


class ReductionPreconditionError(ValueError):
    pass


class ReductionInvariantError(RuntimeError):
    """An emitted construction failed its own score identities."""


DEFAULT_CCDV_SIZE_LIMIT = 6  # refuse n*k beyond this without force


@dataclass(frozen=True)
class ReductionResult:
    instance: ControlInstance
    witness_map: dict[int, int]
    name: str
    params: dict[str, int]

    def witness_solution(self, dominating_set: frozenset[int]) -> frozenset[int]:
        """Map a dominating set through the witness bijection."""
        return frozenset(self.witness_map[v] for v in dominating_set)


class _Universe:
    """Sequential candidate-id allocator with deterministic labels."""

    def __init__(self) -> None:
        self.labels: list[str] = []

    def one(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def block(self, prefix: str, count: int) -> list[int]:
        return [self.one(f"{prefix}_{j + 1}") for j in range(count)]

    def grouped(self, prefix: str, sizes: list[int]) -> list[list[int]]:
        return [
            [self.one(f"{prefix}_{i + 1}_{j + 1}") for j in range(size)]
            for i, size in enumerate(sizes)
        ]


def _asc(ids) -> tuple[int, ...]:
    return tuple(sorted(ids))


def _desc(ids) -> tuple[int, ...]:
    return tuple(sorted(ids, reverse=True))


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ReductionInvariantError(message)


def _vertex_data(g: Graph) -> tuple[int, list[frozenset[int]], list[int]]:
    if g.n < 1:
        raise ReductionPreconditionError("need at least one vertex")
    closed = [closed_neighborhood(g, v) for v in range(g.n)]
    return g.n, closed, [len(nb) for nb in closed]


def reduce_ccdv(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Vote-deletion instance (complete votes).

    Builds the auxiliary election first to size the per-vertex padding
    blocks Z_i = diff(c1_i, p, aux)/1 - 4 exactly, then emits the full
    three-family vote set.  Instance size grows with n^3*k^2, so emission
    refuses n*k beyond the desk-scale limit unless forced.
    """
    n, closed, d = _vertex_data(g)
    if not n > k >= 1:
        raise ReductionPreconditionError(f"need n > k >= 1, got n={n}, k={k}")
    for v in range(n):
        if d[v] < 2:
            raise ReductionPreconditionError(
                f"vertex {v} has closed neighborhood of size {d[v]} < 2"
            )
    if n * k > DEFAULT_CCDV_SIZE_LIMIT and not force:
        raise ReductionPreconditionError(
            f"n*k = {n * k} exceeds the size guard {DEFAULT_CCDV_SIZE_LIMIT}; pass force to override"
        )
    q = n * k
    r = n * n * k * k

    def neighbors_c1(c1: list[int], v: int) -> list[int]:
        return [c1[u] for u in sorted(closed[v])]

    # auxiliary election: C1, X, Y, cw/ch/p only
    aux_u = _Universe()
    a_c1 = aux_u.block("c1", n)
    a_x = aux_u.grouped("x", [q] * n)
    a_y = aux_u.grouped("y", [r] * n)
    a_cw = aux_u.one("cw")
    a_ch = aux_u.one("ch")
    a_p = aux_u.one("p")
    a_x_all = [c for blk in a_x for c in blk]
    a_y_all = [c for blk in a_y for c in blk]
    aux_votes = []
    for v in range(n):
        nb = neighbors_c1(a_c1, v)
        ranking = (
            _asc(nb)
            + _asc(a_y[v])
            + (a_cw, a_ch, a_p)
            + _asc(a_x[v])
            + _asc(set(a_c1) - set(nb))
            + _asc(set(a_x_all) - set(a_x[v]))
            + _asc(set(a_y_all) - set(a_y[v]))
        )
        aux_votes.append(Vote(ranking))
    aux = Election(
        tuple(aux_u.labels),
        frozenset(range(len(aux_u.labels))),
        a_p,
        tuple(aux_votes),
        Rule.BORDA,
    )
    s: list[int] = []
    for v in range(n):
        doubled = diff(a_c1[v], a_p, aux)
        _check(doubled % 2 == 0, "auxiliary diff is not an integer")
        s_v = doubled // 2 - 4
        _check(s_v >= 0, f"padding size for vertex {v} is negative ({s_v})")
        s.append(s_v)

    # full instance: C1, X, Y, Z, ch, cw, ca, cb, p
    u = _Universe()
    c1 = u.block("c1", n)
    x = u.grouped("x", [q] * n)
    y = u.grouped("y", [r] * n)
    z = u.grouped("z", s)
    ch = u.one("ch")
    cw = u.one("cw")
    ca = u.one("ca")
    cb = u.one("cb")
    p = u.one("p")
    x_all = [c for blk in x for c in blk]
    y_all = [c for blk in y for c in blk]
    z_all = [c for blk in z for c in blk]

    v1 = []
    v2 = []
    v3 = []
    for v in range(n):
        nb = neighbors_c1(c1, v)
        rest_c1 = set(c1) - set(nb)
        v1.append(
            Vote(
                _asc(nb)
                + _asc(y[v])
                + (cw, ch, p)
                + _asc(x[v])
                + _asc(rest_c1)
                + _asc(z_all)
                + _asc(set(x_all) - set(x[v]))
                + _asc(set(y_all) - set(y[v]))
                + (cb, ca)
            )
        )
        others = set(c1) - {c1[v]}
        v2.append(
            Vote(
                _asc(others)
                + (cb, ca, p, cw)
                + _asc(z[v])
                + (c1[v],)
                + _asc(set(z_all) - set(z[v]))
                + _asc(x_all)
                + _asc(y_all)
                + (ch,)
            )
        )
        v3.append(
            Vote(
                (p, cw, c1[v])
                + _desc(others)
                + (cb, ca)
                + _desc(z_all)
                + _desc(x_all)
                + _desc(y_all)
                + (ch,)
            )
        )
    election = Election(
        tuple(u.labels),
        frozenset(range(len(u.labels))),
        p,
        tuple(v1 + v2 + v3),
        Rule.BORDA,
    )

    for v in range(n):
        _check(diff(c1[v], p, election) == 0, f"c1_{v + 1} does not tie p overall")
        _check(
            diff(c1[v], p, votes_subset(election, v1)) == 2 * (s[v] + 4),
            f"c1_{v + 1} first-family margin is off",
        )
        for w in range(n):
            expected = -2 * (s[v] + 4) if v == w else 0
            _check(
                diff(c1[v], p, votes_subset(election, [v2[w], v3[w]])) == expected,
                f"pairwise identity fails for c1_{v + 1} against family {w + 1}",
            )
    _check(diff(p, cw, election) == 0, "cw does not tie p")

    inst = ControlInstance(ControlKind.CCDV, election, min(k, election.n_votes))
    witness = {v: v for v in range(n)}  # v1 ballots occupy expanded indices 0..n-1
    params = {
        "n": n,
        "k": k,
        "candidates": len(u.labels),
        "votes": election.n_votes,
        "q": q,
        "r": r,
        "z": sum(s),
    }
    return ReductionResult(inst, witness, "ccdv", params)


def reduce_ccac(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Candidate-addition instance (complete votes): registered mirror
    candidates tie p, and only adding a vertex-candidate from a closed
    neighborhood pushes the matching mirror below p."""
    n, closed, _ = _vertex_data(g)
    u = _Universe()
    c2 = u.block("c2", n)
    p = u.one("p")
    c1 = u.block("c1", n)
    votes = []
    for v in range(n):
        nb = [c1[w] for w in sorted(closed[v])]
        others2 = set(c2) - {c2[v]}
        rest1 = set(c1) - set(nb)
        votes.append(Vote(_asc(others2) + (p,) + _asc(nb) + (c2[v],) + _asc(rest1)))
        votes.append(Vote((c2[v], p) + _desc(others2) + _desc(nb) + _desc(rest1)))
    election = Election(
        tuple(u.labels),
        frozenset(c2) | {p},
        p,
        tuple(votes),
        Rule.BORDA,
    )
    for v in range(n):
        _check(diff(c2[v], p, election) == 0, f"c2_{v + 1} does not tie p")
    inst = ControlInstance(
        ControlKind.CCAC, election, min(k, n), pool_candidates=frozenset(c1)
    )
    witness = {v: c1[v] for v in range(n)}
    params = {"n": n, "k": k, "candidates": len(u.labels), "votes": election.n_votes}
    return ReductionResult(inst, witness, "ccac", params)


def reduce_ccdc(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Candidate-deletion instance (complete votes): per-vertex dummy
    blocks equalize the mirror candidates with p; deleting a vertex
    candidate inside a closed neighborhood shortens the barrier between
    the matching mirror and p."""
    n, closed, d = _vertex_data(g)
    u = _Universe()
    c1 = u.block("c1", n)
    c2 = u.block("c2", n)
    x = u.grouped("x", d)
    p = u.one("p")
    x_all = [c for blk in x for c in blk]
    votes = []
    for v in range(n):
        nb = [c1[w] for w in sorted(closed[v])]
        others2 = set(c2) - {c2[v]}
        rest1 = set(c1) - set(nb)
        votes.append(
            Vote(
                (c2[v],)
                + _asc(nb)
                + (p,)
                + _asc(others2)
                + _asc(x_all)
                + _asc(rest1)
            )
        )
        votes.append(
            Vote(
                _desc(others2)
                + (p,)
                + _asc(x[v])
                + (c2[v],)
                + _asc(set(x_all) - set(x[v]))
                + _asc(c1)
            )
        )
    election = Election(
        tuple(u.labels),
        frozenset(range(len(u.labels))),
        p,
        tuple(votes),
        Rule.BORDA,
    )
    for v in range(n):
        _check(diff(p, c2[v], election) == 0, f"c2_{v + 1} does not tie p")
    inst = ControlInstance(ControlKind.CCDC, election, min(k, election.m - 1))
    witness = {v: c1[v] for v in range(n)}
    params = {"n": n, "k": k, "candidates": len(u.labels), "votes": election.n_votes}
    return ReductionResult(inst, witness, "ccdc", params)


def reduce_2ccac_up(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Two-truncated candidate addition under the rounded-up rule.

    p and every vertex candidate tie with n+1 first places each; adding
    the pool candidate for a vertex pushes every closed neighbor's
    candidate to second place once.  The extra padding unit (sizes n-deg
    and n+1 rather than n-deg-1 and n) keeps any added candidate strictly
    below p even when a vertex dominates the whole graph.
    """
    n, closed, _ = _vertex_data(g)
    u = _Universe()
    c1 = u.block("c1", n)
    x = u.grouped("x", [n - g.degree(v) for v in range(n)])
    y = u.block("y", n + 1)
    p = u.one("p")
    c2 = u.block("c2", n)
    votes = []
    for v in range(n):
        for w in sorted(closed[v]):
            votes.append(Vote((c2[v], c1[w])))
    for v in range(n):
        for xc in x[v]:
            votes.append(Vote((c1[v], xc)))
    for yc in y:
        votes.append(Vote((p, yc)))
    registered = frozenset(c1) | frozenset(c for blk in x for c in blk) | frozenset(y) | {p}
    election = Election(tuple(u.labels), registered, p, tuple(votes), Rule.UP, t_cap=2)
    totals = total_scores(election)
    n1 = len(registered)
    _check(totals[p] == 2 * (n + 1) * (n1 - 1), "p's padded first-place total is off")
    for v in range(n):
        _check(totals[c1[v]] == totals[p], f"c1_{v + 1} does not tie p")
    inst = ControlInstance(
        ControlKind.CCAC, election, min(k, n), pool_candidates=frozenset(c2)
    )
    witness = {v: c2[v] for v in range(n)}
    params = {
        "n": n,
        "k": k,
        "candidates": len(u.labels),
        "votes": election.n_votes,
        "Y": len(y),
        "X": sum(len(blk) for blk in x),
    }
    return ReductionResult(inst, witness, "2ccac-up", params)


def reduce_2ccdc_down(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Two-truncated candidate deletion under the rounded-down rule.

    Vertex candidates lead n two-candidate ballots each and tie p's n
    singleton-boosted ballots; deleting a mirror candidate inside a
    closed neighborhood shortens one ballot led by each neighbor.
    """
    n, closed, d = _vertex_data(g)
    u = _Universe()
    c1 = u.block("c1", n)
    c2 = u.block("c2", n)
    x = u.grouped("x", [n - d[v] for v in range(n)])
    y = u.block("y", n)
    p = u.one("p")
    votes = []
    for v in range(n):
        for w in sorted(closed[v]):
            votes.append(Vote((c1[v], c2[w])))
    for v in range(n):
        for xc in x[v]:
            votes.append(Vote((c1[v], xc)))
    for yc in y:
        votes.append(Vote((p, yc)))
    election = Election(
        tuple(u.labels),
        frozenset(range(len(u.labels))),
        p,
        tuple(votes),
        Rule.DOWN,
        t_cap=2,
    )
    totals = total_scores(election)
    _check(totals[p] == 4 * n, "p's total is off")
    for v in range(n):
        _check(totals[c1[v]] == 4 * n, f"c1_{v + 1} does not score 2n")
        _check(totals[c2[v]] == 2 * d[v], f"c2_{v + 1} does not score deg+1")
    for blk in x:
        for xc in blk:
            _check(totals[xc] == 2, "padding candidate does not score 1")
    for yc in y:
        _check(totals[yc] == 2, "padding candidate does not score 1")
    inst = ControlInstance(ControlKind.CCDC, election, min(k, election.m - 1))
    witness = {v: c2[v] for v in range(n)}
    params = {"n": n, "k": k, "candidates": len(u.labels), "votes": election.n_votes}
    return ReductionResult(inst, witness, "2ccdc-down", params)


def reduce_2ccdc_up(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Two-truncated candidate deletion under the rounded-up rule, for
    regular graphs only.

    p and every vertex candidate get identical first/second place
    profiles (D+1 firsts, n seconds), so they tie; deleting a mirror
    candidate moves p up in one ballot and moves up exactly the vertex
    candidates outside that vertex's closed neighborhood.
    """
    n, closed, _ = _vertex_data(g)
    regular_d = g.regular_degree()
    if regular_d is None:
        degrees = " ".join(f"{v}:{g.degree(v)}" for v in range(n))
        raise ReductionPreconditionError(f"graph is not regular (degrees {degrees})")
    u = _Universe()
    c1 = u.block("c1", n)
    c2 = u.block("c2", n)
    y = u.grouped("y", [regular_d + 1] * n)
    p = u.one("p")
    votes = []
    for v in range(n):
        for w in sorted(closed[v]):
            votes.append(Vote((c1[v], c2[w])))
    for v in range(n):
        for w in sorted(set(range(n)) - closed[v]):
            votes.append(Vote((c2[w], c1[v])))
    for v in range(n):
        for yc in y[v]:
            votes.append(Vote((yc, c1[v])))
    for v in range(n):
        votes.append(Vote((c2[v], p)))
    votes.append(Vote((p,), multiplicity=regular_d + 1))
    election = Election(
        tuple(u.labels),
        frozenset(range(len(u.labels))),
        p,
        tuple(votes),
        Rule.UP,
        t_cap=2,
    )
    totals = total_scores(election)
    for v in range(n):
        _check(totals[c1[v]] == totals[p], f"c1_{v + 1} does not tie p")
    inst = ControlInstance(ControlKind.CCDC, election, min(k, election.m - 1))
    witness = {v: c2[v] for v in range(n)}
    params = {
        "n": n,
        "k": k,
        "candidates": len(u.labels),
        "votes": election.n_votes,
        "D": regular_d,
    }
    return ReductionResult(inst, witness, "2ccdc-up", params)


def reduce_2ccac_down(g: Graph, k: int, *, force: bool = False) -> ReductionResult:
    """Two-truncated candidate addition under the rounded-down rule.

    Every vertex candidate and p score n as singletons; adding a pool
    candidate lengthens p's ballot (always) and the ballots of exactly
    the vertex candidates outside its closed neighborhood.
    """
    n, closed, d = _vertex_data(g)
    u = _Universe()
    c1 = u.block("c1", n)
    p = u.one("p")
    c2 = u.block("c2", n)
    votes = []
    for v in range(n):
        for w in sorted(set(range(n)) - closed[v]):
            votes.append(Vote((c1[v], c2[w])))
    for v in range(n):
        votes.append(Vote((c1[v],), multiplicity=d[v]))
    for v in range(n):
        votes.append(Vote((p, c2[v])))
    election = Election(
        tuple(u.labels),
        frozenset(c1) | {p},
        p,
        tuple(votes),
        Rule.DOWN,
        t_cap=2,
    )
    totals = total_scores(election)
    _check(totals[p] == 2 * n, "p does not score n")
    for v in range(n):
        _check(totals[c1[v]] == 2 * n, f"c1_{v + 1} does not score n")
    inst = ControlInstance(
        ControlKind.CCAC, election, min(k, n), pool_candidates=frozenset(c2)
    )
    witness = {v: c2[v] for v in range(n)}
    params = {"n": n, "k": k, "candidates": len(u.labels), "votes": election.n_votes}
    return ReductionResult(inst, witness, "2ccac-down", params)


def lift_up_to_av(inst: ControlInstance) -> ControlInstance:
    """Switch a rounded-up instance to the averaged rule by registering
    |C| - t - 1 never-ranked dummy candidates.

    When every ballot has projected length exactly t, the dummies make
    every pairwise score difference among original candidates identical
    under the two rules (and dummies can never win uniquely).
    """
    base = inst.base
    if base.rule is not Rule.UP or base.t_cap is None:
        raise ReductionPreconditionError("lift expects a top-truncated rounded-up instance")
    extra = base.m - base.t_cap - 1
    if extra < 0:
        raise ReductionPreconditionError(
            f"need at least t+1 = {base.t_cap + 1} registered candidates, got {base.m}"
        )
    start = len(base.labels)
    labels = base.labels + tuple(f"dum_{j + 1}" for j in range(extra))
    active = base.active | frozenset(range(start, start + extra))
    lifted = Election(labels, active, base.special, base.votes, Rule.AV, base.t_cap)
    return replace(inst, base=lifted)


REDUCTIONS = {
    "ccdv": reduce_ccdv,
    "ccac": reduce_ccac,
    "ccdc": reduce_ccdc,
    "2ccac-up": reduce_2ccac_up,
    "2ccdc-down": reduce_2ccdc_down,
    "2ccdc-up": reduce_2ccdc_up,
    "2ccac-down": reduce_2ccac_down,
}
