"""Line-oriented text formats for elections, control instances, graphs.

Election files:

    election <m> <t|complete> <borda|up|down|av>
    special <label>
    candidates <label_0> ... <label_{m-1}>
    <multiplicity>: <label> > <label> > ...

Instance files extend the election format with `kind <...>` and
`budget <l>` lines right after the candidates line, a `pool-candidates`
line (candidate addition), and a `pool-votes` marker followed by vote
lines (vote addition).  Graph files are `graph <n>` followed by one
`<u> <v>` pair per line.

Parsing is strict: unknown labels, duplicate labels or edges, over-length
rankings and malformed lines are hard errors carrying the line number.
Blank lines are ignored.  Serialization is canonical, so serialize(parse(
text)) == text for files this package emits.
"""

from __future__ import annotations

from .control import ControlInstance, ControlKind
from .election import Election, ElectionError, Rule, Vote
from .graphs import Graph


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_RULES = {r.value: r for r in Rule}
_KINDS = {k.value: k for k in ControlKind}


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(no, line.strip()) for no, line in enumerate(text.splitlines(), 1) if line.strip()]


def _int(token: str, line_no: int, what: str, minimum: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(line_no, f"{what} must be an integer, got {token!r}") from None
    if value < minimum:
        raise ParseError(line_no, f"{what} must be >= {minimum}, got {value}")
    return value


def _parse_vote_line(
    line_no: int,
    line: str,
    ids: dict[str, int],
    t_cap: int | None,
    complete_over: set[int] | None,
) -> Vote:
    left, sep, right = line.partition(":")
    if not sep:
        raise ParseError(line_no, "expected '<multiplicity>: <ranking>'")
    mult = _int(left.strip(), line_no, "multiplicity", 1)
    right = right.strip()
    ranking: list[int] = []
    if right:
        for token in right.split(">"):
            label = token.strip()
            if not label:
                raise ParseError(line_no, "empty candidate between '>' separators")
            if label not in ids:
                raise ParseError(line_no, f"unknown candidate {label!r}")
            ranking.append(ids[label])
    if len(set(ranking)) != len(ranking):
        raise ParseError(line_no, "duplicate candidate in ranking")
    if t_cap is not None and len(ranking) > t_cap:
        raise ParseError(line_no, f"ranking of length {len(ranking)} exceeds cap {t_cap}")
    if complete_over is not None and set(ranking) != complete_over:
        raise ParseError(line_no, "complete vote must rank every candidate exactly once")
    return Vote(tuple(ranking), mult)


def _parse_labels(line_no: int, tokens: list[str], seen: dict[str, int]) -> list[str]:
    if not tokens:
        raise ParseError(line_no, "expected at least one candidate label")
    for label in tokens:
        if ">" in label or ":" in label:
            raise ParseError(line_no, f"illegal candidate label {label!r}")
        if label in seen:
            raise ParseError(line_no, f"duplicate candidate label {label!r}")
        seen[label] = len(seen)
    return tokens


def _parse_common(
    text: str, *, instance: bool
) -> tuple[Election, ControlKind | None, int, frozenset[int], tuple[Vote, ...]]:
    lines = _content_lines(text)
    cursor = 0

    def take(expected: str) -> tuple[int, list[str]]:
        nonlocal cursor
        if cursor >= len(lines):
            raise ParseError(len(lines) + 1, f"missing {expected!r} line")
        no, line = lines[cursor]
        tokens = line.split()
        if tokens[0] != expected:
            raise ParseError(no, f"expected {expected!r} line, got {tokens[0]!r}")
        cursor += 1
        return no, tokens[1:]

    no, header = take("election")
    if len(header) != 3:
        raise ParseError(no, "expected 'election <m> <t|complete> <rule>'")
    m = _int(header[0], no, "candidate count", 1)
    if header[1] == "complete":
        t_cap: int | None = None
    else:
        t_cap = _int(header[1], no, "truncation cap", 1)
    if header[2] not in _RULES:
        raise ParseError(no, f"unknown rule {header[2]!r}")
    rule = _RULES[header[2]]
    if (rule is Rule.BORDA) != (t_cap is None):
        raise ParseError(no, "rule 'borda' pairs with 'complete'; truncated rules need a cap")

    no, tokens = take("special")
    if len(tokens) != 1:
        raise ParseError(no, "expected 'special <label>'")
    special_label = tokens[0]

    ids: dict[str, int] = {}
    no, tokens = take("candidates")
    active_labels = _parse_labels(no, tokens, ids)
    if len(active_labels) != m:
        raise ParseError(no, f"declared {m} candidates but listed {len(active_labels)}")
    if special_label not in ids:
        raise ParseError(no, f"special candidate {special_label!r} is not listed")

    kind: ControlKind | None = None
    budget = 0
    pool_candidates: frozenset[int] = frozenset()
    if instance:
        no, tokens = take("kind")
        if len(tokens) != 1 or tokens[0] not in _KINDS:
            raise ParseError(no, f"expected 'kind <{'|'.join(_KINDS)}>'")
        kind = _KINDS[tokens[0]]
        no, tokens = take("budget")
        if len(tokens) != 1:
            raise ParseError(no, "expected 'budget <l>'")
        budget = _int(tokens[0], no, "budget", 0)
        if kind is ControlKind.CCAC:
            no, tokens = take("pool-candidates")
            pool_labels = _parse_labels(no, tokens, ids)
            pool_candidates = frozenset(ids[label] for label in pool_labels)

    active = frozenset(range(m))
    complete_over = set(ids.values()) if rule is Rule.BORDA else None
    votes: list[Vote] = []
    pool_votes: list[Vote] = []
    section = votes
    while cursor < len(lines):
        no, line = lines[cursor]
        cursor += 1
        if line.split()[0] == "pool-votes":
            if not instance or kind is not ControlKind.CCAV:
                raise ParseError(no, "'pool-votes' is only legal in a vote-addition instance")
            if section is pool_votes:
                raise ParseError(no, "duplicate 'pool-votes' marker")
            section = pool_votes
            continue
        section.append(_parse_vote_line(no, line, ids, t_cap, complete_over))
    if instance and kind is ControlKind.CCAV and section is votes:
        raise ParseError(len(lines) + 1, "vote-addition instance is missing 'pool-votes'")

    labels = tuple(label for label, _ in sorted(ids.items(), key=lambda kv: kv[1]))
    try:
        election = Election(labels, active, ids[special_label], tuple(votes), rule, t_cap)
    except ElectionError as exc:
        raise ParseError(1, str(exc)) from exc
    return election, kind, budget, pool_candidates, tuple(pool_votes)


def parse_election(text: str) -> Election:
    election, _, _, _, _ = _parse_common(text, instance=False)
    return election


def parse_instance(text: str) -> ControlInstance:
    election, kind, budget, pool_candidates, pool_votes = _parse_common(text, instance=True)
    assert kind is not None
    try:
        return ControlInstance(
            kind,
            election,
            budget,
            pool_votes=pool_votes,
            pool_candidates=pool_candidates,
        )
    except ElectionError as exc:
        raise ParseError(1, str(exc)) from exc


def _header_lines(e: Election) -> list[str]:
    t_form = "complete" if e.t_cap is None else str(e.t_cap)
    active_labels = " ".join(e.labels[c] for c in sorted(e.active))
    return [
        f"election {e.m} {t_form} {e.rule.value}",
        f"special {e.labels[e.special]}",
        f"candidates {active_labels}",
    ]


def _vote_line(e: Election, vote: Vote) -> str:
    if not vote.ranking:
        return f"{vote.multiplicity}:"
    return f"{vote.multiplicity}: " + " > ".join(e.labels[c] for c in vote.ranking)


def serialize_election(e: Election) -> str:
    lines = _header_lines(e) + [_vote_line(e, v) for v in e.votes]
    return "\n".join(lines) + "\n"


def serialize_instance(inst: ControlInstance) -> str:
    e = inst.base
    lines = _header_lines(e)
    lines.append(f"kind {inst.kind.value}")
    lines.append(f"budget {inst.budget}")
    if inst.kind is ControlKind.CCAC:
        pool_labels = " ".join(e.labels[c] for c in sorted(inst.pool_candidates))
        lines.append(f"pool-candidates {pool_labels}")
    lines.extend(_vote_line(e, v) for v in e.votes)
    if inst.kind is ControlKind.CCAV:
        lines.append("pool-votes")
        lines.extend(_vote_line(e, v) for v in inst.pool_votes)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "missing 'graph <n>' line")
    no, line = lines[0]
    tokens = line.split()
    if tokens[0] != "graph" or len(tokens) != 2:
        raise ParseError(no, "expected 'graph <n>'")
    n = _int(tokens[1], no, "vertex count", 0)
    edges: set[tuple[int, int]] = set()
    for no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(no, "expected '<u> <v>'")
        u = _int(tokens[0], no, "vertex", 0)
        v = _int(tokens[1], no, "vertex", 0)
        if u == v:
            raise ParseError(no, f"self-loop at vertex {u}")
        if u >= n or v >= n:
            raise ParseError(no, f"edge ({u}, {v}) references a vertex >= {n}")
        edge = (min(u, v), max(u, v))
        if edge in edges:
            raise ParseError(no, f"duplicate edge ({u}, {v})")
        edges.add(edge)
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"] + [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def serialize_witness_map(witness_map: dict[int, int]) -> str:
    lines = [f"{v}\t{gadget}" for v, gadget in sorted(witness_map.items())]
    return "\n".join(lines) + "\n" if lines else ""
