"""Codeword graphs, feasible walks and order-forcing.

Walk positions in reports are 1-based, matching the usual ``v_1, ..., v_k``
notation for walks.

Feasibility is checked incrementally during search: a feasible walk
``v_1..v_{k-1}`` extends feasibly by ``v_k`` iff ``v_k`` meets the union of
the earlier vertices only inside ``v_{k-1}``.  (A neuron shared by ``v_i`` and
``v_{k-1}`` already lies in every vertex between them, so the triples ending at
``v_k`` reduce to that single test.)  The same observation makes the search
state ``(current vertex, union so far)``; the union only grows, and while it
stays fixed the current vertex strictly shrinks, so feasible walks between two
codewords are finite in number and can be counted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .core import Code, is_subset
from .errors import InfeasibleWalk, InvalidParameter, NoFeasiblePath, NotAWalk, UnknownCodeword


@dataclass(frozen=True)
class CodewordGraph:
    code: Code
    adjacency: dict

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.code.codewords

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def adjacent(self, a: int, b: int) -> bool:
        return a != b and (is_subset(a, b) or is_subset(b, a))

    def edges(self) -> list[tuple[int, int]]:
        order = {v: k for k, v in enumerate(self.vertices)}
        return [(a, b) for a in self.vertices for b in self.adjacency[a] if order[a] < order[b]]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def codeword_graph(code: Code) -> CodewordGraph:
    """Strict-containment graph on the codewords, neighbors in canonical order."""
    words = code.codewords
    adj = {}
    for a in words:
        adj[a] = tuple(b for b in words if a != b and (is_subset(a, b) or is_subset(b, a)))
    return CodewordGraph(code, adj)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness_violation: tuple[int, int, int] | None = None

    def describe(self, code: Code, walk: Sequence[int]) -> str:
        if self.feasible:
            return "feasible"
        i, m, j = self.witness_violation
        a, b, c = walk[i - 1], walk[j - 1], walk[m - 1]
        return (
            f"infeasible at (i, m, j) = ({i}, {m}, {j}): "
            f"{code.fmt(a)} & {code.fmt(b)} = {code.fmt(a & b)} is not inside {code.fmt(c)}"
        )


def _resolve(code: Code, walk: Iterable) -> list[int]:
    return [code.codeword(v) for v in walk]


def _check_walk(code: Code, walk: Sequence[int]) -> None:
    for v in walk:
        if v not in code:
            raise UnknownCodeword(f"{code.fmt(v)} is not a codeword")
    for a, b in zip(walk, walk[1:]):
        if a == b or not (is_subset(a, b) or is_subset(b, a)):
            raise NotAWalk(f"{code.fmt(a)} and {code.fmt(b)} are not adjacent")


def is_feasible_walk(code: Code, walk: Sequence) -> FeasibilityReport:
    """Check a walk against the triple condition ``v_i & v_j <= v_m`` for all ``i < m < j``.

    The first violating triple in lexicographic ``(i, m, j)`` order is reported.
    """
    if not walk:
        raise NotAWalk("a walk needs at least one vertex")
    w = _resolve(code, walk)
    _check_walk(code, w)
    k = len(w)
    for i in range(k):
        for m in range(i + 1, k):
            for j in range(m + 1, k):
                if not is_subset(w[i] & w[j], w[m]):
                    return FeasibilityReport(False, (i + 1, m + 1, j + 1))
    return FeasibilityReport(True)


def _can_extend(seen: int, last: int, v: int) -> bool:
    return v & seen & ~last == 0


def iter_feasible_paths(code: Code, source, target, graph: CodewordGraph | None = None) -> Iterator[list[int]]:
    s, t = code.codeword(source), code.codeword(target)
    if s == t:
        yield [s]
        return
    g = graph or codeword_graph(code)
    path = [s]
    on_path = {s}

    def dfs(seen):
        last = path[-1]
        for v in g.adjacency[last]:
            if v in on_path or not _can_extend(seen, last, v):
                continue
            if v == t:
                yield path + [t]
                continue
            # v will sit strictly between earlier vertices and t
            if t & seen & ~v:
                continue
            path.append(v)
            on_path.add(v)
            yield from dfs(seen | v)
            path.pop()
            on_path.discard(v)

    yield from dfs(s)


def enumerate_feasible_paths(code: Code, source, target, graph: CodewordGraph | None = None) -> list[list[int]]:
    """All simple feasible paths from ``source`` to ``target`` in DFS order."""
    return list(iter_feasible_paths(code, source, target, graph))


def forced_between(code: Code, source, target) -> frozenset[int]:
    """Vertices lying on every feasible path between the endpoints (endpoints included)."""
    paths = enumerate_feasible_paths(code, source, target)
    if not paths:
        raise NoFeasiblePath(f"no feasible path from {code.fmt(code.codeword(source))} to {code.fmt(code.codeword(target))}")
    common = set(paths[0])
    for p in paths[1:]:
        common.intersection_update(p)
    return frozenset(common)


def is_subsequence(seq: Sequence, walk: Sequence) -> bool:
    it = iter(walk)
    return all(any(x == y for y in it) for x in seq)


def is_order_forced(code: Code, seq: Sequence) -> bool:
    if not seq:
        raise InvalidParameter("order-forcing needs a nonempty sequence")
    s = _resolve(code, seq)
    paths = enumerate_feasible_paths(code, s[0], s[-1])
    if not paths:
        raise NoFeasiblePath(f"no feasible path from {code.fmt(s[0])} to {code.fmt(s[-1])}")
    return all(is_subsequence(s, p) for p in paths)


def order_forcing_counterexample(code: Code, seq: Sequence) -> list[int] | None:
    """A feasible path between the endpoints missing ``seq`` as a subsequence, if any."""
    s = _resolve(code, seq)
    for p in iter_feasible_paths(code, s[0], s[-1]):
        if not is_subsequence(s, p):
            return p
    return None


# -- walks ---------------------------------------------------------------------


def iter_feasible_walks(code: Code, source, target, max_edges: int, graph: CodewordGraph | None = None) -> Iterator[list[int]]:
    """Feasible walks from ``source`` to ``target`` with at most ``max_edges`` edges.

    Walks may revisit vertices (including ``target``); each prefix ending at
    ``target`` is yielded once.
    """
    s, t = code.codeword(source), code.codeword(target)
    g = graph or codeword_graph(code)
    walk = [s]

    def dfs(seen):
        last = walk[-1]
        if last == t:
            yield list(walk)
        if len(walk) > max_edges:
            return
        for v in g.adjacency[last]:
            if not _can_extend(seen, last, v) or t & seen & ~v:
                continue
            walk.append(v)
            yield from dfs(seen | v)
            walk.pop()

    yield from dfs(s)


@dataclass(frozen=True)
class WalkCensus:
    count: int
    max_edges: int | None


def feasible_walk_census(code: Code, source, target, graph: CodewordGraph | None = None) -> WalkCensus:
    """Exact number of feasible walks between two codewords and the longest one's edge count.

    Dynamic programming over the finite acyclic state space (vertex, union so far).
    """
    s, t = code.codeword(source), code.codeword(target)
    g = graph or codeword_graph(code)

    @lru_cache(maxsize=None)
    def visit(v, seen):
        count = 1 if v == t else 0
        longest = 0 if v == t else None
        for u in g.adjacency[v]:
            if not _can_extend(seen, v, u) or t & seen & ~u:
                continue
            c, m = visit(u, seen | u)
            count += c
            if m is not None and (longest is None or m + 1 > longest):
                longest = m + 1
        return count, longest

    count, longest = visit(s, s)
    visit.cache_clear()
    return WalkCensus(count, longest)


@dataclass(frozen=True)
class StrongReport:
    strong: bool
    bound: int
    simple_paths: int
    deviation: list[int] | None
    walk_count: int
    longest_walk: int | None

    @property
    def complete(self) -> bool:
        """Whether the bound reaches the longest feasible walk between the endpoints."""
        return self.longest_walk is None or self.bound >= self.longest_walk


def default_walk_bound(code: Code) -> int:
    return 2 * len(code)


def strong_order_forcing(code: Code, path: Sequence, bound: int | None = None) -> StrongReport:
    """Decide strong order-forcing by exhaustive simple paths plus a bounded walk search.

    ``bound`` caps walk length in edges (default ``2 * len(code)``).  Any walk
    the bounded search turns up is a genuine counterexample; ``walk_count``
    and ``longest_walk`` come from an exact count and say whether the bound
    was large enough to be conclusive.
    """
    p = _resolve(code, path)
    report = is_feasible_walk(code, p)
    if not report.feasible:
        raise InfeasibleWalk(report.describe(code, p), report)
    if bound is None:
        bound = default_walk_bound(code)
    g = codeword_graph(code)
    s, t = p[0], p[-1]
    paths = enumerate_feasible_paths(code, s, t, g)
    deviation = None
    if paths != [p]:
        deviation = next((q for q in paths if q != p), None)
    if deviation is None:
        deviation = next((w for w in iter_feasible_walks(code, s, t, bound, g) if w != p), None)
    census = feasible_walk_census(code, s, t, g)
    strong = paths == [p] and deviation is None
    return StrongReport(strong, bound, len(paths), deviation, census.count, census.max_edges)


def is_strongly_order_forced(code: Code, path: Sequence, bound: int | None = None) -> bool:
    return strong_order_forcing(code, path, bound).strong


def reduce_walk_to_path(code: Code, walk: Sequence) -> list[int]:
    """Cut out the detours between repeated vertices of a feasible walk."""
    w = _resolve(code, walk)
    report = is_feasible_walk(code, w)
    if not report.feasible:
        raise InfeasibleWalk(report.describe(code, w), report)
    while True:
        first = {}
        for j, v in enumerate(w):
            if v in first:
                i = first[v]
                w = w[: i + 1] + w[j + 1:]
                break
            first[v] = j
        else:
            return w
