"""Independent brute-force oracles used by the test-suite.

Nothing here shares search code with the library: simple paths come from
networkx, feasibility from the literal triple condition, trunks from all
neuron subsets.
"""

import random
from itertools import combinations

import networkx as nx

from neuralcodes.core import Code, NeuronUniverse


def subset(a, b):
    return a & ~b == 0


def triple_feasible(walk):
    k = len(walk)
    return all(
        subset(walk[i] & walk[j], walk[m])
        for i in range(k)
        for m in range(i + 1, k)
        for j in range(m + 1, k)
    )


def containment_graph(code):
    g = nx.Graph()
    g.add_nodes_from(code.codewords)
    for a, b in combinations(code.codewords, 2):
        if subset(a, b) or subset(b, a):
            g.add_edge(a, b)
    return g


def brute_feasible_paths(code, s, t, g=None):
    if s == t:
        return [[s]]
    g = g or containment_graph(code)
    return [p for p in nx.all_simple_paths(g, s, t) if triple_feasible(p)]


def brute_feasible_walks(code, s, t, max_edges):
    """Feasible walks grown one vertex at a time, each prefix checked by the triple loop."""
    g = containment_graph(code)
    out = []

    def grow(walk):
        if walk[-1] == t:
            out.append(list(walk))
        if len(walk) > max_edges:
            return
        for v in sorted(g.neighbors(walk[-1])):
            walk.append(v)
            if triple_feasible(walk):
                grow(walk)
            walk.pop()

    grow([s])
    return out


def brute_trunks(code):
    out = {frozenset()}
    for s in range(1 << code.n):
        out.add(frozenset(c for c in code if subset(s, c)))
    return out


def brute_is_morphism(source, target, assignment):
    src_trunks = brute_trunks(source)
    for t in brute_trunks(target):
        pre = frozenset(c for c in source if assignment[c] in t)
        if pre not in src_trunks:
            return False
    return True


def brute_trivial_or_redundant(code):
    """Every (neuron, witness) pair making a neuron trivial (witness None) or redundant."""
    out = []
    n = code.n
    for j in range(n):
        tj = frozenset(c for c in code if c >> j & 1)
        if not tj:
            out.append((j, None))
            continue
        others = [k for k in range(n) if k != j]
        for size in range(len(others) + 1):
            for combo in combinations(others, size):
                s = sum(1 << k for k in combo)
                if frozenset(c for c in code if subset(s, c)) == tj:
                    out.append((j, s))
    return out


def random_code(rng: random.Random, max_words=12, n_range=(2, 6), with_empty=None):
    n = rng.randint(*n_range)
    size = rng.randint(1, max_words)
    words = set()
    while len(words) < min(size, 1 << n):
        words.add(rng.getrandbits(n))
    if with_empty is True:
        words.add(0)
        while len(words) > max_words:
            words.discard(next(w for w in words if w))
    return Code(NeuronUniverse(tuple(str(k + 1) for k in range(n))), words)


def _new_triples_ok(path):
    """Triples (i, m, k) ending at the last vertex; ``meet`` is the intersection of path[i+1:k]."""
    k = len(path) - 1
    v = path[k]
    meet = -1
    for i in range(k - 1, -1, -1):
        if not subset(path[i] & v, meet):
            return False
        meet &= path[i]
    return True


def pruned_brute_feasible_paths(code, s, t, g=None):
    """Simple paths grown vertex by vertex, keeping a prefix only if the literal
    triple condition holds on it.  Exact because feasibility is prefix closed."""
    if s == t:
        return [[s]]
    g = g or containment_graph(code)
    out = []

    def grow(path):
        for v in sorted(g.neighbors(path[-1])):
            if v in path:
                continue
            path.append(v)
            if _new_triples_ok(path):
                if v == t:
                    out.append(list(path))
                else:
                    grow(path)
            path.pop()

    grow([s])
    return out


def feasible_paths_from(code, s, g=None):
    """Map each target to its feasible simple paths from ``s``.

    Every prefix of a feasible path is a feasible path to its last vertex, so
    one search per source collects the paths to all targets.
    """
    g = g or containment_graph(code)
    out = {t: [] for t in code.codewords}
    out[s].append([s])

    def grow(path, on):
        for v in sorted(g.neighbors(path[-1])):
            if v in on:
                continue
            path.append(v)
            if _new_triples_ok(path):
                out[v].append(list(path))
                on.add(v)
                grow(path, on)
                on.discard(v)
            path.pop()

    grow([s], {s})
    return out
