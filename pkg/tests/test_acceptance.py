"""Acceptance suite: ten criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even under
output capture) or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import (  # noqa: E402
    brute_feasible_paths,
    brute_trivial_or_redundant,
    brute_trunks,
    containment_graph,
    feasible_paths_from,
    random_code,
    subset,
)
from neuralcodes.algebra import CodeMap, covering_map, is_minor_witness, is_morphism, reduce_code  # noqa: E402
from neuralcodes.certificates import (  # noqa: E402
    Certificate,
    DisjointNeurons,
    ForcedBetween,
    OrderForced,
    UniqueFeasiblePath,
    builtin_certificates,
    verify_certificate,
)
from neuralcodes.core import is_intersection_complete, is_isomorphic, maximal_codewords  # noqa: E402
from neuralcodes.families import gen_Ln, gen_Pd, registry  # noqa: E402
from neuralcodes.geometry import code_of_1d_realization, load_realization, segment_atom_trace  # noqa: E402
from neuralcodes.graph import (  # noqa: E402
    codeword_graph,
    enumerate_feasible_paths,
    forced_between,
    is_feasible_walk,
    strong_order_forcing,
)

ROOT = Path(__file__).resolve().parent.parent

# registry names plus the family instances small enough for exhaustive oracles
REGISTRY_CODES = ["example2.3", "example2.8", "wheel", "C0", "R", "T",
                  "Ln:0", "Ln:1", "Ln:2", "Ln:3", "Ln:4", "Ln:5", "Pd:1", "Pd:2"]

P2_LISTING = [
    ["1", "2", "3bar"], ["1", "2bar", "3"], ["1bar", "2", "3"], ["1bar", "2bar", "3bar", "4bar"],
    ["1", "2"], ["1", "3"], ["2", "3"], ["1", "2bar"], ["1", "3bar"], ["2", "1bar"], ["2", "3bar"],
    ["3", "1bar"], ["3", "2bar"], ["1"], ["2"], ["3"], ["1bar"], ["2bar"], ["3bar"], [],
]


def ws(code, text):
    return [code.codeword(t) for t in text.split()]


def label_sets(code, words=None):
    return [frozenset(code.labels_of(w)) for w in (code if words is None else words)]


# -- criteria --------------------------------------------------------------------


def criterion_1():
    code = registry("example2.3").code
    # strict containments worked out by hand
    hand = {
        ("{}", x) for x in ("13", "14", "15", "125", "1235", "1245", "1256")
    } | {("13", "1235"), ("14", "1245"), ("15", "125"), ("15", "1235"), ("15", "1245"), ("15", "1256"),
         ("125", "1235"), ("125", "1245"), ("125", "1256")}
    expected = {frozenset((code.codeword(a), code.codeword(b))) for a, b in hand}
    got = {frozenset(e) for e in codeword_graph(code).edges()}
    assert got == expected and len(got) == 16, "adjacency"
    bad = ws(code, "13 1235 15 1245 14")
    rep = is_feasible_walk(code, bad)
    assert not rep.feasible
    i, m, j = rep.witness_violation
    assert 1 <= i < m < j <= len(bad) and not subset(bad[i - 1] & bad[j - 1], bad[m - 1]), "violating triple"
    assert enumerate_feasible_paths(code, "13", "14") == [ws(code, "13 1235 125 1245 14")]
    assert code.codeword("1245") in forced_between(code, "14", "15")
    return f"16 edges, witness {rep.witness_violation}, unique 13-14 path, 1245 forced"


def criterion_2():
    code = registry("wheel").code
    premises = (
        ForcedBetween(("1", "2"), ("1", "2", "5"), ("1", "2", "3")),
        OrderForced((("1", "2", "3"), ("2", "3"), ("2", "3", "4"), ("3", "4"), ("3", "4", "5"))),
        ForcedBetween(("1", "2", "3"), ("1", "2"), ("2", "3", "4")),
    )
    rep = verify_certificate(code, Certificate("wheel", premises, "wheel premises"))
    assert rep.ok, [r.detail for r in rep.results]
    return "3/3 premises verify"


def criterion_3():
    code = registry("example2.8").code
    path = ws(code, "145 45 2456 46 467 47 347")
    rep = strong_order_forcing(code, path)
    assert rep.strong and rep.bound == 2 * len(code) == 24
    assert rep.walk_count == 1 and rep.complete
    return f"strong, bound {rep.bound}, exact walk count {rep.walk_count}"


def criterion_4():
    cert = builtin_certificates()["R"]
    code = registry("R").code
    ufps = [p for p in cert.premises if isinstance(p, UniqueFeasiblePath)]
    assert len(ufps) == 6
    rep = verify_certificate(code, cert)
    assert rep.ok, [r.detail for r in rep.results if not r.ok]
    assert any(isinstance(p, DisjointNeurons) and {p.i, p.j} == {"5", "6"} for p in cert.premises)
    rng = random.Random(37)
    names = [tuple(code.labels_of(w)) for w in code]
    detected = 0
    for _ in range(100):
        p = rng.choice(ufps)
        k = rng.randrange(len(p.path))
        new = rng.choice([w for w in names if w != tuple(p.path[k])])
        path = p.path[:k] + (new,) + p.path[k + 1:]
        bad = Certificate("R", (UniqueFeasiblePath(p.source, p.target, path),), "mutant")
        detected += not verify_certificate(code, bad).ok
    assert detected == 100, f"{detected}/100 mutations detected"
    return "6 paths + disjointness verify, 100/100 mutations detected"


def criterion_5():
    cert = builtin_certificates()["T"]
    code = registry("T").code
    assert sum(isinstance(p, UniqueFeasiblePath) for p in cert.premises) == 4
    assert any(isinstance(p, DisjointNeurons) and {p.i, p.j} == {"4", "5"} for p in cert.premises)
    rep = verify_certificate(code, cert)
    assert rep.ok, [r.detail for r in rep.results if not r.ok]
    return "4 paths + disjointness verify"


def criterion_6():
    for n in range(1, 6):
        code = gen_Ln(n)
        a, b = str(n + 5), str(n + 6)
        path = [code.word(x) for x in (["4", a], ["4", a, b], ["4", b], ["3", "4", b])]
        assert enumerate_feasible_paths(code, path[0], path[-1]) == [path], f"n={n}"
        assert all(w & code.word([a, b]) for w in path), f"n={n}"
        assert verify_certificate(code, builtin_certificates()[f"Ln:{n}"]).ok, f"n={n}"
    return "n=1..5 unique paths inside U_{n+5} and U_{n+6}"


def criterion_7():
    for d in range(1, 7):
        p = gen_Pd(d)
        assert is_intersection_complete(p), f"d={d}"
        assert len(maximal_codewords(p)) == d + 2, f"d={d}"
        assert len(p) == 2 ** (d + 1) + (d + 1) * 2 ** d, f"d={d}"
    listed = {frozenset(c) for c in P2_LISTING}
    assert len(listed) == len(P2_LISTING) == 20 == len(gen_Pd(2))
    assert set(label_sets(gen_Pd(2))) == listed
    return "d=1..6 complete, d+2 maximal, sizes match; P_2 equals listing"


def _trunk_cache():
    cache = {}

    def get(code):
        key = (code.labels, code.codewords)
        if key not in cache:
            cache[key] = brute_trunks(code)
        return cache[key]

    return get


def _brute_morphism(f, trunks):
    src = trunks(f.source)
    return all(f.preimage(t) in src for t in trunks(f.target))


def criterion_8():
    m = is_isomorphic(gen_Ln(0), registry("C0").code)
    assert m == {"1": "1", "2": "3", "3": "2", "4": "5", "5": "4", "6": "6"}, m
    trunks = _trunk_cache()
    rng = random.Random(8)
    compared = 0
    for name in REGISTRY_CODES:
        code = registry(name).code
        maps = [CodeMap(code, code, {c: c for c in code})]
        maps += [CodeMap(code, code, {c: rng.choice(code.codewords) for c in code}) for _ in range(3)]
        if code.n <= 10:
            maps += [covering_map(code, code.labels[0])]
        for f in maps:
            assert is_morphism(f) == _brute_morphism(f, trunks), name
            compared += 1
        for lab in code.labels:
            assert is_minor_witness(covering_map(code, lab)), (name, lab)
    for _ in range(200):
        a = random_code(rng, max_words=10, n_range=(2, 5))
        b = random_code(rng, max_words=10, n_range=(1, 5))
        f = CodeMap(a, b, {c: rng.choice(b.codewords) for c in a})
        assert is_morphism(f) == _brute_morphism(f, trunks)
        compared += 1
    reduced = 0
    for code in [registry(n).code for n in REGISTRY_CODES] + [
        random_code(rng, max_words=10) for _ in range(50)
    ]:
        red, _ = reduce_code(code)
        again, log = reduce_code(red)
        assert again == red and not log
        assert not brute_trivial_or_redundant(red)
        reduced += 1
    return f"iso permutation ok, {compared} maps agree with oracle, covering maps surjective, {reduced} reductions clean"


NX_ORACLE_MAX = 9  # networkx simple-path enumeration explodes on denser codes


def _oracle_paths(code, s, g):
    if len(code) <= NX_ORACLE_MAX:
        return {t: brute_feasible_paths(code, s, t, g) for t in code.codewords}
    return feasible_paths_from(code, s, g)


def _agree(code):
    g = containment_graph(code)
    pairs = 0
    for s in code.codewords:
        oracle = _oracle_paths(code, s, g)
        for t in code.codewords:
            assert sorted(enumerate_feasible_paths(code, s, t)) == sorted(oracle[t]), (code, s, t)
            pairs += 1
    return pairs


def criterion_9():
    pairs = sum(_agree(registry(name).code) for name in REGISTRY_CODES)
    rng = random.Random(9)
    sizes = []
    for _ in range(100):
        code = random_code(rng, max_words=12)
        pairs += _agree(code)
        sizes.append(len(code))
    return f"{len(REGISTRY_CODES)} registry codes + 100 random codes (max {max(sizes)} codewords), {pairs} ordered pairs"


def criterion_10():
    R = load_realization(ROOT / "fixtures" / "p1_open.json")
    code = code_of_1d_realization(R)
    p1 = gen_Pd(1)
    assert set(label_sets(code)) == set(label_sets(p1))
    assert code == p1
    p1_sets = set(label_sets(p1))
    rng = random.Random(10)

    def rnd():
        return Fraction(rng.randint(-40, 40), rng.randint(1, 8))

    for _ in range(500):
        a = rnd()
        b = a
        while b == a:
            b = rnd()
        tr = segment_atom_trace(R, (a,), (b,))
        runs = label_sets(code, tr.codewords)
        assert all(s in p1_sets for s in runs)
        walk = [code.word(sorted(s)) for s in runs]
        assert is_feasible_walk(code, walk).feasible
        back = segment_atom_trace(R, (b,), (a,))
        assert back.codewords == tr.codewords[::-1]
    return "fixture code = P_1; 500 segment traces are feasible walks in P_1; reversal ok"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(k):
    fn = CRITERIA[k - 1]
    try:
        detail = fn()
    except Exception as e:  # report, then let the caller decide
        return False, f"FAIL criterion {k}: {type(e).__name__}: {e}"
    return True, f"PASS criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, line = run_criterion(k)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in range(1, 11)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
