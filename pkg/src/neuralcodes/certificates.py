"""Machine-checkable premises behind non-convexity arguments.

A certificate lists combinatorial premises about one code.  Verification
checks each premise with the graph and core operations; the geometric step
that turns the premises into a contradiction stays in the free-text
narrative and is not checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import Code, code_from_json, code_to_json
from .errors import CertificateMalformed, NeuralCodeError, NoFeasiblePath
from .families import registry
from .graph import enumerate_feasible_paths, forced_between, is_subsequence, strong_order_forcing

Labels = tuple[str, ...]


def _labels(value) -> Labels:
    if isinstance(value, str):
        raise CertificateMalformed(f"codewords are label arrays, got string {value!r}")
    return tuple(str(v) for v in value)


@dataclass(frozen=True)
class UniqueFeasiblePath:
    source: Labels
    target: Labels
    path: tuple[Labels, ...]
    strong: bool = False
    kind = "unique_feasible_path"

    def to_json(self):
        out = {"kind": self.kind, "from": list(self.source), "to": list(self.target), "path": [list(p) for p in self.path]}
        if self.strong:
            out["strong"] = True
        return out


@dataclass(frozen=True)
class OrderForced:
    sequence: tuple[Labels, ...]
    kind = "order_forced"

    def to_json(self):
        return {"kind": self.kind, "sequence": [list(p) for p in self.sequence]}


@dataclass(frozen=True)
class ForcedBetween:
    vertex: Labels
    source: Labels
    target: Labels
    kind = "forced_between"

    def to_json(self):
        return {"kind": self.kind, "v": list(self.vertex), "from": list(self.source), "to": list(self.target)}


@dataclass(frozen=True)
class DisjointNeurons:
    i: str
    j: str
    kind = "disjoint_neurons"

    def to_json(self):
        return {"kind": self.kind, "i": self.i, "j": self.j}


@dataclass(frozen=True)
class CodewordPresent:
    codeword: Labels
    kind = "codeword_present"

    def to_json(self):
        return {"kind": self.kind, "c": list(self.codeword)}


@dataclass(frozen=True)
class CodewordAbsent:
    codeword: Labels
    kind = "codeword_absent"

    def to_json(self):
        return {"kind": self.kind, "c": list(self.codeword)}


def premise_from_json(obj) -> object:
    try:
        kind = obj["kind"]
        if kind == UniqueFeasiblePath.kind:
            return UniqueFeasiblePath(
                _labels(obj["from"]), _labels(obj["to"]), tuple(_labels(p) for p in obj["path"]), bool(obj.get("strong", False))
            )
        if kind == OrderForced.kind:
            seq = tuple(_labels(p) for p in obj["sequence"])
            if not seq:
                raise CertificateMalformed("order_forced needs a nonempty sequence")
            return OrderForced(seq)
        if kind == ForcedBetween.kind:
            return ForcedBetween(_labels(obj["v"]), _labels(obj["from"]), _labels(obj["to"]))
        if kind == DisjointNeurons.kind:
            return DisjointNeurons(str(obj["i"]), str(obj["j"]))
        if kind == CodewordPresent.kind:
            return CodewordPresent(_labels(obj["c"]))
        if kind == CodewordAbsent.kind:
            return CodewordAbsent(_labels(obj["c"]))
    except (KeyError, TypeError) as e:
        raise CertificateMalformed(f"bad premise {obj!r}: {e}") from None
    raise CertificateMalformed(f"unknown premise kind {obj.get('kind')!r}")


@dataclass(frozen=True)
class Certificate:
    code: object  # registry name or inline code JSON
    premises: tuple
    narrative: str

    def __post_init__(self):
        if not self.premises:
            raise CertificateMalformed("a certificate needs at least one premise")
        if not self.narrative.strip():
            raise CertificateMalformed("a certificate needs a narrative naming its source argument")

    def resolve_code(self) -> Code:
        if isinstance(self.code, str):
            return registry(self.code).code
        if isinstance(self.code, Code):
            return self.code
        return code_from_json(self.code)

    def to_json(self) -> dict:
        code = code_to_json(self.code) if isinstance(self.code, Code) else self.code
        return {"code": code, "premises": [p.to_json() for p in self.premises], "narrative": self.narrative}


def certificate_from_json(obj) -> Certificate:
    if not isinstance(obj, dict) or "premises" not in obj or "code" not in obj:
        raise CertificateMalformed("certificate JSON needs 'code' and 'premises'")
    return Certificate(obj["code"], tuple(premise_from_json(p) for p in obj["premises"]), obj.get("narrative", ""))


def load_certificate(path) -> Certificate:
    with open(path) as fh:
        return certificate_from_json(json.load(fh))


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class PremiseResult:
    kind: str
    ok: bool
    detail: str
    witness: object = None

    def to_json(self):
        return {"kind": self.kind, "ok": self.ok, "detail": self.detail, "witness": self.witness}


@dataclass(frozen=True)
class CertificateReport:
    results: tuple[PremiseResult, ...]
    narrative: str = ""
    walk_bound: int | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self):
        out = {"ok": self.ok, "premises": [r.to_json() for r in self.results], "narrative": self.narrative}
        if self.walk_bound is not None:
            out["walk_bound"] = self.walk_bound
        return out


class _Resolver:
    def __init__(self, code: Code):
        self.code = code

    def word(self, labels: Sequence[str]) -> int:
        try:
            return self.code.word(labels)
        except NeuralCodeError as e:
            raise CertificateMalformed(str(e)) from None

    def codeword(self, labels: Sequence[str]) -> int:
        w = self.word(labels)
        if w not in self.code:
            raise CertificateMalformed(f"{self.code.fmt(w)} is not a codeword of the certificate's code")
        return w

    def neuron(self, label: str) -> int:
        return self.word([label])


def _fmt_path(code, path):
    return [code.fmt(v) for v in path]


def _check(code: Code, res: _Resolver, p, bound: int | None) -> PremiseResult:
    if isinstance(p, UniqueFeasiblePath):
        s, t = res.codeword(p.source), res.codeword(p.target)
        path = [res.codeword(v) for v in p.path]
        found = enumerate_feasible_paths(code, s, t)
        if not path:
            raise CertificateMalformed("unique_feasible_path needs a nonempty path")
        if path[0] != s or path[-1] != t:
            return PremiseResult(p.kind, False, "path endpoints do not match from/to", _fmt_path(code, path))
        if found != [path]:
            other = next((q for q in found if q != path), None)
            if other is None:
                return PremiseResult(p.kind, False, f"no feasible path; {len(found)} found", [])
            return PremiseResult(p.kind, False, f"{len(found)} feasible paths; counterexample attached", _fmt_path(code, other))
        if p.strong:
            rep = strong_order_forcing(code, path, bound)
            if not rep.strong:
                return PremiseResult(p.kind, False, "another feasible walk exists", _fmt_path(code, rep.deviation or []))
            return PremiseResult(
                p.kind, True, f"unique feasible walk (bound {rep.bound} edges, exact count {rep.walk_count})", None
            )
        return PremiseResult(p.kind, True, "unique feasible path", None)

    if isinstance(p, OrderForced):
        seq = [res.codeword(v) for v in p.sequence]
        found = enumerate_feasible_paths(code, seq[0], seq[-1])
        if not found:
            return PremiseResult(p.kind, False, "no feasible path between the endpoints", None)
        bad = next((q for q in found if not is_subsequence(seq, q)), None)
        if bad is not None:
            return PremiseResult(p.kind, False, "feasible path avoiding the sequence", _fmt_path(code, bad))
        return PremiseResult(p.kind, True, f"subsequence of all {len(found)} feasible paths", None)

    if isinstance(p, ForcedBetween):
        v, s, t = res.codeword(p.vertex), res.codeword(p.source), res.codeword(p.target)
        try:
            common = forced_between(code, s, t)
        except NoFeasiblePath:
            return PremiseResult(p.kind, False, "no feasible path between the endpoints", None)
        if v in common:
            return PremiseResult(p.kind, True, "on every feasible path", None)
        avoid = next(q for q in enumerate_feasible_paths(code, s, t) if v not in q)
        return PremiseResult(p.kind, False, "feasible path avoiding the vertex", _fmt_path(code, avoid))

    if isinstance(p, DisjointNeurons):
        both = res.neuron(p.i) | res.neuron(p.j)
        hit = next((c for c in code if c & both == both), None)
        if hit is None:
            return PremiseResult(p.kind, True, "no codeword contains both", None)
        return PremiseResult(p.kind, False, "codeword containing both", code.fmt(hit))

    if isinstance(p, CodewordPresent):
        w = res.word(p.codeword)
        return PremiseResult(p.kind, w in code, "present" if w in code else "absent", None)

    if isinstance(p, CodewordAbsent):
        w = res.word(p.codeword)
        return PremiseResult(p.kind, w not in code, "absent" if w not in code else "present", None)

    raise CertificateMalformed(f"unknown premise {p!r}")


def verify_certificate(code: Code, cert: Certificate, walk_bound: int | None = None) -> CertificateReport:
    """Check every premise of ``cert`` against ``code``, in order."""
    res = _Resolver(code)
    results = tuple(_check(code, res, p, walk_bound) for p in cert.premises)
    bound = None
    if any(isinstance(p, UniqueFeasiblePath) and p.strong for p in cert.premises):
        bound = walk_bound if walk_bound is not None else 2 * len(code)
    return CertificateReport(results, cert.narrative, bound)


# -- builtin certificates ------------------------------------------------------


def _cw(token: str) -> Labels:
    """``"12ab"`` -> ``("1", "2", "a", "b")``; comma separated for multi-character labels."""
    return tuple(token.split(",")) if "," in token else tuple(token)


def _path(text: str) -> tuple[Labels, ...]:
    return tuple(_cw(t) for t in text.split())


def _ufp(text: str, strong=False) -> UniqueFeasiblePath:
    path = _path(text)
    return UniqueFeasiblePath(path[0], path[-1], path, strong)


def _ln_certificate(n: int) -> Certificate:
    a, b = str(n + 5), str(n + 6)
    left = ("4", a)
    right = ("4", b)
    top = ("3", "4", b)
    bridge = ("4", a, b)
    # the other codeword holding both 4 and n+5; for n = 1 it is 2456
    prev = ("2", "4", "5", "6") if n == 1 else ("4", str(n + 4), a)
    core = (left, bridge, right)
    premises = []
    for start, lead in ((left, ()), (prev, (prev,))):
        for end, tail in ((right, ()), (top, (top,))):
            path = lead + core + tail
            premises.append(UniqueFeasiblePath(start, end, path))
    return Certificate(
        f"Ln:{n}",
        tuple(premises),
        f"merging U_{a} and U_{b}: segments between their atoms stay inside the union",
    )


def builtin_certificates() -> dict[str, Certificate]:
    certs = {
        "R": Certificate(
            "R",
            (
                _ufp("12ab 1a 13ace 1c 14ch"),
                _ufp("12ab 2b 23bdg 2d 24dj"),
                _ufp("14ch 4h 46hi 4i 45ij 4j 24dj"),
                _ufp("13ace 3e 35ef 3f 36fg 3g 23bdg"),
                _ufp("35ef 5 45ij"),
                _ufp("36fg 6 46hi"),
                DisjointNeurons("5", "6"),
            ),
            "code R: order-forced paths make segments through U5 and U6 cross in a plane, yet U5 and U6 are disjoint",
        ),
        "T": Certificate(
            "T",
            (
                _ufp("14a 1a 15ab 1b 16bg"),
                _ufp("25c 2c 24cd 2d 26dgh"),
                _ufp("34e 3e 35ef 3f 36fh"),
                _ufp("16bg 6g 26dgh 6h 36fh"),
                DisjointNeurons("4", "5"),
            ),
            "code T: a hyperplane separating U4 from U5 would be crossed twice by one segment",
        ),
        "wheel": Certificate(
            "wheel",
            (
                ForcedBetween(_cw("12"), _cw("125"), _cw("123")),
                OrderForced(_path("123 23 234 34 345")),
                ForcedBetween(_cw("123"), _cw("12"), _cw("234")),
            ),
            "wheel code: a closest point of the closed atom of 123 can always be improved",
        ),
        "example2.8": Certificate(
            "example2.8",
            (_ufp("145 45 2456 46 467 47 347", strong=True),),
            "the neuron-4 codewords form a single path, walked in one direction only",
        ),
    }
    for n in range(1, 6):
        certs[f"Ln:{n}"] = _ln_certificate(n)
    return certs
