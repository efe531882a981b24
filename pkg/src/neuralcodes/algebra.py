"""Trunks, morphisms, covered codes and code reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .core import Code, NeuronUniverse, is_subset
from .errors import InvalidParameter, UnknownNeuron
from .families import bar


@dataclass(frozen=True)
class Trunk:
    base: int | None
    members: frozenset[int]

    def __len__(self):
        return len(self.members)


def trunk(code: Code, sigma) -> Trunk:
    """All codewords containing ``sigma`` (a bitset or a list of labels)."""
    s = sigma if isinstance(sigma, int) else code.word(sigma)
    if s & ~code.universe.full:
        raise UnknownNeuron("trunk base uses neurons outside the universe")
    return Trunk(s, frozenset(c for c in code if is_subset(s, c)))


def _meet(words) -> int:
    out = -1
    for w in words:
        out &= w
    return out


def is_trunk(code: Code, members) -> bool:
    """Whether ``members`` is empty or equal to ``Tk(sigma)`` for some ``sigma``.

    The only candidate base is the intersection of the members, since any
    trunk containing them is a trunk of a subset of it.
    """
    members = frozenset(members)
    if not members:
        return True
    base = _meet(members)
    return members == trunk(code, base).members


@dataclass(frozen=True)
class CodeMap:
    source: Code
    target: Code
    assignment: Mapping[int, int] = field(hash=False)

    def __post_init__(self):
        for c in self.source:
            if c not in self.assignment:
                raise InvalidParameter(f"map is not total: {self.source.fmt(c)} has no image")
            if self.assignment[c] not in self.target:
                raise InvalidParameter(f"image of {self.source.fmt(c)} is not a target codeword")

    def __call__(self, c: int) -> int:
        return self.assignment[c]

    def preimage(self, members) -> frozenset[int]:
        members = frozenset(members)
        return frozenset(c for c in self.source if self.assignment[c] in members)

    def image(self) -> frozenset[int]:
        return frozenset(self.assignment[c] for c in self.source)


def is_morphism(f: CodeMap) -> bool:
    """Trunk preimages are trunks.

    Checking the single-neuron trunks of the target suffices: every trunk is
    an intersection of those (or the whole code, or empty) and preimages
    commute with intersections.
    """
    for j in range(f.target.n):
        if not is_trunk(f.source, f.preimage(trunk(f.target, 1 << j).members)):
            return False
    return True


def is_minor_witness(f: CodeMap) -> bool:
    return is_morphism(f) and f.image() == frozenset(f.target.codewords)


def covering_map(code: Code, neuron: str) -> CodeMap:
    """The map splitting ``neuron`` into barred copies of the other neurons.

    With ``s`` the remaining neurons, ``c`` goes to ``c & s`` when ``neuron``
    is absent and to ``(c & s)`` plus its barred copy when present.  The
    target universe is the remaining labels followed by their barred labels,
    primed where a barred label is already taken.
    """
    if neuron not in code.universe.index:
        raise UnknownNeuron(f"unknown neuron {neuron!r}")
    i = code.universe.index[neuron]
    rest = [k for k in range(code.n) if k != i]
    labels = [code.labels[k] for k in rest]
    taken = set(labels)
    barred = []
    for lab in labels:
        b = bar(lab)
        while b in taken:  # e.g. "2" beside an existing "2bar"
            b += "'"
        taken.add(b)
        barred.append(b)
    universe = NeuronUniverse(tuple(labels + barred))
    m = len(rest)
    assignment = {}
    for c in code:
        w = 0
        for j, k in enumerate(rest):
            if c >> k & 1:
                w |= 1 << j
        if c >> i & 1:
            w |= w << m
        assignment[c] = w
    target = Code(universe, set(assignment.values()))
    return CodeMap(code, target, assignment)


def covered_code(code: Code, neuron: str) -> Code:
    return covering_map(code, neuron).target


# -- reduction -----------------------------------------------------------------


@dataclass(frozen=True)
class Removal:
    neuron: str
    reason: str  # "trivial" or "redundant"
    witness: tuple[str, ...] = ()


def delete_neuron(code: Code, k: int) -> Code:
    labels = code.labels[:k] + code.labels[k + 1:]
    low = (1 << k) - 1
    words = {(c & low) | ((c >> (k + 1)) << k) for c in code}
    return Code(labels, words)


def redundancy_witness(code: Code, j: int) -> int | None:
    """Smallest ``sigma`` (canonical order) with ``Tk(j) == Tk(sigma)``, ``j`` not in ``sigma``."""
    tj = trunk(code, 1 << j).members
    # sigma can only use neurons whose trunk contains Tk(j)
    allowed = [k for k in range(code.n) if k != j and tj <= trunk(code, 1 << k).members]
    if trunk(code, sum(1 << k for k in allowed)).members != tj:
        return None
    for size in range(len(allowed) + 1):
        for combo in combinations(allowed, size):
            s = sum(1 << k for k in combo)
            if trunk(code, s).members == tj:
                return s
    return None


def reduce_code(code: Code) -> tuple[Code, list[Removal]]:
    """Strip trivial and redundant neurons until none remain.

    Each round removes the lowest-index offending neuron, trivial neurons
    taking priority, recording the smallest witness set for redundancies.
    """
    log = []
    while True:
        used = 0
        for c in code:
            used |= c
        trivial = [k for k in range(code.n) if not used >> k & 1]
        if trivial:
            k = trivial[0]
            log.append(Removal(code.labels[k], "trivial"))
            code = delete_neuron(code, k)
            continue
        for k in range(code.n):
            w = redundancy_witness(code, k)
            if w is not None:
                log.append(Removal(code.labels[k], "redundant", code.labels_of(w)))
                code = delete_neuron(code, k)
                break
        else:
            return code, log


def is_reduced(code: Code) -> bool:
    used = 0
    for c in code:
        used |= c
    if used != code.universe.full:
        return False
    return all(redundancy_witness(code, k) is None for k in range(code.n))


# -- minor search --------------------------------------------------------------

MINOR_SEARCH_LIMIT = 9


def find_minor_witness(big: Code, small: Code) -> CodeMap | None:
    """Exhaustively look for a surjective morphism ``big -> small``.

    Only for ``len(big) <= 9``.  Partial assignments are pruned: once some
    codewords land in ``Tk(j)``, every assigned codeword containing their
    intersection must land there too.
    """
    if len(big) > MINOR_SEARCH_LIMIT:
        raise InvalidParameter(f"minor search is limited to codes with at most {MINOR_SEARCH_LIMIT} codewords")
    src = big.codewords
    tgt = small.codewords
    if len(tgt) > len(src):
        return None
    assign: dict[int, int] = {}

    def ok():
        for j in range(small.n):
            hit = [c for c, d in assign.items() if d >> j & 1]
            if not hit:
                continue
            base = _meet(hit)
            for c, d in assign.items():
                if is_subset(base, c) and not d >> j & 1:
                    return False
        return True

    def search(k):
        if len(set(assign.values())) + (len(src) - k) < len(tgt):
            return None
        if k == len(src):
            f = CodeMap(big, small, dict(assign))
            return f if is_minor_witness(f) else None
        for d in tgt:
            assign[src[k]] = d
            if ok():
                found = search(k + 1)
                if found is not None:
                    return found
            del assign[src[k]]
        return None

    return search(0)

