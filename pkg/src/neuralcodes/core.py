"""Neurons, codewords and codes.

A codeword is a plain ``int`` bitset over the neuron indices of its code's
universe: bit ``k`` set means neuron ``universe.labels[k]`` fires.  Codes are
immutable and keep their codewords in canonical order (cardinality first,
then lexicographic on the sorted index tuple), which fixes every downstream
output ordering and tie-break.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DuplicateCodeword, InvalidParameter, UniverseTooLarge, UnknownCodeword, UnknownNeuron

MAX_NEURONS = 64
EMPTY_TOKENS = ("{}", "∅")


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> tuple[int, ...]:
    """Indices of the set bits of ``x``, ascending."""
    out = []
    k = 0
    while x:
        if x & 1:
            out.append(k)
        x >>= 1
        k += 1
    return tuple(out)


def canonical_key(word: int) -> tuple[int, tuple[int, ...]]:
    return popcount(word), bits(word)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class NeuronUniverse:
    labels: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) > MAX_NEURONS:
            raise UniverseTooLarge(f"{len(labels)} neurons exceeds the cap of {MAX_NEURONS}")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise InvalidParameter(f"neuron labels must be nonempty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise InvalidParameter(f"neuron labels are not distinct: {labels}")
        object.__setattr__(self, "index", {lab: k for k, lab in enumerate(labels)})

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def compact(self) -> bool:
        """True when every label is a single character."""
        return all(len(lab) == 1 for lab in self.labels)

    def word(self, labels: Iterable[str]) -> int:
        w = 0
        for lab in labels:
            try:
                w |= 1 << self.index[lab]
            except KeyError:
                raise UnknownNeuron(f"unknown neuron {lab!r}") from None
        return w

    def labels_of(self, word: int) -> tuple[str, ...]:
        return tuple(self.labels[k] for k in bits(word))

    def parse_word(self, token: str) -> int:
        """Parse one codeword token.

        Accepts ``{}``/``∅`` for the empty word, comma separated labels, a
        single label, or (for single-character universes) a run of labels
        such as ``1235``.
        """
        token = token.strip()
        if token in EMPTY_TOKENS or token == "":
            return 0
        if "," in token:
            return self.word(t.strip() for t in token.split(",") if t.strip())
        if token in self.index:
            return self.word([token])
        return self.word(token)

    def fmt(self, word: int) -> str:
        if word == 0:
            return "{}"
        sep = "" if self.compact else ","
        return sep.join(self.labels_of(word))


class Code:
    """A finite set of codewords over a neuron universe."""

    __slots__ = ("universe", "codewords", "_set")

    def __init__(self, universe: NeuronUniverse | Sequence[str], words: Iterable[int]):
        if not isinstance(universe, NeuronUniverse):
            universe = NeuronUniverse(tuple(universe))
        full = universe.full
        ws = set()
        for w in words:
            if w & ~full:
                raise UnknownNeuron(f"codeword {w:#x} uses neurons outside the universe")
            ws.add(w)
        self.universe = universe
        self.codewords = tuple(sorted(ws, key=canonical_key))
        self._set = frozenset(ws)

    @classmethod
    def from_label_sets(cls, labels: Sequence[str], sets: Iterable[Iterable[str]], *, strict=True) -> "Code":
        universe = NeuronUniverse(tuple(labels))
        words = []
        seen = set()
        for s in sets:
            w = universe.word(s)
            if w in seen and strict:
                raise DuplicateCodeword(f"duplicate codeword {universe.fmt(w)}")
            seen.add(w)
            words.append(w)
        return cls(universe, words)

    def __iter__(self) -> Iterator[int]:
        return iter(self.codewords)

    def __len__(self) -> int:
        return len(self.codewords)

    def __contains__(self, word) -> bool:
        return word in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.universe.labels == other.universe.labels and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.universe.labels, self._set))

    def __repr__(self) -> str:
        return f"Code({format_code(self)!r}, n={self.n})"

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.universe.labels

    def word(self, labels: Iterable[str]) -> int:
        return self.universe.word(labels)

    def fmt(self, word: int) -> str:
        return self.universe.fmt(word)

    def labels_of(self, word: int) -> tuple[str, ...]:
        return self.universe.labels_of(word)

    def codeword(self, spec) -> int:
        """Resolve ``spec`` (token string, label list, or bitset) to a codeword of this code."""
        if isinstance(spec, int):
            w = spec
        elif isinstance(spec, str):
            w = self.universe.parse_word(spec)
        else:
            w = self.universe.word(spec)
        if w not in self._set:
            raise UnknownCodeword(f"{self.fmt(w)} is not a codeword")
        return w

    def label_sets(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(self.labels_of(w)) for w in self.codewords)


# -- parsing / serialization -------------------------------------------------


def parse_code(text: str, labels: Sequence[str] | None = None) -> Code:
    """Parse the JSON code format or the compact comma separated text format.

    In compact text each token is a codeword written as a run of
    single-character labels, ``{}`` being the empty word.  Without explicit
    ``labels`` the universe is the sorted set of characters that occur.
    """
    stripped = text.strip()
    if stripped.startswith("{") and stripped not in EMPTY_TOKENS:
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError:
            obj = None
        if isinstance(obj, dict):
            return code_from_json(obj)
    tokens = [t.strip() for t in stripped.replace("\n", ",").split(",")]
    tokens = [t for t in tokens if t]
    if labels is None:
        chars = set()
        for t in tokens:
            if t not in EMPTY_TOKENS:
                chars.update(c for c in t if not c.isspace())
        labels = sorted(chars)
    universe = NeuronUniverse(tuple(labels))
    if not universe.compact:
        raise InvalidParameter("compact text format needs single-character labels; use JSON")
    words = []
    seen = set()
    for t in tokens:
        w = 0 if t in EMPTY_TOKENS else universe.word(c for c in t if not c.isspace())
        if w in seen:
            raise DuplicateCodeword(f"duplicate codeword {t}")
        seen.add(w)
        words.append(w)
    return Code(universe, words)


def code_from_json(obj: Mapping) -> Code:
    try:
        neurons = obj["neurons"]
        codewords = obj["codewords"]
    except KeyError as e:
        raise InvalidParameter(f"code JSON is missing key {e}") from None
    if len(neurons) > MAX_NEURONS:
        raise UniverseTooLarge(f"{len(neurons)} neurons exceeds the cap of {MAX_NEURONS}")
    return Code.from_label_sets(neurons, codewords)


def code_to_json(code: Code) -> dict:
    return {
        "neurons": list(code.labels),
        "codewords": [list(code.labels_of(w)) for w in code.codewords],
    }


def format_code(code: Code) -> str:
    """Compact text when labels allow it, JSON otherwise."""
    if code.universe.compact:
        return ",".join(code.fmt(w) for w in code.codewords)
    return json.dumps(code_to_json(code))


# -- predicates ----------------------------------------------------------------


def maximal_codewords(code: Code) -> list[int]:
    words = code.codewords
    return [c for c in words if not any(c != d and is_subset(c, d) for d in words)]


def is_intersection_complete(code: Code) -> bool:
    words = code.codewords
    for i, c in enumerate(words):
        for d in words[i + 1:]:
            if c & d not in code:
                return False
    return True


def is_sunflower_code(code: Code) -> bool:
    full = code.universe.full
    if full not in code:
        return False
    return all(popcount(c) <= 1 for c in code if c != full)


def restrict(code: Code, labels: Sequence[str]) -> Code:
    """Project every codeword onto ``labels`` and deduplicate."""
    mask = code.word(labels)
    keep = [k for k in range(code.n) if mask >> k & 1]
    sub = NeuronUniverse(tuple(code.labels[k] for k in keep))
    words = set()
    for c in code:
        w = 0
        for j, k in enumerate(keep):
            if c >> k & 1:
                w |= 1 << j
        words.add(w)
    return Code(sub, words)


def relabel(code: Code, mapping: Mapping[str, str], labels: Sequence[str] | None = None) -> Code:
    """Apply a label bijection; the result's universe is ``labels`` or the mapped labels in order."""
    if labels is None:
        labels = [mapping[lab] for lab in code.labels]
    return Code.from_label_sets(labels, ([mapping[lab] for lab in code.labels_of(c)] for c in code))


def _signatures(code: Code) -> list[tuple]:
    sig = []
    for k in range(code.n):
        sizes = sorted(popcount(c) for c in code if c >> k & 1)
        sig.append((len(sizes), tuple(sizes)))
    return sig


def is_isomorphic(a: Code, b: Code) -> dict[str, str] | None:
    """Find a neuron bijection carrying ``a``'s codewords onto ``b``'s.

    Backtracking over neurons of ``a`` in index order, candidates in index
    order, pruned by neuron signatures (sorted sizes of the codewords a
    neuron belongs to) and by comparing codeword projections onto the
    neurons assigned so far.
    """
    if a.n != b.n or len(a) != len(b):
        return None
    sa, sb = _signatures(a), _signatures(b)
    if sorted(sa) != sorted(sb):
        return None
    n = a.n
    perm = [-1] * n
    used = [False] * n

    def projections(code, mask):
        return Counter(c & mask for c in code)

    def consistent(depth):
        amask = (1 << depth) - 1
        bmask = 0
        for k in range(depth):
            bmask |= 1 << perm[k]
        pa = projections(a, amask)
        pb = projections(b, bmask)
        mapped = Counter()
        for w, cnt in pa.items():
            t = 0
            for k in bits(w):
                t |= 1 << perm[k]
            mapped[t] = cnt
        return mapped == pb

    def search(depth):
        if depth == n:
            return True
        for t in range(n):
            if used[t] or sa[depth] != sb[t]:
                continue
            perm[depth] = t
            used[t] = True
            if consistent(depth + 1) and search(depth + 1):
                return True
            used[t] = False
        perm[depth] = -1
        return False

    if not search(0):
        return None
    return {a.labels[k]: b.labels[perm[k]] for k in range(n)}
