"""Exact rational half-space realizations.

Regions are intersections of half-spaces ``normal . x < offset`` (open
realizations) or ``normal . x <= offset`` (closed ones).  All arithmetic uses
``fractions.Fraction``; no decision ever touches a float.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import Code, NeuronUniverse
from .errors import DegenerateSegment, DimensionError, InvalidParameter, MixedSense

OPEN = "open"
CLOSED = "closed"


def rational(value) -> Fraction:
    """Parse ``"p/q"`` strings, ints or Fractions.  Floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; write rationals as 'p/q' strings")
    if isinstance(value, str):
        value = value.strip().replace("−", "-")
    return Fraction(value)


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def point(values) -> tuple[Fraction, ...]:
    if isinstance(values, str):
        values = [v for v in values.replace(";", ",").split(",") if v.strip()]
    elif not isinstance(values, (list, tuple)):
        values = [values]
    return tuple(rational(v) for v in values)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class HalfSpace:
    normal: tuple[Fraction, ...]
    offset: Fraction
    strict: bool

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise InvalidParameter("half-space normal must be nonzero")

    def contains(self, x) -> bool:
        v = dot(self.normal, x)
        return v < self.offset if self.strict else v <= self.offset


@dataclass(frozen=True)
class ConvexRegion:
    label: str
    halfspaces: tuple[HalfSpace, ...] = ()

    def contains(self, x) -> bool:
        return all(h.contains(x) for h in self.halfspaces)


@dataclass(frozen=True)
class Realization:
    dimension: int
    topology: str
    regions: tuple[ConvexRegion, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionError("dimension must be positive")
        if self.topology not in (OPEN, CLOSED):
            raise InvalidParameter(f"topology must be 'open' or 'closed', got {self.topology!r}")
        strict = self.topology == OPEN
        labels = [r.label for r in self.regions]
        if len(set(labels)) != len(labels):
            raise InvalidParameter("region labels must be distinct")
        for r in self.regions:
            for h in r.halfspaces:
                if h.strict != strict:
                    raise MixedSense(f"region {r.label}: half-space sense does not match {self.topology} topology")
                if len(h.normal) != self.dimension:
                    raise DimensionError(f"region {r.label}: normal has length {len(h.normal)}, expected {self.dimension}")

    @property
    def universe(self) -> NeuronUniverse:
        return NeuronUniverse(tuple(r.label for r in self.regions))

    def _check_point(self, x):
        if len(x) != self.dimension:
            raise DimensionError(f"point has dimension {len(x)}, realization has {self.dimension}")


def realization_from_json(obj: Mapping) -> Realization:
    dim = int(obj["dimension"])
    topology = obj.get("topology", OPEN)
    strict = topology == OPEN
    regions = []
    for r in obj["regions"]:
        hs = []
        for h in r.get("halfspaces", []):
            sense = h.get("sense")
            if sense is not None and (sense == "strict") != strict:
                raise MixedSense(f"region {r['label']}: {sense} half-space in a {topology} realization")
            hs.append(HalfSpace(tuple(rational(c) for c in h["normal"]), rational(h["offset"]), strict))
        regions.append(ConvexRegion(str(r["label"]), tuple(hs)))
    return Realization(dim, topology, tuple(regions))


def realization_to_json(R: Realization) -> dict:
    return {
        "dimension": R.dimension,
        "topology": R.topology,
        "regions": [
            {
                "label": r.label,
                "halfspaces": [
                    {"normal": [fmt_rational(c) for c in h.normal], "offset": fmt_rational(h.offset)}
                    for h in r.halfspaces
                ],
            }
            for r in R.regions
        ],
    }


def load_realization(path) -> Realization:
    with open(path) as fh:
        return realization_from_json(json.load(fh))


def interval_realization(intervals: Sequence[tuple[str, object, object]], topology=OPEN) -> Realization:
    """1D realization from ``(label, lo, hi)`` triples; ``None`` means unbounded."""
    strict = topology == OPEN
    regions = []
    for label, lo, hi in intervals:
        hs = []
        if lo is not None:
            hs.append(HalfSpace((Fraction(-1),), -rational(lo), strict))
        if hi is not None:
            hs.append(HalfSpace((Fraction(1),), rational(hi), strict))
        regions.append(ConvexRegion(label, tuple(hs)))
    return Realization(1, topology, tuple(regions))


# -- operations ----------------------------------------------------------------


def membership(R: Realization, x) -> int:
    """The codeword (bitset over region labels) of the atom containing ``x``."""
    x = point(x)
    R._check_point(x)
    w = 0
    for k, r in enumerate(R.regions):
        if r.contains(x):
            w |= 1 << k
    return w


@dataclass(frozen=True)
class WitnessResult:
    claimed: tuple[str, ...]
    point: tuple[Fraction, ...]
    actual: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return set(self.claimed) == set(self.actual)


@dataclass(frozen=True)
class WitnessReport:
    results: tuple[WitnessResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[WitnessResult]:
        return [r for r in self.results if not r.ok]


def verify_witnesses(R: Realization, claims) -> WitnessReport:
    """Check ``claims`` (pairs of label lists and points) against exact membership.

    A passing report shows the realization's code contains every claimed
    codeword; it says nothing about codewords that were not claimed.
    """
    if isinstance(claims, Mapping):
        claims = claims.items()
    u = R.universe
    results = []
    for labels, x in claims:
        if isinstance(labels, str):
            labels = () if labels in ("{}", "∅", "") else tuple(labels.split(","))
        labels = tuple(labels)
        u.word(labels)  # validates labels
        x = point(x)
        results.append(WitnessResult(labels, x, u.labels_of(membership(R, x))))
    return WitnessReport(tuple(results))


def _breakpoints_1d(R: Realization) -> list[Fraction]:
    pts = set()
    for r in R.regions:
        for h in r.halfspaces:
            pts.add(h.offset / h.normal[0])
    return sorted(pts)


def code_of_1d_realization(R: Realization) -> Code:
    """The full code of a realization on the line.

    Membership is constant on each open gap between consecutive boundary
    points, so sampling every boundary point, one point per gap, and one
    point on each unbounded ray finds every atom.
    """
    if R.dimension != 1:
        raise DimensionError("exact code extraction is only available in dimension 1")
    pts = _breakpoints_1d(R)
    if not pts:
        samples = [Fraction(0)]
    else:
        samples = [pts[0] - 1, pts[-1] + 1] + pts
        samples += [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return Code(R.universe, {membership(R, (s,)) for s in samples})


@dataclass(frozen=True)
class Run:
    codeword: int
    start: Fraction
    end: Fraction
    start_closed: bool
    end_closed: bool

    @property
    def degenerate(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class AtomTrace:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    runs: tuple[Run, ...]

    @property
    def codewords(self) -> list[int]:
        return [r.codeword for r in self.runs]


def segment_atom_trace(R: Realization, a, b) -> AtomTrace:
    """Atoms met along the segment from ``a`` to ``b``, as runs over ``t`` in [0, 1].

    Membership is evaluated at every boundary crossing and at the midpoint of
    every gap, so measure-zero atoms at crossings show up as degenerate runs.
    """
    a, b = point(a), point(b)
    R._check_point(a)
    R._check_point(b)
    if a == b:
        raise DegenerateSegment("segment endpoints coincide")
    d = tuple(y - x for x, y in zip(a, b))
    ts = {Fraction(0), Fraction(1)}
    for r in R.regions:
        for h in r.halfspaces:
            denom = dot(h.normal, d)
            if denom != 0:
                t = (h.offset - dot(h.normal, a)) / denom
                if 0 < t < 1:
                    ts.add(t)
    ts = sorted(ts)

    def at(t):
        return membership(R, tuple(x + t * y for x, y in zip(a, d)))

    # pieces alternate: point t0, gap (t0, t1), point t1, ...
    pieces = [(ts[0], ts[0], at(ts[0]))]
    for lo, hi in zip(ts, ts[1:]):
        pieces.append((lo, hi, at((lo + hi) / 2)))
        pieces.append((hi, hi, at(hi)))

    runs = []
    for lo, hi, w in pieces:
        is_point = lo == hi
        if runs and runs[-1][0] == w:
            runs[-1][2] = hi
            runs[-1][4] = is_point
        else:
            if runs:
                # previous run stops just before this piece
                runs[-1][4] = not is_point
            runs.append([w, lo, hi, is_point, is_point])
    return AtomTrace(a, b, tuple(Run(*r) for r in runs))

