"""Code families and the registry of named codes."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .core import Code, NeuronUniverse, parse_code
from .errors import InvalidParameter, UnknownCode

BAR = "bar"


def bar(label: str) -> str:
    return label + BAR


def gen_Ln(n: int) -> Code:
    """The stretched sunflower code on neurons 1..n+6.

    Codewords: {}, 1, 2, 3, 123, 145, 45, 2456, then 4k for k = 6..n+6,
    4k(k+1) for k = 6..n+5, and finally 34(n+6).
    """
    if not isinstance(n, int) or n < 0:
        raise InvalidParameter(f"L_n needs an integer n >= 0, got {n!r}")
    labels = [str(k) for k in range(1, n + 7)]
    sets = [[], ["1"], ["2"], ["3"], ["1", "2", "3"], ["1", "4", "5"], ["4", "5"], ["2", "4", "5", "6"]]
    sets += [["4", str(k)] for k in range(6, n + 7)]
    sets += [["4", str(k), str(k + 1)] for k in range(6, n + 6)]
    sets.append(["3", "4", str(n + 6)])
    return Code.from_label_sets(labels, sets)


def gen_Pd(d: int) -> Code:
    """The d-th prism code.

    Neurons are 1..d+1 followed by 1bar..(d+2)bar.  Codewords are every subset
    of ({1..d+1} with i swapped for ibar) for each i, plus the full barred word.
    """
    if not isinstance(d, int) or d < 1:
        raise InvalidParameter(f"P_d needs an integer d >= 1, got {d!r}")
    plain = [str(k) for k in range(1, d + 2)]
    barred = [bar(str(k)) for k in range(1, d + 3)]
    universe = NeuronUniverse(tuple(plain + barred))
    words = set()
    for i in range(d + 1):
        # positions: plain neurons except i, plus ibar
        base = [k for k in range(d + 1) if k != i] + [d + 1 + i]
        for mask in range(1 << len(base)):
            w = 0
            for j, k in enumerate(base):
                if mask >> j & 1:
                    w |= 1 << k
            words.add(w)
    words.add(universe.word(barred))
    return Code(universe, words)


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    code: Code
    metadata: tuple = field(default=())

    def to_json(self) -> dict:
        from .core import code_to_json

        return {"name": self.name, "code": code_to_json(self.code), "metadata": list(self.metadata)}


@lru_cache(maxsize=None)
def _registry_data() -> dict:
    text = resources.files("neuralcodes").joinpath("data/registry.json").read_text()
    return json.loads(text)


def _check_metadata(name, metadata):
    for item in metadata:
        if not item.get("source"):
            raise InvalidParameter(f"registry entry {name}: metadata {item.get('fact')!r} has no source")
    return tuple(metadata)


_FAMILY = re.compile(r"^(Ln|Pd):(\d+)$")


def registry_names() -> list[str]:
    return sorted(_registry_data()) + ["Ln:<n>", "Pd:<d>"]


def registry(name: str) -> RegistryEntry:
    data = _registry_data()
    if name in data:
        entry = data[name]
        code = parse_code(entry["codewords"], labels=entry["neurons"])
        return RegistryEntry(name, code, _check_metadata(name, entry["metadata"]))
    m = _FAMILY.match(name)
    if m is None:
        raise UnknownCode(f"unknown code {name!r}; known: {', '.join(registry_names())}")
    family, param = m.group(1), int(m.group(2))
    if family == "Ln":
        meta = [
            {"fact": "good cover", "value": True, "source": "stretched sunflower proposition"},
            {"fact": "minimally non-convex", "value": True, "source": "stretched sunflower proposition"},
        ]
        return RegistryEntry(name, gen_Ln(param), _check_metadata(name, meta))
    meta = [
        {"fact": "odim", "value": param, "source": "prism code open dimension proposition"},
        {"fact": "odim after adding {(d+2)bar}", "value": param + 1, "source": "strict monotonicity theorem"},
    ]
    return RegistryEntry(name, gen_Pd(param), _check_metadata(name, meta))
