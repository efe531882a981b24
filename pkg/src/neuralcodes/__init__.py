"""Combinatorics of convex neural codes: codeword graphs, order-forcing,
morphisms, code families, exact half-space geometry and certificates."""

from .core import (
    Code,
    NeuronUniverse,
    code_from_json,
    code_to_json,
    format_code,
    is_intersection_complete,
    is_isomorphic,
    is_sunflower_code,
    maximal_codewords,
    parse_code,
    restrict,
)
from .families import RegistryEntry, gen_Ln, gen_Pd, registry
from .graph import (
    codeword_graph,
    enumerate_feasible_paths,
    forced_between,
    is_feasible_walk,
    is_order_forced,
    is_strongly_order_forced,
    reduce_walk_to_path,
    strong_order_forcing,
)
from .algebra import CodeMap, covered_code, covering_map, is_minor_witness, is_morphism, reduce_code, trunk
from .geometry import code_of_1d_realization, membership, segment_atom_trace, verify_witnesses
from .certificates import builtin_certificates, verify_certificate

__version__ = "0.1.0"
