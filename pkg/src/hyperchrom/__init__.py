"""Topological-combinatorial lower bounds for hypergraph chromatic numbers."""

from .hypergraph import (
    Hypergraph,
    Coloring,
    PartiteFamily,
    build_hypergraph,
    complete_hypergraph,
    usual_kneser,
    kneser,
    chromatic_number,
    local_chromatic_number,
)
from .altdefect import SignedVector, alt_of_vector, alt_sigma, alt_min, colorability_defect
from .complexes import (
    SimplicialGComplex,
    GPoset,
    box_complex,
    hom_poset,
    order_complex,
    q_poset,
    sigma_complex,
    zp_join,
)
from .gindex import IndexInterval, XindResult, ind_bounds, xind_exact
from .tucker import (
    EquivariantLabeling,
    FanChain,
    Verdict,
    check_labeling_conditions,
    find_fan_chain,
    fan_sweep,
    lambda_from_coloring,
)
from .colorful import (
    ColorfulWitness,
    ZigzagWitness,
    find_colorful_balanced,
    zigzag_check,
    local_lower_formulas,
    certify_local,
)

__all__ = [
    "Hypergraph",
    "Coloring",
    "PartiteFamily",
    "build_hypergraph",
    "complete_hypergraph",
    "usual_kneser",
    "kneser",
    "chromatic_number",
    "local_chromatic_number",
    "SignedVector",
    "alt_of_vector",
    "alt_sigma",
    "alt_min",
    "colorability_defect",
    "SimplicialGComplex",
    "GPoset",
    "box_complex",
    "hom_poset",
    "order_complex",
    "q_poset",
    "sigma_complex",
    "zp_join",
    "IndexInterval",
    "XindResult",
    "ind_bounds",
    "xind_exact",
    "EquivariantLabeling",
    "FanChain",
    "Verdict",
    "check_labeling_conditions",
    "find_fan_chain",
    "fan_sweep",
    "lambda_from_coloring",
    "ColorfulWitness",
    "ZigzagWitness",
    "find_colorful_balanced",
    "zigzag_check",
    "local_lower_formulas",
    "certify_local",
]
