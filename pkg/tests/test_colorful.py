import random

import pytest

from hyperchrom.colorful import (
    ColorfulWitness,
    ZigzagWitness,
    certify_local,
    find_colorful_balanced,
    local_lower_formulas,
    proper_colorings_canonical,
    random_proper_coloring,
    validate_colorful,
    zigzag_check,
)
from hyperchrom.hypergraph import (
    Coloring,
    Hypergraph,
    build_hypergraph,
    chromatic_number,
    complete_hypergraph,
    kneser,
    usual_kneser,
)
from hyperchrom.tucker import Verdict


def cycle(n):
    return build_hypergraph(n, [[i, i % n + 1] for i in range(1, n + 1)])


def petersen():
    return kneser(complete_hypergraph(5, 2), 2)


def k(n):
    return kneser(complete_hypergraph(n, 1), 2)


# ---------------------------------------------------------------------------
# colorful balanced subhypergraphs
# ---------------------------------------------------------------------------


def test_petersen_colorful_in_every_canonical_coloring():
    G = petersen()
    colorings = [
        c for c in proper_colorings_canonical(G, 3)
    ]
    assert len(colorings) == 20
    for c in colorings:
        w = find_colorful_balanced(G, c, 2, 3)
        assert isinstance(w, ColorfulWitness)
        assert w.total_size >= 3
        assert validate_colorful(G, c, w).ok


def test_petersen_colorful_random_colorings():
    G = petersen()
    rng = random.Random(7)
    for _ in range(10):
        c = random_proper_coloring(G, 3, rng)
        w = find_colorful_balanced(G, c, 2, 3)
        assert isinstance(w, ColorfulWitness)
        assert validate_colorful(G, c, w).ok


def test_kneser3_colorful():
    H = usual_kneser(7, 2, 3)
    res = chromatic_number(H)
    assert res.value == 2
    w = find_colorful_balanced(H, res.coloring, 3, 4)
    assert isinstance(w, ColorfulWitness)
    assert validate_colorful(H, res.coloring, w, r=3).ok


def test_single_edge_trivial():
    H = Hypergraph(3, (frozenset({1, 2, 3}),), uniformity=3)
    c = Coloring((1, 1, 2), palette_size=2)
    w = find_colorful_balanced(H, c, 3, 2)
    assert isinstance(w, ColorfulWitness)
    assert validate_colorful(H, c, w).ok


def test_unreachable_target_is_counterexample_verdict():
    G = k(2)  # a single graph edge
    c = Coloring((1, 2), palette_size=2)
    v = find_colorful_balanced(G, c, 2, 5)
    assert isinstance(v, Verdict)
    assert v.kind == "counterexample"
    assert "maximum achievable total is 2" in v.detail
    (best,) = v.witness
    assert best.total_size == 2


def test_improper_coloring_rejected():
    G = k(2)
    with pytest.raises(ValueError):
        find_colorful_balanced(G, Coloring((1, 1), palette_size=1), 2, 1)


def test_validate_flags_tampered_witness():
    G = k(2)
    c = Coloring((1, 2), palette_size=2)
    w = find_colorful_balanced(G, c, 2, 2)
    bad = ColorfulWitness(w.parts, (frozenset({9}),) + w.color_sets[1:])
    v = validate_colorful(G, c, bad)
    assert not v.ok and v.detail == "stored colors wrong"


# ---------------------------------------------------------------------------
# zig-zag
# ---------------------------------------------------------------------------


def test_zigzag_k4_identity_coloring():
    G = k(4)
    c = Coloring((1, 2, 3, 4), palette_size=4)
    w = zigzag_check(G, c)  # t = 4
    assert isinstance(w, ZigzagWitness)
    assert {w.side_a, w.side_b} == {frozenset({1, 3}), frozenset({2, 4})}
    assert w.colors == (1, 2, 3, 4)


def test_zigzag_k2():
    w = zigzag_check(k(2), Coloring((1, 2), palette_size=2), t=2)
    assert isinstance(w, ZigzagWitness)


def test_zigzag_petersen_all_canonical_3_colorings():
    G = petersen()
    for c in proper_colorings_canonical(G, 3):
        w = zigzag_check(G, c, t=3)
        assert isinstance(w, ZigzagWitness)
        assert len(w.side_a) == 2 and len(w.side_b) == 1


# ---------------------------------------------------------------------------
# formulas and certification
# ---------------------------------------------------------------------------


def test_formula_spot_checks():
    f = local_lower_formulas(7, 3, 3)
    assert (f.a, f.b) == (2, 1)
    assert f.bound == 3
    g = local_lower_formulas(3, 2)
    assert g.bound == 3
    assert g.graph_bound == 3
    z = local_lower_formulas(0, 2)
    assert z.degenerate


def test_formula_independence_bound():
    f = local_lower_formulas(3, 2, 2, F=complete_hypergraph(5, 2))
    assert f.independence_bound == 5 - 2 - 1 + 1  # ceil(10/2)=5, alpha=2


def test_formula_validates_arguments():
    with pytest.raises(ValueError):
        local_lower_formulas(-1, 2)
    with pytest.raises(ValueError):
        local_lower_formulas(3, 2, 3)


@pytest.mark.parametrize(
    "H, p, t, bound, chi_l, case",
    [
        (k(4), 2, 4, 3, 4, 1),
        (cycle(5), 2, 3, 3, 3, 1),
        (k(3), 3, 3, 3, 3, None),
        (Hypergraph(3, (frozenset({1, 2, 3}),), uniformity=3), 3, 3, 2, 2, None),
    ],
)
def test_certify_local(H, p, t, bound, chi_l, case):
    rep = certify_local(H, p)
    assert rep.applicable
    assert rep.t == t
    assert rep.formulas.bound == bound
    assert rep.chi_local == chi_l
    assert rep.bound_holds
    assert rep.witness is not None
    assert rep.case_certificate is not None
    assert rep.case_certificate.ok
    if case is not None:
        assert rep.case_certificate.case == case


def test_certify_local_inapplicable_without_clique():
    rep = certify_local(cycle(5), 3)
    assert not rep.applicable
    assert "omega" in rep.detail


# ---------------------------------------------------------------------------
# coloring corpora
# ---------------------------------------------------------------------------


def test_canonical_colorings_are_proper_and_canonical():
    from hyperchrom.hypergraph import is_proper

    G = cycle(5)
    seen = set()
    for c in proper_colorings_canonical(G, 3):
        assert is_proper(G, c)
        vals = tuple(c(v) for v in G.vertices)
        assert vals not in seen
        seen.add(vals)
        # vertex i may introduce at most one color beyond those before it
        assert all(
            vals[i] <= max(vals[:i], default=0) + 1 for i in range(len(vals))
        )


def test_random_proper_coloring_deterministic_per_seed():
    G = petersen()
    a = random_proper_coloring(G, 3, random.Random(99))
    b = random_proper_coloring(G, 3, random.Random(99))
    assert a == b
    from hyperchrom.hypergraph import is_proper

    assert is_proper(G, a)
