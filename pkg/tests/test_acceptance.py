"""Acceptance gate: one criterion per test, one printed pass/fail line
per criterion, each with its wall-clock budget."""

import itertools
import math
import random
import sys
import time

from hyperchrom.altdefect import alt_min, colorability_defect
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
from hyperchrom.complexes import box_complex, hom_poset
from hyperchrom.gindex import (
    LabeledSimplex,
    canonical_sign,
    ind_bounds,
    value_l,
    value_l_bruteforce,
    xind_exact,
)
from hyperchrom.hypergraph import (
    Coloring,
    build_hypergraph,
    chromatic_number,
    clique_number,
    complete_hypergraph,
    kneser,
    local_chromatic_number,
    usual_kneser,
)
from hyperchrom.tucker import FanChain, fan_sweep, gamma_case_analysis


def report(capfd, num, desc, ok, elapsed, budget):
    line = (
        f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc} "
        f"({elapsed:.1f}s / budget {budget:.0f}s)\n"
    )
    with capfd.disabled():
        sys.stdout.write(line)
        sys.stdout.flush()
    assert ok, line
    assert elapsed < budget, f"criterion {num} exceeded budget: {line}"


def test_criterion_1_chromatic_formula(capfd):
    t0 = time.perf_counter()
    ok = True
    for r, n, k in [(2, 5, 2), (2, 6, 2), (2, 7, 3), (3, 7, 2), (3, 8, 2)]:
        got = chromatic_number(usual_kneser(n, k, r)).value
        want = math.ceil((n - r * (k - 1)) / (r - 1))
        ok = ok and got == want
    report(capfd, 1, "Kneser chromatic formula, 5 instances", ok,
           time.perf_counter() - t0, 60)


def test_criterion_2_defect_identity(capfd):
    t0 = time.perf_counter()
    ok = all(
        colorability_defect(complete_hypergraph(n, k), p) == n - p * (k - 1)
        for n, k, p in [(6, 2, 2), (7, 2, 3), (7, 3, 2)]
    )
    report(capfd, 2, "colorability defect identity, 3 instances", ok,
           time.perf_counter() - t0, 30)


def test_criterion_3_alternation_identity(capfd):
    t0 = time.perf_counter()
    ok = True
    for n, k, p in [(5, 2, 2), (7, 2, 3), (5, 3, 2)]:
        F = complete_hypergraph(n, k)
        res = alt_min(F, p)
        ok = ok and res.exact and res.value == p * (k - 1)
        ok = ok and F.n - res.value == colorability_defect(F, p)
    report(capfd, 3, "alternation identity and |V|-alt = cd, 3 instances", ok,
           time.perf_counter() - t0, 60)


def test_criterion_4_hierarchy_consistency(capfd):
    t0 = time.perf_counter()
    r = 2
    ok = True
    for n, k in [(5, 2), (6, 2), (5, 3)]:
        F = complete_hypergraph(n, k)
        K = kneser(F, r)
        for p in (2, 3):
            chain = []  # certified (lower, upper) pairs, Theorem-2 order
            cd = colorability_defect(F, p)
            chain.append((cd, cd))
            va = F.n - alt_min(F, p).value
            chain.append((va, va))
            iv = ind_bounds(box_complex(K, p))
            chain.append((iv.lower + 1, iv.upper + 1))
            if clique_number(K) >= p:
                x = xind_exact(hom_poset(K, r, p)).value + p
                chain.append((x, x))
            chi = (r - 1) * int(chromatic_number(K).value)
            chain.append((chi, chi))
            ok = ok and all(
                a_lo <= b_hi
                for (a_lo, _), (_, b_hi) in zip(chain, chain[1:])
            )
    report(capfd, 4, "bound hierarchy consistent for 3 families x p in {2,3}", ok,
           time.perf_counter() - t0, 600)


def test_criterion_5_fan_sweep(capfd):
    t0 = time.perf_counter()
    ok = True
    for n, m, p, alpha in [(2, 2, 2, 0), (3, 3, 2, 1), (2, 2, 3, 0)]:
        rep = fan_sweep(n, m, p, alpha)
        ok = ok and rep.ok and rep.regime_ok and not rep.failures
        ok = ok and rep.admissible > 0
    # outside the regime no admissible labeling may exist
    ok = ok and fan_sweep(3, 1, 2, 0).admissible == 0
    report(capfd, 5, "equivariant labeling sweep, 3 exhaustive + 1 vacuous", ok,
           time.perf_counter() - t0, 600)


def test_criterion_6_colorful_witness(capfd):
    t0 = time.perf_counter()
    ok = True
    G = usual_kneser(5, 2, 2)
    for c in proper_colorings_canonical(G, 3):
        w = find_colorful_balanced(G, c, 2, 3)
        ok = ok and isinstance(w, ColorfulWitness) and validate_colorful(G, c, w).ok
    rng = random.Random(2024)
    for _ in range(1000):
        c = random_proper_coloring(G, 6, rng)
        w = find_colorful_balanced(G, c, 2, 3)
        ok = ok and isinstance(w, ColorfulWitness) and validate_colorful(G, c, w).ok
    H = usual_kneser(7, 2, 3)
    rng = random.Random(2025)
    for _ in range(200):
        c = random_proper_coloring(H, 4, rng)
        w = find_colorful_balanced(H, c, 3, 4)
        ok = ok and isinstance(w, ColorfulWitness) and validate_colorful(H, c, w).ok
    report(capfd, 6, "colorful balanced witnesses in every tested coloring", ok,
           time.perf_counter() - t0, 900)


def test_criterion_7_zigzag(capfd):
    t0 = time.perf_counter()
    K4 = complete_hypergraph(4, 2)
    ok = xind_exact(hom_poset(K4, 2, 2)).value == 2
    for c in proper_colorings_canonical(K4, 4):
        w = zigzag_check(K4, c, t=4)
        ok = ok and isinstance(w, ZigzagWitness)
        ok = ok and len(w.side_a) == 2 and len(w.side_b) == 2
    G = usual_kneser(5, 2, 2)
    rng = random.Random(11)
    for _ in range(50):
        c = random_proper_coloring(G, 3, rng)
        w = zigzag_check(G, c, t=3)
        ok = ok and isinstance(w, ZigzagWitness)
    report(capfd, 7, "alternating multicolored bipartite witnesses", ok,
           time.perf_counter() - t0, 300)


def test_criterion_8_local_chromatic(capfd):
    t0 = time.perf_counter()
    K4 = complete_hypergraph(4, 2)
    C5 = build_hypergraph(5, [[i, i % 5 + 1] for i in range(1, 6)])
    ok = local_chromatic_number(K4) == 4 and local_chromatic_number(C5) == 3
    for H, p in [(K4, 2), (C5, 2)]:
        rep = certify_local(H, p)
        ok = ok and rep.applicable and rep.bound_holds
        ok = ok and rep.case_certificate is not None and rep.case_certificate.ok
    ok = ok and local_lower_formulas(7, 3, 3).bound == 3
    ok = ok and local_lower_formulas(3, 2).graph_bound == 3
    report(capfd, 8, "local chromatic oracles, certified bounds, formula checks", ok,
           time.perf_counter() - t0, 300)


def test_criterion_9_proof_machinery(capfd):
    t0 = time.perf_counter()

    def simplices(p, m):
        univ = [(e, j) for e in range(p) for j in range(1, m + 1)]
        for size in range(1, len(univ) + 1):
            for s in itertools.combinations(univ, size):
                try:
                    yield LabeledSimplex(frozenset(s), p, m)
                except ValueError:
                    pass

    ok = all(
        value_l(tau)[0] == value_l_bruteforce(tau)
        for p in (2, 3)
        for m in (1, 2, 3, 4)
        for tau in simplices(p, m)
    )
    for p in (2, 3, 5):
        for size in range(1, p):
            for s in itertools.combinations(range(p), size):
                bar = frozenset(s)
                rot = frozenset((e + 1) % p for e in bar)
                ok = ok and canonical_sign(rot, p) == (canonical_sign(bar, p) + 1) % p
    cases = set()
    for p, m in [(2, 3), (3, 2)]:
        sims = list(simplices(p, m))
        for a in sims:
            for b in sims:
                if a.labels < b.labels:
                    c = gamma_case_analysis(a, b)
                    cases.add(c.case)
                    ok = ok and not c.clash_possible
    iiib = gamma_case_analysis(
        LabeledSimplex(frozenset({(0, 1), (1, 2)}), 2, 4),
        LabeledSimplex(frozenset({(0, 1), (1, 2), (0, 3), (1, 4)}), 2, 4),
    )
    cases.add(iiib.case)
    ok = ok and not iiib.clash_possible
    ok = ok and {"(i)", "(ii)", "(iii)(a)", "(iii)(b)"} <= cases
    report(capfd, 9, "value/sign closed forms and collapse case analysis", ok,
           time.perf_counter() - t0, 120)
