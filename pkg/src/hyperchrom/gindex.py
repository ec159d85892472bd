"""Value and sign functions, the cross-index, and certified index bounds.

The cross-index Xind of a free Z_p-poset is computed exactly by
backtracking over orbit representatives.  The simplicial index ind is
not computable by finite search (failing to find a simplicial map at a
bounded subdivision depth does not refute a continuous map), so it is
reported as a certified interval: every bound carries a certificate
that can be re-checked independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .altdefect import alt_min
from .complexes import (
    GPoset,
    SimplicialGComplex,
    barycentric_subdivision,
    orbit_decomposition,
)
from .hypergraph import Hypergraph, SearchBudget

__all__ = [
    "LabeledSimplex",
    "IndexInterval",
    "Certificate",
    "XindResult",
    "value_l",
    "value_l_bruteforce",
    "canonical_sign",
    "xind_exact",
    "ind_bounds",
    "check_order_map",
    "check_simplicial_map",
    "check_join_embedding",
]


@dataclass(frozen=True)
class LabeledSimplex:
    """Simplex of (sigma^{p-1}_{p-2})^{*m}: a set of labels (eps, j) with
    eps a residue in 0..p-1 and j a level in 1..m, at most one label per
    (eps, j) and never all p residues at one level."""

    labels: frozenset
    p: int
    m: int

    def __post_init__(self):
        seen: dict[int, set[int]] = {}
        for eps, j in self.labels:
            if not (0 <= eps < self.p and 1 <= j <= self.m):
                raise ValueError(f"label {(eps, j)} out of range")
            seen.setdefault(j, set()).add(eps)
        if any(len(s) == self.p for s in seen.values()):
            raise ValueError("a level carries all p residues")

    def part(self, eps: int) -> frozenset:
        """tau^eps: the labels carrying residue eps."""
        return frozenset(x for x in self.labels if x[0] == eps)

    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.p
        for eps, _ in self.labels:
            counts[eps] += 1
        return tuple(counts)

    def rotate(self, k: int) -> "LabeledSimplex":
        return LabeledSimplex(
            frozenset(((eps + k) % self.p, j) for eps, j in self.labels),
            self.p,
            self.m,
        )


def value_l(tau: LabeledSimplex) -> tuple[int, int]:
    """(l(tau), h(tau)): h is the minimum class size and
    l = p*h + #{eps : |tau^eps| > h}."""
    sizes = tau.sizes()
    h = min(sizes)
    l = tau.p * h + sum(1 for s in sizes if s > h)
    return l, h


def value_l_bruteforce(tau: LabeledSimplex) -> int:
    """l(tau) from its definition: the largest union of per-class
    subfamilies B^eps <= tau^eps whose sizes pairwise differ by <= 1."""
    sizes = tau.sizes()
    best = 0
    for pick in itertools.product(*(range(s + 1) for s in sizes)):
        if max(pick) - min(pick) <= 1:
            best = max(best, sum(pick))
    return best


def _rotate_subset(s: frozenset, k: int, p: int) -> frozenset:
    return frozenset((x + k) % p for x in s)


def canonical_sign(x, p: Optional[int] = None) -> int:
    """The sign functions s and s_0: the residue j such that the input
    equals w^j applied to the lexicographically least member of its
    rotation orbit.

    Accepts a LabeledSimplex in W (all nonzero class sizes equal) for s,
    or a proper nonempty subset of residues (a simplex of
    sigma^{p-1}_{p-2}) for s_0.  Equivariance s(w.x) = w.s(x) holds by
    construction.
    """
    if isinstance(x, LabeledSimplex):
        nonzero = [s for s in x.sizes() if s]
        if not nonzero or len(set(nonzero)) != 1:
            raise ValueError("not in W: nonzero class sizes must be equal")
        orbit = [x.rotate(k) for k in range(x.p)]
        keys = [tuple(sorted(y.labels)) for y in orbit]
        least = min(keys)
        if keys.count(least) != 1:
            raise ValueError("rotation orbit is not free")
        # x = w^j . rep  where rep = x rotated by -j
        return next(
            j for j in range(x.p)
            if tuple(sorted(x.rotate(-j).labels)) == least
        )
    if p is None:
        raise ValueError("p is required for subset inputs")
    s = frozenset(x)
    if not s or len(s) >= p or not all(0 <= e < p for e in s):
        raise ValueError("expected a proper nonempty subset of residues")
    orbit_keys = [tuple(sorted(_rotate_subset(s, -j, p))) for j in range(p)]
    least = min(orbit_keys)
    if orbit_keys.count(least) != 1:
        raise ValueError("rotation orbit is not free")
    return orbit_keys.index(least)


# ---------------------------------------------------------------------------
# Equivariant-map search engine
# ---------------------------------------------------------------------------

ORDER = 0  # x < y: level(x) < level(y), or identical labels
NO_CLASH = 1  # x, y share a simplex: equal levels force equal signs


class _EquivariantCSP:
    """Backtracking search for a Z_p-equivariant labeling by (sign, level).

    Variables are orbit representatives; every element is rep shifted by
    a power of the generator, so assigning a rep fixes its whole orbit.
    Binary constraints relate elements; they are translated to rep-level
    value pairs through the shifts.  Forward checking with a
    minimum-remaining-values variable order; the first representative's
    sign is pinned to 0 (composing with a global rotation is harmless).
    """

    def __init__(self, p: int, n_orbits: int, levels: int):
        self.p = p
        self.n_orbits = n_orbits
        self.levels = levels
        # constraints[(a, b)] = list of (sa, sb, kind) for rep pairs a <= b
        self.constraints: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        self.infeasible = False

    def add(self, a: int, sa: int, b: int, sb: int, kind: int) -> None:
        """Constrain element w^sa.rep_a against element w^sb.rep_b."""
        if a == b:
            # both elements take the same level; an ORDER constraint in
            # one orbit (or a sign clash) can never be satisfied
            if kind == ORDER or (sa - sb) % self.p:
                self.infeasible = True
            return
        if a < b:
            self.constraints.setdefault((a, b), []).append((sa, sb, kind))
        else:
            flip = ORDER + 2 if kind == ORDER else NO_CLASH
            self.constraints.setdefault((b, a), []).append((sb, sa, flip))

    def _ok(self, va, vb, sa: int, sb: int, kind: int) -> bool:
        ea, la = va
        eb, lb = vb
        same = la == lb and (ea + sa - eb - sb) % self.p == 0
        if kind == ORDER:  # a's element below b's element
            return la < lb or same
        if kind == ORDER + 2:  # b's element below a's element
            return lb < la or same
        return la != lb or (ea + sa - eb - sb) % self.p == 0

    def solve(self, budget: Optional[SearchBudget] = None) -> Optional[list]:
        """Find a satisfying assignment of (sign, level) per orbit, or None.

        For p = 2 the problem is translated to CNF and handed to the
        clause-learning solver in :mod:`.sat`, which handles the large
        refutation instances; otherwise a backtracking search with full
        arc consistency is used.
        """
        if self.infeasible:
            return None
        if self.n_orbits == 0:
            return []
        if self.p == 2:
            return self._solve_sat()
        return self._solve_mac(budget)

    def _solve_sat(self) -> Optional[list]:
        """CNF translation for p = 2: per orbit, level bools G_j <=>
        (level > j) in an order encoding plus one sign bool."""
        from .sat import SatSolver

        L = self.levels
        nvars_per = L  # L-1 level bools and one sign bool

        def g(a: int, j: int) -> int:
            return a * nvars_per + j  # j in 1..L-1

        def s(a: int) -> int:
            return a * nvars_per + L

        clauses: set[tuple[int, ...]] = set()

        def add(*lits: int) -> None:
            clauses.add(tuple(sorted(set(lits))))

        for a in range(self.n_orbits):
            for j in range(2, L):
                add(-g(a, j), g(a, j - 1))
        add(-s(0))  # pin the first representative's sign

        def sign_eq_clauses(a: int, b: int, q: int) -> list[list[int]]:
            if q == 0:
                return [[-s(a), s(b)], [s(a), -s(b)]]
            return [[s(a), s(b)], [-s(a), -s(b)]]

        for (a, b), cs in self.constraints.items():
            for sa, sb, kind in cs:
                q = (sa + sb) % 2
                eq = sign_eq_clauses(a, b, q)
                if kind == NO_CLASH:
                    for j in range(1, L + 1):
                        base = []
                        if j > 1:
                            base += [-g(a, j - 1), -g(b, j - 1)]
                        if j < L:
                            base += [g(a, j), g(b, j)]
                        for c in eq:
                            add(*base, *c)
                else:
                    lo, hi = (a, b) if kind == ORDER else (b, a)
                    for j in range(1, L):
                        add(-g(lo, j), g(hi, j))
                    for j in range(1, L + 1):
                        base = []
                        if j > 1:
                            base.append(-g(lo, j - 1))
                        if j < L:
                            base.append(g(hi, j))
                        for c in eq:
                            add(*base, *c)

        solver = SatSolver(self.n_orbits * nvars_per)
        for c in clauses:
            solver.add_clause(c)
        model = solver.solve()
        if model is None:
            return None
        out = []
        for a in range(self.n_orbits):
            level = 1 + sum(1 for j in range(1, L) if model[g(a, j)])
            out.append((1 if model[s(a)] else 0, level))
        return out

    def _solve_mac(self, budget: Optional[SearchBudget] = None) -> Optional[list]:
        """Backtracking with full arc consistency maintained at every node.

        Domains are bitmasks over value indices; each directed
        constrained pair carries a precomputed support table, so an AC
        revision is a few integer operations.
        """
        budget = budget or SearchBudget()
        p, levels = self.p, self.levels
        values = [(e, l) for l in range(1, levels + 1) for e in range(p)]
        nv = len(values)

        # arcs[a] = list of (b, support) with support[va] = mask of
        # b-values compatible with a-value va under every constraint
        arcs: list[list[tuple[int, list[int]]]] = [[] for _ in range(self.n_orbits)]
        for (a, b), cs in self.constraints.items():
            fwd = [0] * nv
            bwd = [0] * nv
            for ia, va in enumerate(values):
                for ib, vb in enumerate(values):
                    if all(self._ok(va, vb, sa, sb, k) for sa, sb, k in cs):
                        fwd[ia] |= 1 << ib
                        bwd[ib] |= 1 << ia
            arcs[a].append((b, fwd))
            arcs[b].append((a, bwd))

        full = (1 << nv) - 1
        sign0 = 0
        for i, (e, _) in enumerate(values):
            if e == 0:
                sign0 |= 1 << i
        dom = [full] * self.n_orbits
        dom[0] = sign0  # pin the first representative's sign

        def propagate(queue: list[int]) -> bool:
            pending = set(queue)
            while pending:
                a = pending.pop()
                da = dom[a]
                for b, support in arcs[a]:
                    allowed = 0
                    m = da
                    while m:
                        low = m & -m
                        allowed |= support[low.bit_length() - 1]
                        m ^= low
                    nb = dom[b] & allowed
                    if nb != dom[b]:
                        if not nb:
                            return False
                        dom[b] = nb
                        pending.add(b)
            return True

        if not propagate(list(range(self.n_orbits))):
            return None

        def backtrack() -> bool:
            budget.tick()
            var = -1
            best = nv + 1
            for i in range(self.n_orbits):
                c = dom[i].bit_count()
                if 1 < c < best:
                    best = c
                    var = i
            if var < 0:
                return True  # every domain is a singleton
            saved = list(dom)
            m = dom[var]
            while m:
                low = m & -m
                m ^= low
                dom[var] = low
                if propagate([var]) and backtrack():
                    return True
                dom[:] = saved
            return False

        if not backtrack():
            return None
        return [values[dom[i].bit_length() - 1] for i in range(self.n_orbits)]


def _poset_orbit_structure(P: GPoset):
    """(reps, orbit_of, shift_of) with element = w^shift . rep."""
    orbits, free = orbit_decomposition(P)
    if not free:
        raise ValueError("the poset is not free")
    reps = [min(o) for o in orbits]
    orbit_of = {}
    shift_of = {}
    for a, rep in enumerate(reps):
        x = rep
        for g in range(P.p):
            if x not in shift_of:
                orbit_of[x] = a
                shift_of[x] = g
            x = P.act(1, x)
    return reps, orbit_of, shift_of


def _search_order_map(
    P: GPoset, n: int, budget: Optional[SearchBudget] = None
) -> Optional[dict[int, tuple[int, int]]]:
    """An order-preserving Z_p-map P -> Q_{n,p}, or None."""
    reps, orbit_of, shift_of = _poset_orbit_structure(P)
    csp = _EquivariantCSP(P.p, len(reps), n + 1)
    for x in range(len(P)):
        for y in P.above[x]:
            csp.add(orbit_of[x], shift_of[x], orbit_of[y], shift_of[y], ORDER)
    sol = csp.solve(budget)
    if sol is None:
        return None
    out = {}
    for x in range(len(P)):
        e, l = sol[orbit_of[x]]
        out[x] = ((e + shift_of[x]) % P.p, l)
    return out


def check_order_map(P: GPoset, psi: dict[int, tuple[int, int]], n: int) -> bool:
    """Independently re-check an order-preserving Z_p-map P -> Q_{n,p}."""
    p = P.p
    for x in range(len(P)):
        e, l = psi[x]
        if not (0 <= e < p and 1 <= l <= n + 1):
            return False
        ex, lx = psi[P.act(1, x)]
        if (ex - e) % p != 1 or lx != l:
            return False
        for y in P.above[x]:
            ey, ly = psi[y]
            if not (l < ly or (l == ly and e == ey)):
                return False
    return True


@dataclass(frozen=True)
class XindResult:
    """Exact cross-index with its witness map (element index -> (eps, level))."""

    value: Optional[int]
    n_max: int
    witness: Optional[dict] = field(default=None, compare=False)

    def __str__(self) -> str:
        return str(self.value) if self.value is not None else f"> {self.n_max}"


def xind_exact(
    P: GPoset,
    n_max: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> XindResult:
    """Least n with an order-preserving Z_p-map P -> Q_{n,p}.

    The empty poset has cross-index -1 by convention.  The map
    x -> (sign, height of x) is always order preserving, so n_max
    defaults to height(P) - 1 and the result is exact by default.
    """
    if len(P) == 0:
        return XindResult(value=-1, n_max=-1)
    if n_max is None:
        n_max = P.height() - 1
    for n in range(0, n_max + 1):
        psi = _search_order_map(P, n, budget)
        if psi is not None:
            return XindResult(value=n, n_max=n_max, witness=psi)
    return XindResult(value=None, n_max=n_max)


# ---------------------------------------------------------------------------
# Certified bracketing of ind_{Z_p}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str
    bound: int
    witness: Optional[tuple] = field(default=None, compare=False)


@dataclass(frozen=True)
class IndexInterval:
    lower: int
    upper: int
    certificates: tuple[Certificate, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("inconsistent index interval")

    def exact(self) -> Optional[int]:
        return self.lower if self.lower == self.upper else None

    def __str__(self) -> str:
        return f"[{self.lower}, {self.upper}]"


def _complex_orbit_structure(K: SimplicialGComplex):
    orbits, free = orbit_decomposition(K)
    if not free:
        raise ValueError("the complex is not free")
    reps = [o[0] for o in orbits]
    orbit_of = {}
    shift_of = {}
    for a, rep in enumerate(reps):
        v = rep
        for g in range(K.p):
            if v not in shift_of:
                orbit_of[v] = a
                shift_of[v] = g
            v = K.act(1, v)
    return reps, orbit_of, shift_of


def _search_simplicial_map(
    K: SimplicialGComplex, n: int, budget: Optional[SearchBudget] = None
) -> Optional[dict]:
    """A simplicial Z_p-map K -> Z_p^{*(n+1)}, or None.

    A vertex labeling (sign, level) is such a map iff no two vertices of
    a common simplex carry the same level with different signs.
    """
    reps, orbit_of, shift_of = _complex_orbit_structure(K)
    csp = _EquivariantCSP(K.p, len(reps), n + 1)
    seen: set[frozenset] = set()
    for m in K.maximal_simplices:
        for u, v in itertools.combinations(sorted(m, key=repr), 2):
            pair = frozenset((u, v))
            if pair in seen:
                continue
            seen.add(pair)
            csp.add(orbit_of[u], shift_of[u], orbit_of[v], shift_of[v], NO_CLASH)
    sol = csp.solve(budget)
    if sol is None:
        return None
    return {
        v: ((sol[orbit_of[v]][0] + shift_of[v]) % K.p, sol[orbit_of[v]][1])
        for v in K.vertices
    }


def check_simplicial_map(K: SimplicialGComplex, phi: dict, n: int) -> bool:
    """Independently re-check a simplicial Z_p-map K -> Z_p^{*(n+1)}."""
    p = K.p
    for v in K.vertices:
        e, l = phi[v]
        if not (0 <= e < p and 1 <= l <= n + 1):
            return False
        ew, lw = phi[K.act(1, v)]
        if (ew - e) % p != 1 or lw != l:
            return False
    for m in K.maximal_simplices:
        for u, v in itertools.combinations(sorted(m, key=repr), 2):
            if phi[u][1] == phi[v][1] and phi[u][0] != phi[v][0]:
                return False
    return True


def _search_join_embedding(
    K: SimplicialGComplex, size_cap: int, budget: Optional[SearchBudget] = None
) -> tuple[int, Optional[tuple]]:
    """Largest m <= size_cap with an equivariant embedding of
    Z_p^{*(m+1)} as a subcomplex of K; returns (m, coordinates).

    Coordinate i is a pair (vertex, twist): the join vertex (eps, i)
    maps to w^{eps+twist} applied to that vertex.  The first twist is
    pinned to 0.
    """
    p = K.p
    reps, orbit_of, shift_of = _complex_orbit_structure(K)
    budget = budget or SearchBudget()

    best: list = [(-1, None)]

    def orbit_vertex(coord, eps: int):
        v, t = coord
        return K.act(eps + t, v)

    def consistent(coords: list) -> bool:
        k = len(coords)
        for signs in itertools.product(range(p), repeat=k):
            simplex = frozenset(
                orbit_vertex(coords[i], signs[i]) for i in range(k)
            )
            if len(simplex) < k or not K.is_simplex(simplex):
                return False
        return True

    def rec(coords: list, next_rep: int) -> None:
        budget.tick()
        if len(coords) - 1 > best[0][0]:
            best[0] = (len(coords) - 1, tuple(coords))
        if len(coords) >= size_cap + 1:
            return
        for a in range(next_rep, len(reps)):
            twists = (0,) if not coords else tuple(range(p))
            for t in twists:
                cand = coords + [(reps[a], t)]
                if consistent(cand):
                    rec(cand, a + 1)

    rec([], 0)
    return best[0]


def check_join_embedding(K: SimplicialGComplex, coords: Sequence, m: int) -> bool:
    """Independently re-check that coords embed Z_p^{*(m+1)} into K."""
    if len(coords) != m + 1:
        return False
    p = K.p
    for signs in itertools.product(range(p), repeat=m + 1):
        simplex = frozenset(
            K.act(signs[i] + coords[i][1], coords[i][0]) for i in range(m + 1)
        )
        if len(simplex) < m + 1 or not K.is_simplex(simplex):
            return False
    return True


def _provenance_lower(K: SimplicialGComplex) -> Optional[Certificate]:
    """Registered lower bounds keyed by how the complex was built."""
    prov = K.provenance
    if not prov:
        return None
    if prov[0] == "sigma_complex":
        _, n, p, alpha = prov
        return Certificate("inequality-3.4", n - alpha - 1, witness=(n, p, alpha))
    if prov[0] == "box":
        _, H, p = prov
        if isinstance(H, Hypergraph) and H.provenance and H.provenance[0] == "kneser":
            F = H.provenance[1]
            alt = alt_min(F, p).value
            return Certificate(
                "inequality-3.5", F.n - alt - 1, witness=(F.n, p, alt)
            )
    return None


def ind_bounds(
    K: SimplicialGComplex,
    depth: int = 0,
    n_max: Optional[int] = None,
    map_search_limit: int = 400,
    embed_cap: int = 6,
    budget: Optional[SearchBudget] = None,
) -> IndexInterval:
    """Certified interval for ind_{Z_p}(K); K must be free.

    Upper bounds: the dimension of a free complex, and explicit
    simplicial Z_p-maps sd^d(K) -> Z_p^{*(n+1)} for d <= depth (skipped
    for complexes above ``map_search_limit`` vertices).  Lower bounds:
    equivariant subcomplex embeddings of Z_p^{*(m+1)}, and inequalities
    registered against the complex's provenance.
    """
    if not K.is_free():
        raise ValueError("ind bounds require a free complex")
    certificates: list[Certificate] = []
    if not K.vertices:
        return IndexInterval(-1, -1, (Certificate("dimension", -1),))

    upper = K.dim
    certificates.append(Certificate("dimension", K.dim))

    lower = 0  # a nonempty complex has index >= 0
    prov_cert = _provenance_lower(K)
    if prov_cert is not None and prov_cert.bound > lower:
        lower = prov_cert.bound
        certificates.append(prov_cert)

    if len(K.vertices) <= map_search_limit:
        m, coords = _search_join_embedding(K, min(embed_cap, upper), budget)
        if m > lower:
            lower = m
            certificates.append(Certificate("subcomplex-embedding", m, witness=coords))

        level = K
        for d in range(depth + 1):
            if len(level.vertices) > map_search_limit:
                break
            if d:
                level = barycentric_subdivision(level)
            hi = upper if n_max is None else min(upper, n_max)
            for n in range(max(lower, 0), hi):
                phi = _search_simplicial_map(level, n, budget)
                if phi is not None:
                    upper = n
                    certificates.append(
                        Certificate("explicit-map", n, witness=(d, phi))
                    )
                    break

    return IndexInterval(lower, upper, tuple(certificates))
