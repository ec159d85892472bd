"""Simplicial complexes and posets carrying a cyclic group action.

Group elements of Z_p are residues 0..p-1 with 0 the identity; the
display convention writes residue j as w^j (and the identity as w^p,
matching the usual generator-power notation).

Complexes are stored by their maximal simplices; membership of a face
is a subset test against that antichain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from .altdefect import SignedVector, alt_of_vector, signed_vectors
from .hypergraph import Hypergraph, PartiteFamily, is_complete_partite

__all__ = [
    "SimplicialGComplex",
    "GPoset",
    "sigma_simplex",
    "zp_join",
    "join",
    "barycentric_subdivision",
    "box_complex",
    "hom_poset",
    "order_complex",
    "q_poset",
    "sigma_complex",
    "orbit_decomposition",
    "complex_to_text",
    "poset_to_text",
]

Label = Hashable


def group_label(eps: int, p: int) -> str:
    return f"w^{eps if eps else p}"


@dataclass(frozen=True)
class SimplicialGComplex:
    """Finite simplicial complex with a Z_p action given by one generator.

    ``generator`` maps each vertex to its image under w; w^k acts by
    iterating.  ``provenance`` tags the construction for downstream
    index certificates.
    """

    vertices: tuple[Label, ...]
    maximal_simplices: tuple[frozenset, ...]
    p: int
    generator: dict = field(compare=False)
    provenance: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        vset = set(self.vertices)
        if set(self.generator) != vset or set(self.generator.values()) != vset:
            raise ValueError("generator must permute the vertex set")
        for m in self.maximal_simplices:
            if not m <= vset:
                raise ValueError("maximal simplex outside vertex set")

    @cached_property
    def _perms(self) -> list[dict]:
        perms = [dict((v, v) for v in self.vertices)]
        for _ in range(1, self.p):
            prev = perms[-1]
            perms.append({v: self.generator[prev[v]] for v in self.vertices})
        return perms

    def act(self, g: int, v: Label) -> Label:
        return self._perms[g % self.p][v]

    def act_set(self, g: int, s: Iterable[Label]) -> frozenset:
        perm = self._perms[g % self.p]
        return frozenset(perm[v] for v in s)

    def is_simplex(self, s: Iterable[Label]) -> bool:
        fs = frozenset(s)
        if not fs:
            return True
        return any(fs <= m for m in self.maximal_simplices)

    @property
    def dim(self) -> int:
        if not self.maximal_simplices:
            return -1
        return max(len(m) for m in self.maximal_simplices) - 1

    def simplices(self) -> Iterator[frozenset]:
        """All nonempty simplices (exponential; desk-scale complexes only)."""
        seen: set[frozenset] = set()
        for m in self.maximal_simplices:
            mv = sorted(m, key=repr)
            for k in range(1, len(mv) + 1):
                for sub in itertools.combinations(mv, k):
                    fs = frozenset(sub)
                    if fs not in seen:
                        seen.add(fs)
                        yield fs

    def closed_under_action(self) -> bool:
        return all(
            self.is_simplex(self.act_set(1, m)) for m in self.maximal_simplices
        )

    def is_free(self) -> bool:
        """No nonidentity power fixes a simplex setwise.

        A fixed simplex would contain a fixed vertex orbit, so it is
        enough to test whether any single orbit is a simplex.
        """
        for g in range(1, self.p):
            perm = self._perms[g]
            seen: set[Label] = set()
            for v in self.vertices:
                if v in seen:
                    continue
                orbit = {v}
                w = perm[v]
                while w != v:
                    orbit.add(w)
                    w = perm[w]
                seen |= orbit
                if self.is_simplex(orbit):
                    return False
        return True

    def __repr__(self) -> str:
        return (
            f"SimplicialGComplex(p={self.p}, |V|={len(self.vertices)}, "
            f"maximal={len(self.maximal_simplices)}, dim={self.dim})"
        )


@dataclass(frozen=True)
class GPoset:
    """Finite poset with a Z_p action by order automorphisms.

    The strict order is stored as ``above[i]`` = indices strictly above
    element i; labels are kept for display and witnesses.
    """

    labels: tuple[Label, ...]
    above: tuple[frozenset[int], ...]
    p: int
    generator: tuple[int, ...]
    provenance: Optional[tuple] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def _perms(self) -> list[tuple[int, ...]]:
        n = len(self.labels)
        perms = [tuple(range(n))]
        for _ in range(1, self.p):
            prev = perms[-1]
            perms.append(tuple(self.generator[prev[i]] for i in range(n)))
        return perms

    def act(self, g: int, i: int) -> int:
        return self._perms[g % self.p][i]

    def lt(self, i: int, j: int) -> bool:
        return j in self.above[i]

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.lt(i, j) or self.lt(j, i)

    def is_free(self) -> bool:
        return all(
            all(self.act(g, i) != i for i in range(len(self.labels)))
            for g in range(1, self.p)
        )

    def action_preserves_order(self) -> bool:
        gen = self.generator
        return all(
            all(gen[j] in self.above[gen[i]] for j in self.above[i])
            for i in range(len(self.labels))
        )

    def height(self) -> int:
        """Number of elements in a longest chain."""
        memo: dict[int, int] = {}

        def h(i: int) -> int:
            if i not in memo:
                memo[i] = 1 + max((h(j) for j in self.above[i]), default=0)
            return memo[i]

        return max((h(i) for i in range(len(self.labels))), default=0)

    def __repr__(self) -> str:
        return f"GPoset(p={self.p}, |P|={len(self.labels)})"


def _cyclic_pairs_generator(p: int, items: Sequence[Label]) -> dict:
    """Generator action on labels (eps, x): rotate the first coordinate."""
    return {(eps, x): ((eps + 1) % p, x) for eps in range(p) for x in items}


def sigma_simplex(r: int, t: int) -> SimplicialGComplex:
    """sigma^{r-1}_{t-1}: vertex set Z_r with all t-subsets maximal."""
    if not 1 <= t <= r:
        raise ValueError("need 1 <= t <= r")
    verts = tuple(range(r))
    maximal = tuple(frozenset(c) for c in itertools.combinations(verts, t))
    gen = {v: (v + 1) % r for v in verts}
    return SimplicialGComplex(verts, maximal, r, gen, provenance=("sigma", r, t))


def zp_join(p: int, n: int) -> SimplicialGComplex:
    """Z_p^{*n}: n-fold join of the p-point space; simplices are the
    partial sign assignments of [n]."""
    if n < 1:
        raise ValueError("need n >= 1")
    verts = tuple((eps, i) for eps in range(p) for i in range(1, n + 1))
    maximal = tuple(
        frozenset((f[i], i + 1) for i in range(n))
        for f in itertools.product(range(p), repeat=n)
    )
    gen = _cyclic_pairs_generator(p, range(1, n + 1))
    return SimplicialGComplex(verts, maximal, p, gen, provenance=("zp_join", p, n))


def join(K: SimplicialGComplex, L: SimplicialGComplex) -> SimplicialGComplex:
    """Join with disjointified vertex labels (0, v) and (1, w); diagonal action."""
    if K.p != L.p:
        raise ValueError("group order mismatch")
    verts = tuple((0, v) for v in K.vertices) + tuple((1, w) for w in L.vertices)
    kmax = K.maximal_simplices or (frozenset(),)
    lmax = L.maximal_simplices or (frozenset(),)
    maximal = tuple(
        frozenset((0, v) for v in a) | frozenset((1, w) for w in b)
        for a in kmax
        for b in lmax
    )
    gen = {(0, v): (0, K.generator[v]) for v in K.vertices}
    gen.update({(1, w): (1, L.generator[w]) for w in L.vertices})
    return SimplicialGComplex(verts, tuple(m for m in maximal if m), K.p, gen)


def barycentric_subdivision(K: SimplicialGComplex) -> SimplicialGComplex:
    """sd K: vertices are nonempty simplices, simplices are inclusion chains.

    Maximal chains are full flags of maximal simplices (one per vertex
    ordering of each maximal simplex).
    """
    verts = tuple(sorted(K.simplices(), key=lambda s: (len(s), sorted(map(repr, s)))))
    maximal: set[frozenset] = set()
    for m in K.maximal_simplices:
        for perm in itertools.permutations(sorted(m, key=repr)):
            flag = frozenset(frozenset(perm[: k + 1]) for k in range(len(perm)))
            maximal.add(flag)
    gen = {s: K.act_set(1, s) for s in verts}
    return SimplicialGComplex(verts, tuple(maximal), K.p, gen, provenance=("sd", K))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class _PartiteSearch:
    """Shared machinery for enumerating complete r-uniform p-partite
    part families of H (empty parts allowed)."""

    def __init__(self, H: Hypergraph, p: int, r: int):
        self.H = H
        self.p = p
        self.r = r
        self.eset = H.edge_set()
        self.adj: dict[int, set[int]] = {v: set() for v in H.vertices}
        if r == 2:
            for e in H.edges:
                a, b = tuple(e)
                self.adj[a].add(b)
                self.adj[b].add(a)
        self.slots = [(eps, v) for v in H.vertices for eps in range(p)]

    def feasible_add(self, parts: Sequence[set[int]], eps: int, v: int) -> bool:
        if any(v in part for part in parts):
            return False
        others = [part for i, part in enumerate(parts) if i != eps and part]
        if len(others) < self.r - 1:
            return True
        if self.r == 2:
            return all(part <= self.adj[v] for part in others)
        for chosen in itertools.combinations(others, self.r - 1):
            for combo in itertools.product(*chosen):
                if frozenset(combo) | {v} not in self.eset:
                    return False
        return True

    def families(self) -> Iterator[tuple[frozenset[int], ...]]:
        """Every feasible family exactly once (fixed slot order)."""
        parts: list[set[int]] = [set() for _ in range(self.p)]

        def rec(start: int) -> Iterator[tuple[frozenset[int], ...]]:
            yield tuple(frozenset(part) for part in parts)
            for idx in range(start, len(self.slots)):
                eps, v = self.slots[idx]
                if self.feasible_add(parts, eps, v):
                    parts[eps].add(v)
                    yield from rec(idx + 1)
                    parts[eps].remove(v)

        yield from rec(0)

    def maximal_families(self) -> Iterator[tuple[frozenset[int], ...]]:
        parts: list[set[int]] = [set() for _ in range(self.p)]

        def rec(start: int) -> Iterator[tuple[frozenset[int], ...]]:
            extendable = False
            for idx in range(start, len(self.slots)):
                eps, v = self.slots[idx]
                if self.feasible_add(parts, eps, v):
                    extendable = True
                    parts[eps].add(v)
                    yield from rec(idx + 1)
                    parts[eps].remove(v)
            if not extendable and not any(
                self.feasible_add(parts, eps, v) for eps, v in self.slots[:start]
            ):
                yield tuple(frozenset(part) for part in parts)

        yield from rec(0)


def _partite_feasible_families(
    H: Hypergraph, p: int, r: int
) -> Iterator[tuple[frozenset[int], ...]]:
    yield from _PartiteSearch(H, p, r).families()


def _maximal_partite_families(
    H: Hypergraph, p: int, r: int
) -> Iterator[tuple[frozenset[int], ...]]:
    yield from _PartiteSearch(H, p, r).maximal_families()


def box_complex(H: Hypergraph, p: int) -> SimplicialGComplex:
    """Z_p-box-complex B_0(H, Z_p) on vertex set Z_p x V(H)."""
    r = H.uniformity
    if r is None:
        raise ValueError("box complex requires a uniform hypergraph")
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if p < r:
        raise ValueError("need p >= r")
    verts = tuple((eps, v) for eps in range(p) for v in H.vertices)

    maximal = [
        frozenset((eps, v) for eps in range(p) for v in fam[eps])
        for fam in _maximal_partite_families(H, p, r)
    ]
    gen = _cyclic_pairs_generator(p, H.vertices)
    return SimplicialGComplex(
        verts, tuple(maximal), p, gen, provenance=("box", H, p)
    )


def hom_poset(H: Hypergraph, r: int, p: int) -> GPoset:
    """Z_p-hom-complex Hom(K^r_p, H): ordered p-tuples of nonempty
    pairwise disjoint parts forming complete r-uniform p-partite
    subhypergraphs, ordered by componentwise inclusion, rotated by Z_p.
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if H.uniformity is not None and H.uniformity != r:
        raise ValueError("H is not r-uniform")
    elements = sorted(
        (
            fam
            for fam in _partite_feasible_families(H, p, r)
            if all(fam)
        ),
        key=lambda fam: tuple(sorted(part) for part in fam),
    )
    index = {fam: i for i, fam in enumerate(elements)}
    above = []
    for fam in elements:
        ups = frozenset(
            j
            for j, other in enumerate(elements)
            if other != fam and all(a <= b for a, b in zip(fam, other))
        )
        above.append(ups)
    gen = tuple(index[fam[1:] + fam[:1]] for fam in elements)
    return GPoset(
        tuple(elements), tuple(above), p, gen, provenance=("hom", H, r, p)
    )


def order_complex(P: GPoset) -> SimplicialGComplex:
    """Delta P: vertices are poset elements, simplices are chains."""
    n = len(P)
    children = [sorted(P.above[i]) for i in range(n)]
    minimal = [i for i in range(n) if not any(i in P.above[j] for j in range(n))]

    maximal: list[frozenset[int]] = []

    def rec(chain: list[int]) -> None:
        last = chain[-1]
        extensions = [j for j in children[last] if _covers(P, last, j)]
        if not extensions:
            maximal.append(frozenset(chain))
            return
        for j in extensions:
            rec(chain + [j])

    for i in minimal:
        rec([i])

    verts = tuple(range(n))
    gen = {i: P.act(1, i) for i in range(n)}
    return SimplicialGComplex(
        verts, tuple(maximal), P.p, gen, provenance=("order_complex", P)
    )


def _covers(P: GPoset, i: int, j: int) -> bool:
    """j covers i: i < j with nothing strictly between."""
    return P.lt(i, j) and not any(P.lt(k, j) for k in P.above[i] if k != j)


def q_poset(n: int, p: int) -> GPoset:
    """Q_{n,p}: ground set Z_p x [n+1], (eps,i) < (eps',j) iff i < j."""
    if n < 0 or p < 2:
        raise ValueError("need n >= 0 and p >= 2")
    labels = tuple((eps, j) for j in range(1, n + 2) for eps in range(p))
    idx = {lab: i for i, lab in enumerate(labels)}
    above = tuple(
        frozenset(idx[(e2, j2)] for e2 in range(p) for j2 in range(lab[1] + 1, n + 2))
        for lab in labels
    )
    gen = tuple(idx[((lab[0] + 1) % p, lab[1])] for lab in labels)
    return GPoset(labels, above, p, gen, provenance=("q_poset", n, p))


def signed_vector_poset(n: int, p: int, min_alt: int = 1) -> GPoset:
    """Poset of nonzero signed vectors with alt >= min_alt, ordered by
    classwise inclusion, with the rotation action."""
    vecs = [X for X in signed_vectors(n, p) if alt_of_vector(X) >= min_alt]
    vecs.sort(key=lambda X: X.entries)
    idx = {X: i for i, X in enumerate(vecs)}
    above = tuple(
        frozenset(j for j, Y in enumerate(vecs) if Y != X and X.issubset(Y))
        for X in vecs
    )
    gen = tuple(idx[X.rotate(1)] for X in vecs)
    return GPoset(tuple(vecs), above, p, gen, provenance=("signed_poset", n, p, min_alt))


def sigma_complex(n: int, p: int, alpha: int) -> SimplicialGComplex:
    """Sigma_p(n, alpha): order complex of the signed vectors with
    alt > alpha, carrying the rotation action."""
    if not 0 <= alpha <= n:
        raise ValueError("need 0 <= alpha <= n")
    if not _is_prime(p):
        raise ValueError("p must be prime")
    P = signed_vector_poset(n, p, min_alt=alpha + 1)
    K = order_complex(P)
    # relabel order-complex indices back to the vectors themselves
    relab = {i: P.labels[i] for i in K.vertices}
    verts = tuple(relab[i] for i in K.vertices)
    maximal = tuple(frozenset(relab[i] for i in m) for m in K.maximal_simplices)
    gen = {relab[i]: relab[K.generator[i]] for i in K.vertices}
    return SimplicialGComplex(
        verts, maximal, p, gen, provenance=("sigma_complex", n, p, alpha)
    )


def orbit_decomposition(X) -> tuple[list[tuple], bool]:
    """Vertex/element orbits with lexicographically least representatives
    first, plus the freeness flag."""
    if isinstance(X, SimplicialGComplex):
        items = list(X.vertices)
        act = X.act
        free = X.is_free()
    elif isinstance(X, GPoset):
        items = list(range(len(X)))
        act = X.act
        free = X.is_free()
    else:
        raise TypeError("expected a SimplicialGComplex or GPoset")
    seen = set()
    orbits = []
    for v in sorted(items, key=repr):
        if v in seen:
            continue
        orbit = sorted({act(g, v) for g in range(X.p)}, key=repr)
        orbits.append(tuple(orbit))
        seen.update(orbit)
    return orbits, free


def complex_to_text(K: SimplicialGComplex) -> str:
    """Line format: vertex table, maximal simplices, generator table."""
    idx = {v: i for i, v in enumerate(K.vertices)}
    lines = [f"p {K.p}", f"vertices {len(K.vertices)}"]
    for i, v in enumerate(K.vertices):
        lines.append(f"vertex {i} {v!r}")
    for m in sorted(K.maximal_simplices, key=lambda s: sorted(idx[v] for v in s)):
        lines.append("simplex " + " ".join(str(i) for i in sorted(idx[v] for v in m)))
    lines.append(
        "action " + " ".join(str(idx[K.generator[v]]) for v in K.vertices)
    )
    return "\n".join(lines) + "\n"


def poset_to_text(P: GPoset) -> str:
    """Line format: element table, covering pairs, generator table."""
    lines = [f"p {P.p}", f"elements {len(P)}"]
    for i, lab in enumerate(P.labels):
        lines.append(f"element {i} {lab!r}")
    for i in range(len(P)):
        for j in sorted(P.above[i]):
            if _covers(P, i, j):
                lines.append(f"cover {i} {j}")
    lines.append("action " + " ".join(str(P.generator[i]) for i in range(len(P))))
    return "\n".join(lines) + "\n"
