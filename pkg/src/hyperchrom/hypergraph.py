"""Hypergraphs, colorings, and exact chromatic computations.

Vertices are always 1..n.  Edges are canonical frozensets backed by
bitmasks (bit i-1 set for vertex i), since subset tests dominate the
search routines.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import inf
from typing import Iterable, Optional, Sequence

__all__ = [
    "Hypergraph",
    "Coloring",
    "PartiteFamily",
    "SearchBudget",
    "BudgetExhausted",
    "ChromaticResult",
    "build_hypergraph",
    "complete_hypergraph",
    "induced",
    "partite_subhypergraph",
    "is_complete_partite",
    "clique_number",
    "independence_number",
    "is_proper",
    "chromatic_number",
    "local_chromatic_number",
    "kneser",
    "usual_kneser",
    "automorphisms",
    "parse_hypergraph",
    "format_hypergraph",
]


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def _unmask(mask: int) -> frozenset[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


class BudgetExhausted(Exception):
    """Raised internally when a search exceeds its node budget."""


@dataclass
class SearchBudget:
    """Node budget for exhaustive searches.  ``None`` means unlimited."""

    max_nodes: Optional[int] = None
    nodes: int = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted()


@dataclass(frozen=True)
class Hypergraph:
    """Finite hypergraph on vertex set 1..n with canonical edge storage.

    ``uniformity`` is set automatically when all edges share one size.
    ``provenance`` records how the instance was built (e.g. a Kneser
    construction), which downstream index computations may exploit.
    """

    n: int
    edges: tuple[frozenset[int], ...]
    uniformity: Optional[int] = None
    provenance: Optional[tuple] = field(default=None, compare=False)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(_mask(e) for e in self.edges)

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def __repr__(self) -> str:
        r = f", r={self.uniformity}" if self.uniformity else ""
        return f"Hypergraph(n={self.n}, m={len(self.edges)}{r})"


@dataclass(frozen=True)
class Coloring:
    """Total coloring of 1..n; vertex v gets ``assignment[v-1]``."""

    assignment: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        for c in self.assignment:
            if not 1 <= c <= self.palette_size:
                raise ValueError(f"color {c} outside palette 1..{self.palette_size}")

    def __call__(self, v: int) -> int:
        return self.assignment[v - 1]

    def colors_of(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.assignment[v - 1] for v in vertices)


@dataclass(frozen=True)
class PartiteFamily:
    """Ordered tuple of pairwise disjoint vertex subsets.

    Order is significant: cyclic group actions rotate it.
    """

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for part in self.parts:
            if seen & part:
                raise ValueError("parts must be pairwise disjoint")
            seen |= part

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*self.parts) if self.parts else frozenset()

    def __len__(self) -> int:
        return len(self.parts)


def build_hypergraph(
    n: int, edges: Iterable[Iterable[int]], provenance: Optional[tuple] = None
) -> Hypergraph:
    """Canonicalize, deduplicate, and validate an edge list."""
    if n < 1:
        raise ValueError("vertex count must be at least 1")
    canon: set[frozenset[int]] = set()
    for e in edges:
        fe = frozenset(e)
        if not fe:
            raise ValueError("empty edge")
        if not all(1 <= v <= n for v in fe):
            raise ValueError(f"edge {sorted(fe)} out of range 1..{n}")
        canon.add(fe)
    ordered = tuple(sorted(canon, key=sorted))
    sizes = {len(e) for e in ordered}
    r = sizes.pop() if len(sizes) == 1 else None
    return Hypergraph(n=n, edges=ordered, uniformity=r, provenance=provenance)


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    """K_n^r: all r-subsets of 1..n as edges."""
    if r < 1 or r > n:
        raise ValueError("need 1 <= r <= n")
    edges = itertools.combinations(range(1, n + 1), r)
    return build_hypergraph(n, edges, provenance=("complete", n, r))


def induced(H: Hypergraph, U: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Induced subhypergraph on U, relabeled to 1..|U|.

    Returns the subhypergraph and the map from old to new labels.
    """
    Uset = sorted(set(U))
    if any(v not in H.vertices for v in Uset):
        raise ValueError("U out of range")
    relabel = {v: i + 1 for i, v in enumerate(Uset)}
    edges = [
        frozenset(relabel[v] for v in e) for e in H.edges if e <= set(Uset)
    ]
    if not Uset:
        raise ValueError("empty vertex set")
    return build_hypergraph(len(Uset), edges), relabel


def _induced_edge_masks(H: Hypergraph, keep_mask: int) -> list[int]:
    return [m for m in H.edge_masks if m & ~keep_mask == 0]


def partite_subhypergraph(H: Hypergraph, P: PartiteFamily) -> tuple[Hypergraph, PartiteFamily]:
    """Subhypergraph H[U1,...,Uq]: edges inside the union meeting each part <= 1.

    Vertices are relabeled to 1..|union|; the relabeled partition is
    returned with the result.
    """
    union = sorted(P.union)
    if any(v not in H.vertices for v in union):
        raise ValueError("parts out of range")
    if not union:
        raise ValueError("empty partite family")
    relabel = {v: i + 1 for i, v in enumerate(union)}
    edges = []
    for e in H.edges:
        if not e <= set(union):
            continue
        if all(len(e & part) <= 1 for part in P.parts):
            edges.append(frozenset(relabel[v] for v in e))
    sub = build_hypergraph(len(union), edges) if edges else Hypergraph(len(union), ())
    new_parts = PartiteFamily(
        tuple(frozenset(relabel[v] for v in part) for part in P.parts)
    )
    return sub, new_parts


def is_complete_partite(H: Hypergraph, P: PartiteFamily, r: int) -> bool:
    """True iff every r-subset of the union meeting each part <= 1 is an edge.

    Vacuously true when fewer than r parts are nonempty (no such
    r-subset exists).
    """
    if H.uniformity is not None and H.uniformity != r:
        raise ValueError("H is not r-uniform")
    nonempty = [part for part in P.parts if part]
    if len(nonempty) < r:
        return True
    eset = H.edge_set()
    for chosen in itertools.combinations(nonempty, r):
        for combo in itertools.product(*chosen):
            if frozenset(combo) not in eset:
                return False
    return True


def clique_number(H: Hypergraph) -> int:
    """Largest m such that some m-set of vertices carries all its r-subsets.

    Returns r-1 when no edge-complete r-set exists.
    """
    r = H.uniformity
    if r is None:
        raise ValueError("clique number requires a uniform hypergraph")
    eset = H.edge_set()
    best = r - 1

    def extend(cliq: list[int], candidates: list[int]) -> None:
        nonlocal best
        best = max(best, len(cliq))
        for i, v in enumerate(candidates):
            if len(cliq) + len(candidates) - i <= best:
                return
            if len(cliq) >= r - 1:
                ok = all(
                    frozenset(sub) | {v} in eset
                    for sub in itertools.combinations(cliq, r - 1)
                )
                if not ok:
                    continue
            extend(cliq + [v], candidates[i + 1 :])

    extend([], list(H.vertices))
    return best


def independence_number(H: Hypergraph) -> int:
    """Largest vertex set inducing no edge."""
    masks = H.edge_masks
    n = H.n
    best = 0

    def contains_edge(smask: int) -> bool:
        return any(m & ~smask == 0 for m in masks)

    def extend(smask: int, size: int, v: int) -> None:
        nonlocal best
        best = max(best, size)
        for u in range(v, n + 1):
            if size + (n - u + 1) <= best:
                return
            cand = smask | (1 << (u - 1))
            if not contains_edge(cand):
                extend(cand, size + 1, u + 1)

    extend(0, 0, 1)
    return best


def is_proper(H: Hypergraph, c: Coloring) -> bool:
    """True iff no edge of H is monochromatic under c."""
    if len(c.assignment) != H.n:
        raise ValueError("coloring is not total on V(H)")
    for e in H.edges:
        it = iter(e)
        first = c(next(it))
        if all(c(v) == first for v in it):
            return False
    return True


@dataclass(frozen=True)
class ChromaticResult:
    """Exact value (or a bracket when the budget runs out)."""

    value: float  # int, or math.inf for hypergraphs with singleton edges
    coloring: Optional[Coloring]
    exact: bool
    lower: int = 0

    def __int__(self) -> int:
        if self.value is inf:
            raise ValueError("chromatic number is infinite")
        return int(self.value)


def _search_coloring(H: Hypergraph, t: int, budget: SearchBudget) -> Optional[list[int]]:
    """Backtracking search for a proper t-coloring, or None.

    Vertices are tried in decreasing-degree order (ties by index); a
    vertex may only open one new color beyond those already used.
    """
    n = H.n
    order = sorted(H.vertices, key=lambda v: (-H.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    # edges indexed by the latest vertex (in search order) they contain
    edges_by_last: list[list[int]] = [[] for _ in range(n)]
    for em in H.edge_masks:
        last = max(pos[v] for v in _unmask(em))
        edges_by_last[last].append(em)

    color_of = [0] * (n + 1)  # vertex -> color, 0 = unassigned
    class_mask = [0] * (t + 1)

    def place(i: int, used: int) -> bool:
        budget.tick()
        if i == n:
            return True
        v = order[i]
        vbit = 1 << (v - 1)
        cmax = min(t, used + 1)
        for c in range(1, cmax + 1):
            new_mask = class_mask[c] | vbit
            ok = True
            for em in edges_by_last[i]:
                if em & ~new_mask == 0:  # edge fully inside color class c
                    ok = False
                    break
            if not ok:
                continue
            color_of[v] = c
            class_mask[c] = new_mask
            if place(i + 1, max(used, c)):
                return True
            class_mask[c] = new_mask & ~vbit
            color_of[v] = 0
        return False

    if place(0, 0):
        return color_of[1:]
    return None


def chromatic_number(H: Hypergraph, budget: Optional[SearchBudget] = None) -> ChromaticResult:
    """Exact chromatic number by iterative-deepening exhaustive search.

    Returns ``inf`` when some edge is a singleton.  On budget
    exhaustion, returns the best bracket found, flagged inexact.
    """
    if any(len(e) == 1 for e in H.edges):
        return ChromaticResult(value=inf, coloring=None, exact=True)
    budget = budget or SearchBudget()
    lower = 2 if H.edges else 1
    t = 1 if not H.edges else 2
    while True:
        try:
            sol = _search_coloring(H, t, budget)
        except BudgetExhausted:
            return ChromaticResult(value=t, coloring=None, exact=False, lower=lower)
        if sol is not None:
            col = Coloring(tuple(sol), palette_size=t)
            return ChromaticResult(value=t, coloring=col, exact=True, lower=t)
        lower = t + 1
        t += 1


def _canonical_colorings(n: int, improper_check, max_colors: int):
    """Yield proper colorings canonical under color permutation.

    Vertex i+1 may use at most one color beyond those used by 1..i.
    ``improper_check(prefix)`` prunes prefixes that already close a
    monochromatic edge.
    """
    assignment = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield tuple(assignment)
            return
        for c in range(1, min(used + 1, max_colors) + 1):
            assignment[i] = c
            if improper_check(assignment, i):
                continue
            yield from rec(i + 1, max(used, c))
        assignment[i] = 0

    yield from rec(0, 0)


def neighborhood(H: Hypergraph, X: frozenset[int]) -> frozenset[int]:
    """N(X): vertices completing some edge all but one of which lies in X."""
    out = set()
    for e in H.edges:
        rest = e - X
        if len(rest) == 1:
            out |= rest
    return frozenset(out)


def local_palette(H: Hypergraph, c: Coloring) -> int:
    """Largest closed-neighborhood palette forced by c.

    Graphs use closed vertex neighborhoods; r-uniform hypergraphs use
    the edge-minus-vertex neighborhoods.
    """
    if H.uniformity == 2:
        return max(
            len(c.colors_of({v} | set().union(*[e - {v} for e in H.edges if v in e])))
            if any(v in e for e in H.edges)
            else 1
            for v in H.vertices
        )
    best = 0
    for e in H.edges:
        for v in e:
            X = e - {v}
            closed = X | neighborhood(H, X)
            best = max(best, len(c.colors_of(closed)))
    return best


def local_chromatic_number(H: Hypergraph, budget: Optional[SearchBudget] = None) -> int:
    """Exact local chromatic number by sweep over canonical colorings."""
    if H.uniformity is None or not H.edges:
        raise ValueError("local chromatic number needs a uniform hypergraph with an edge")
    budget = budget or SearchBudget()
    masks = H.edge_masks

    def closes_edge(assignment: Sequence[int], i: int) -> bool:
        budget.tick()
        c = assignment[i]
        cmask = 0
        for v0 in range(i + 1):
            if assignment[v0] == c:
                cmask |= 1 << v0
        done = (1 << (i + 1)) - 1
        return any(m & ~done == 0 and m & ~cmask == 0 for m in masks)

    best = None
    for colors in _canonical_colorings(H.n, closes_edge, H.n):
        col = Coloring(colors, palette_size=max(colors))
        val = local_palette(H, col)
        if best is None or val < best:
            best = val
    assert best is not None
    return best


def kneser(F: Hypergraph, r: int) -> Hypergraph:
    """Kneser hypergraph: vertices are edges of F (colex order), edges are
    r-sets of pairwise disjoint F-edges."""
    if r < 2:
        raise ValueError("Kneser uniformity must be at least 2")
    fedges = sorted(F.edges, key=_colex_key)
    masks = [_mask(e) for e in fedges]
    m = len(fedges)
    edges = []
    for combo in itertools.combinations(range(m), r):
        union = 0
        total = 0
        for i in combo:
            union |= masks[i]
            total += bin(masks[i]).count("1")
        if bin(union).count("1") == total:  # pairwise disjoint
            edges.append(frozenset(i + 1 for i in combo))
    prov = ("kneser", F, r)
    if edges:
        return build_hypergraph(m, edges, provenance=prov)
    return Hypergraph(n=m, edges=(), uniformity=r, provenance=prov)


def _colex_key(e: frozenset[int]) -> tuple:
    return tuple(sorted(e, reverse=True))


def kneser_vertex_labels(F: Hypergraph) -> list[frozenset[int]]:
    """F-edges in the colex order used for Kneser vertex indexing."""
    return sorted(F.edges, key=_colex_key)


def usual_kneser(n: int, k: int, r: int) -> Hypergraph:
    """KG^r(n,k) = kneser(K_n^k, r)."""
    return kneser(complete_hypergraph(n, k), r)


def automorphisms(H: Hypergraph) -> list[tuple[int, ...]]:
    """All edge-preserving vertex permutations, as tuples (image of 1..n)."""
    n = H.n
    eset = H.edge_set()
    degs = [H.degree(v) for v in H.vertices]
    out: list[tuple[int, ...]] = []
    img = [0] * (n + 1)
    used = [False] * (n + 1)

    edges_by_max = [[] for _ in range(n + 1)]
    for e in H.edges:
        edges_by_max[max(e)].append(e)

    def rec(v: int) -> None:
        if v > n:
            out.append(tuple(img[1:]))
            return
        for w in range(1, n + 1):
            if used[w] or degs[w - 1] != degs[v - 1]:
                continue
            img[v] = w
            used[w] = True
            ok = all(
                frozenset(img[u] for u in e) in eset for e in edges_by_max[v]
            )
            if ok:
                rec(v + 1)
            used[w] = False
            img[v] = 0

    rec(1)
    return out


def vertex_orbits(H: Hypergraph, auts: Optional[list[tuple[int, ...]]] = None) -> list[frozenset[int]]:
    """Orbits of the automorphism group on vertices."""
    auts = auts if auts is not None else automorphisms(H)
    seen: set[int] = set()
    orbits = []
    for v in H.vertices:
        if v in seen:
            continue
        orbit = {a[v - 1] for a in auts}
        orbits.append(frozenset(orbit))
        seen |= orbit
    return orbits


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the line format: ``v <n>`` then ``e <v1> <v2> ...`` per edge."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "v":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate vertex count")
            n = int(tok[1])
        elif tok[0] == "e":
            edges.append([int(x) for x in tok[1:]])
        else:
            raise ValueError(f"line {lineno}: unknown directive {tok[0]!r}")
    if n is None:
        raise ValueError("missing 'v <n>' line")
    if edges:
        return build_hypergraph(n, edges)
    return Hypergraph(n=n, edges=())


def format_hypergraph(H: Hypergraph) -> str:
    lines = [f"v {H.n}"]
    for e in H.edges:
        lines.append("e " + " ".join(str(v) for v in sorted(e)))
    return "\n".join(lines) + "\n"
