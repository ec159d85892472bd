"""Alternation numbers and the r-colorability defect.

Signed vectors live in (Z_p u {0})^n.  Entry 0 is the zero marker;
entries 1..p stand for the group elements w^1..w^p, so the zero marker
never collides with a group residue.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .hypergraph import (
    BudgetExhausted,
    Hypergraph,
    SearchBudget,
    _mask,
    automorphisms,
    induced,
)

__all__ = [
    "SignedVector",
    "Ordering",
    "alt_of_vector",
    "alt_sigma",
    "alt_min",
    "AltResult",
    "colorability_defect",
    "signed_vectors",
    "signed_orbit_representative",
]


@dataclass(frozen=True)
class SignedVector:
    """Vector over Z_p u {0}; entries[i] == 0 marks zero, 1..p marks w^e."""

    entries: tuple[int, ...]
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("modulus must be at least 2")
        if any(not 0 <= x <= self.p for x in self.entries):
            raise ValueError("entries must lie in 0..p")

    @property
    def n(self) -> int:
        return len(self.entries)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self.entries) if x)

    def sign_class(self, eps: int) -> frozenset[int]:
        """X^eps: 1-based positions carrying group element eps (1..p)."""
        return frozenset(i + 1 for i, x in enumerate(self.entries) if x == eps)

    def rotate(self, k: int) -> "SignedVector":
        """Multiply every nonzero entry by w^k."""
        return SignedVector(
            tuple(0 if x == 0 else (x - 1 + k) % self.p + 1 for x in self.entries),
            self.p,
        )

    def issubset(self, other: "SignedVector") -> bool:
        if self.p != other.p or self.n != other.n:
            raise ValueError("mismatched vectors")
        return all(a == 0 or a == b for a, b in zip(self.entries, other.entries))


@dataclass(frozen=True)
class Ordering:
    """Bijection from positions 1..n to vertices of H."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a bijection onto 1..n")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def map_positions(self, positions: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[i - 1] for i in positions)


def alt_of_vector(X: SignedVector) -> int:
    """Longest subsequence of nonzero entries with consecutive terms distinct.

    Equals the number of maximal runs among the nonzero entries.
    """
    count = 0
    last = 0
    for x in X.entries:
        if x and x != last:
            count += 1
            last = x
    return count


def alt_sigma(
    H: Hypergraph,
    p: int,
    sigma: Optional[Ordering] = None,
    stop_at: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> int:
    """alt_p(H, sigma): max alt(X) over X whose sign classes induce no edge.

    Depth-first over positions with independence pruning; ``stop_at``
    aborts early once the running maximum reaches that threshold.
    """
    if p < 2:
        raise ValueError("modulus must be at least 2")
    n = H.n
    sigma = sigma or Ordering(tuple(range(1, n + 1)))
    edge_masks = H.edge_masks
    edges_at = [[] for _ in range(n + 1)]  # vertex -> masks of edges containing it
    for m in edge_masks:
        mm = m
        v = 1
        while mm:
            if mm & 1:
                edges_at[v].append(m)
            mm >>= 1
            v += 1

    budget = budget or SearchBudget()
    best = 0
    class_mask = [0] * (p + 1)

    def rec(i: int, last: int, alt: int) -> None:
        nonlocal best
        budget.tick()
        if alt > best:
            best = alt
        if stop_at is not None and best >= stop_at:
            return
        if i > n or alt + (n - i + 1) <= best:
            return
        v = sigma(i)
        vbit = 1 << (v - 1)
        for eps in range(1, p + 1):
            new = class_mask[eps] | vbit
            if any(em & ~new == 0 for em in edges_at[v]):
                continue
            class_mask[eps] = new
            rec(i + 1, eps, alt + (1 if eps != last else 0))
            class_mask[eps] = new & ~vbit
            if stop_at is not None and best >= stop_at:
                return
        rec(i + 1, last, alt)

    rec(1, 0, 0)
    return best


@dataclass(frozen=True)
class AltResult:
    value: int
    exact: bool
    ordering: Ordering


def alt_min(
    H: Hypergraph,
    p: int,
    mode: str = "exact",
    samples: int = 200,
    seed: int = 0,
    budget: Optional[SearchBudget] = None,
) -> AltResult:
    """alt_p(H): minimum of alt_sigma over orderings.

    Exact mode enumerates orderings whose prefixes are lexicographically
    minimal within their automorphism-group orbit.  Budgeted mode
    samples orderings and reports an upper bound on alt_p(H).
    """
    n = H.n
    if mode not in ("exact", "budgeted"):
        raise ValueError("mode must be 'exact' or 'budgeted'")
    budget = budget or SearchBudget()

    best: Optional[int] = None
    best_sigma = Ordering(tuple(range(1, n + 1)))

    def consider(images: tuple[int, ...]) -> None:
        nonlocal best, best_sigma
        sigma = Ordering(images)
        val = alt_sigma(H, p, sigma, stop_at=best, budget=budget)
        if best is None or val < best:
            best, best_sigma = val, sigma

    if mode == "budgeted":
        rng = random.Random(seed)
        consider(tuple(range(1, n + 1)))
        base = list(range(1, n + 1))
        for _ in range(samples):
            rng.shuffle(base)
            consider(tuple(base))
        assert best is not None
        return AltResult(value=best, exact=False, ordering=best_sigma)

    auts = automorphisms(H)

    def canonical_prefix(prefix: tuple[int, ...]) -> bool:
        return all(
            tuple(a[v - 1] for v in prefix) >= prefix for a in auts
        )

    def rec(prefix: tuple[int, ...], remaining: frozenset[int]) -> None:
        if not remaining:
            consider(prefix)
            return
        for v in sorted(remaining):
            cand = prefix + (v,)
            if canonical_prefix(cand):
                rec(cand, remaining - {v})

    rec((), frozenset(range(1, n + 1)))
    assert best is not None
    return AltResult(value=best, exact=True, ordering=best_sigma)


def _r_colorable(H: Hypergraph, keep: frozenset[int], r: int) -> bool:
    """Is the induced subhypergraph on ``keep`` properly r-colorable?"""
    if not keep:
        return True
    sub, _ = induced(H, keep)
    if not sub.edges:
        return True
    from .hypergraph import _search_coloring

    return _search_coloring(sub, r, SearchBudget()) is not None


def colorability_defect(H: Hypergraph, r: int) -> int:
    """cd_r(H): fewest vertex removals leaving an r-colorable hypergraph."""
    if r < 2:
        raise ValueError("r must be at least 2")
    verts = list(H.vertices)
    for s in range(0, H.n + 1):
        for removed in itertools.combinations(verts, s):
            keep = frozenset(verts) - set(removed)
            if _r_colorable(H, keep, r):
                return s
    return H.n


def signed_vectors(n: int, p: int, nonzero_only: bool = True) -> Iterator[SignedVector]:
    """All vectors in (Z_p u {0})^n, optionally skipping the zero vector."""
    for entries in itertools.product(range(p + 1), repeat=n):
        if nonzero_only and not any(entries):
            continue
        yield SignedVector(entries, p)


def signed_orbit_representative(X: SignedVector) -> SignedVector:
    """Lexicographically least vector in the rotation orbit of X."""
    return min((X.rotate(k) for k in range(X.p)), key=lambda y: y.entries)
