"""Subcomplexes of the standard cell structure on a product of n spheres.

A cell of the product is indexed by the set of coordinates that are allowed
to leave the basepoint, so a subcomplex is a simplicial complex on
``[n] = {1, ..., n}``.  Vertex sets are stored as integer bitmasks (bit
``i - 1`` stands for index ``i``); complexes are stored by their maximal
faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

MAX_N = 63
BRUTEFORCE_MAX_N = 20

Parity = Literal["odd", "even"]


class ComplexError(ValueError):
    """Bad vertex index or ground-set size."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(indices: Iterable[int], n: int | None = None) -> int:
    """Bitmask of a set of 1-based indices, range-checked against ``n``."""
    mask = 0
    for i in indices:
        i = int(i)
        if i < 1 or (n is not None and i > n) or i > MAX_N:
            raise ComplexError(f"index {i} outside [1, {n if n is not None else MAX_N}]")
        mask |= 1 << (i - 1)
    return mask


def to_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _facet_key(mask: int) -> tuple[int, ...]:
    return to_indices(mask)


def _antichain(masks: Iterable[int]) -> tuple[int, ...]:
    # largest first so every absorbed set meets its absorber earlier
    uniq = sorted(set(masks), key=lambda m: -popcount(m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    if not kept:
        kept = [0]
    return tuple(sorted(kept, key=_facet_key))


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of subsets of ``[n]``, kept as an antichain."""

    n: int
    facets: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_N:
            raise ComplexError(f"ground set size {self.n} outside [0, {MAX_N}]")
        top = full_mask(self.n)
        for f in self.facets:
            if f & ~top:
                raise ComplexError(f"facet {to_indices(f)} not contained in [{self.n}]")

    def __repr__(self) -> str:
        fs = ", ".join("{" + ",".join(map(str, to_indices(f))) + "}" for f in self.facets)
        return f"SimplicialComplex(n={self.n}, facets=[{fs}])"

    def facet_sets(self) -> list[tuple[int, ...]]:
        return [to_indices(f) for f in self.facets]

    def faces(self) -> list[int]:
        """Every face as a bitmask, sorted by (size, indices)."""
        seen: set[int] = set()
        for f in self.facets:
            sub = f
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return sorted(seen, key=lambda m: (popcount(m), to_indices(m)))

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [list(to_indices(f)) for f in self.facets if f]}


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Complex on ``[n]`` generated by ``facets``; non-maximal inputs are absorbed."""
    if not 0 <= n <= MAX_N:
        raise ComplexError(f"ground set size {n} outside [0, {MAX_N}]")
    masks = [f if isinstance(f, int) else to_mask(f, n) for f in facets]
    for m in masks:
        if m & ~full_mask(n):
            raise ComplexError(f"facet {to_indices(m)} not contained in [{n}]")
    return SimplicialComplex(n, _antichain(masks))


def is_face(X: SimplicialComplex, J: int | Iterable[int]) -> bool:
    if not isinstance(J, int):
        J = to_mask(J, X.n)
    return any(J & f == J for f in X.facets)


def full_simplex(n: int) -> SimplicialComplex:
    return from_facets(n, [full_mask(n)])


def skeleton(n: int, ell: int) -> SimplicialComplex:
    """All ``ell``-subsets of ``[n]`` as maximal faces."""
    if not 0 <= ell <= n:
        raise ComplexError(f"skeleton dimension {ell} outside [0, {n}]")
    return SimplicialComplex(
        n, tuple(sorted((to_mask(c) for c in itertools.combinations(range(1, n + 1), ell)), key=_facet_key))
    )


def union_closed(X: SimplicialComplex) -> bool:
    return len(X.facets) == 1


def d_invariant(X: SimplicialComplex) -> int:
    """Size of the largest face; the LS category of X is this plus one."""
    return max(popcount(f) for f in X.facets)


def z_invariant(X: SimplicialComplex) -> tuple[int, tuple[int, int]]:
    """Largest ``|J| + |K|`` over disjoint faces, with a disjoint witness.

    Any two maximal faces M1, M2 give the disjoint pair (M1, M2 minus M1),
    so it is enough to maximize ``|M1 | M2|`` over pairs of maximal faces
    (a pair may repeat a facet).  Ties go to the first pair in facet order.
    """
    best = -1
    witness = (0, 0)
    fs = X.facets
    for a in range(len(fs)):
        for b in range(a, len(fs)):
            size = popcount(fs[a] | fs[b])
            if size > best:
                best = size
                witness = (fs[a], fs[b] & ~fs[a])
    return best, witness


def face_table(X: SimplicialComplex):
    """Boolean array over all ``2**n`` masks marking the faces of X."""
    if X.n > BRUTEFORCE_MAX_N:
        raise ComplexError(f"ground set size {X.n} exceeds brute-force cap {BRUTEFORCE_MAX_N}")
    size = 1 << X.n
    table = np.zeros(size, dtype=bool)
    table[list(X.facets)] = True
    masks = np.arange(size)
    # superset-OR sweep: a set is a face iff some superset is a facet
    for i in range(X.n):
        bit = 1 << i
        lo = masks[(masks & bit) == 0]
        table[lo] |= table[lo | bit]
    return table


def z_bruteforce(X: SimplicialComplex) -> int:
    """Exhaustive max of ``|J| + |K|`` over all ordered pairs of disjoint faces.

    Works on the full face table: for every mask S, ``best[S]`` is the size
    of the largest face inside S; then z is the max over faces J of
    ``|J| + best[complement of J]``.
    """
    table = face_table(X)
    size = 1 << X.n
    masks = np.arange(size)
    pops = np.zeros(size, dtype=np.int64)
    for i in range(X.n):
        pops += (masks >> i) & 1
    best = np.where(table, pops, -1)
    for i in range(X.n):
        bit = 1 << i
        hi = masks[(masks & bit) != 0]
        best[hi] = np.maximum(best[hi], best[hi ^ bit])
    comp = full_mask(X.n) ^ masks
    totals = np.where(table, pops + best[comp], -1)
    return int(totals.max())


def z_pairs_literal(X: SimplicialComplex) -> int:
    """Double loop over every ordered pair of faces; only for tiny complexes."""
    faces = X.faces()
    return max(popcount(a) + popcount(b) for a in faces for b in faces if not a & b)


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``1..n``."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_N:
            raise ComplexError(f"vertex count {self.n} outside [0, {MAX_N}]")
        for u, v in self.edges:
            if u == v:
                raise ComplexError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ComplexError(f"edge ({u}, {v}) outside [1, {self.n}]")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        es = set()
        for e in edges:
            u, v = (int(a) for a in e)
            es.add((min(u, v), max(u, v)))
        return cls(n, frozenset(es))

    def neighbors(self) -> list[int]:
        """Neighbor bitmask per vertex, 0-based list."""
        nb = [0] * self.n
        for u, v in self.edges:
            nb[u - 1] |= 1 << (v - 1)
            nb[v - 1] |= 1 << (u - 1)
        return nb

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}


def maximal_cliques(G: Graph) -> list[int]:
    """Bron-Kerbosch with Tomita pivoting over bitmasks."""
    nb = G.neighbors()
    out: list[int] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            out.append(R)
            return
        # pivot maximizing |P & N(u)|
        pivot = max(to_indices(P | X), key=lambda u: popcount(P & nb[u - 1]))
        cand = P & ~nb[pivot - 1]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(R | low, P & nb[v], X & nb[v])
            P &= ~low
            X |= low
            cand &= ~low

    if G.n == 0:
        return [0]
    expand(0, full_mask(G.n), 0)
    return out


def flag_complex(G: Graph) -> SimplicialComplex:
    return SimplicialComplex(G.n, tuple(sorted(maximal_cliques(G), key=_facet_key)) or (0,))


def face_counts(X: SimplicialComplex) -> list[int]:
    """Number of faces with k elements, k = 0..d(X)."""
    counts = [0] * (d_invariant(X) + 1)
    for f in X.faces():
        counts[popcount(f)] += 1
    return counts


def product(X1: SimplicialComplex, X2: SimplicialComplex) -> SimplicialComplex:
    """Cell structure of X1 x X2 inside the product of n1 + n2 spheres."""
    shift = X1.n
    return from_facets(X1.n + X2.n, [a | (b << shift) for a in X1.facets for b in X2.facets])


def wedge(X1: SimplicialComplex, X2: SimplicialComplex) -> SimplicialComplex:
    """X1 and X2 on disjoint coordinates, glued at the basepoint."""
    shift = X1.n
    return from_facets(X1.n + X2.n, list(X1.facets) + [b << shift for b in X2.facets])


@dataclass(frozen=True)
class TcReport:
    tc: int
    z: int
    witness: tuple[int, int]
    parity: Parity
    k: int = 1

    def witness_sets(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return to_indices(self.witness[0]), to_indices(self.witness[1])


def tc(X: SimplicialComplex, parity: Parity = "odd", k: int = 1) -> TcReport:
    """Topological complexity of X built from spheres of dimension 2k-1 (odd) or 2k (even).

    Odd spheres: tc = z(X) + 1.  Even spheres: tc = 2 d(X) + 1, with a
    largest face as witness.
    """
    if k < 1:
        raise ComplexError(f"sphere parameter k must be >= 1, got {k}")
    z, wit = z_invariant(X)
    if parity == "odd":
        return TcReport(z + 1, z, wit, parity, k)
    if parity == "even":
        d = d_invariant(X)
        top = max(X.facets, key=lambda f: (popcount(f), [-i for i in to_indices(f)]))
        return TcReport(2 * d + 1, z, (top, 0), parity, k)
    raise ComplexError(f"unknown parity {parity!r}")
