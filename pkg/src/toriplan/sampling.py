"""Random complexes, graphs and point pairs for the verification harness."""

from __future__ import annotations

import numpy as np

from . import sphere as sph
from .complex import Graph, SimplicialComplex, from_facets, popcount, to_indices

_FACE_LIST_CAP = 1 << 16


def random_complex(rng: np.random.Generator, n: int, max_facets: int | None = None) -> SimplicialComplex:
    """Complex on [n] generated by a few random subsets of varied density."""
    if n == 0:
        return from_facets(0, [])
    count = int(rng.integers(1, (max_facets or max(2, n)) + 1))
    density = rng.uniform(0.1, 0.9)
    facets = []
    for _ in range(count):
        bits = rng.random(n) < density
        facets.append(int(sum(1 << i for i in np.nonzero(bits)[0])))
    return from_facets(n, facets)


def random_graph(rng: np.random.Generator, n: int, p: float | None = None) -> Graph:
    p = rng.uniform(0.1, 0.9) if p is None else p
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return Graph.from_edges(n, edges)


class PairSampler:
    """Pairs of points of X, generic or directed at the domain boundaries.

    Directed pairs pick two faces J, K and then, coordinate by coordinate and
    with a per-sample probability, force the special configurations: y = -x
    on J & K, x = -e on J - K, y = -e on K - J, both at -e, or a coordinate
    parked at the basepoint.
    """

    def __init__(self, X: SimplicialComplex, m: int, tau_anti: float = sph.TAU_ANTI):
        self.X = X
        self.m = m
        self.e = sph.basepoint(m)
        total = sum(1 << popcount(f) for f in X.facets)
        self.faces = X.faces() if total <= _FACE_LIST_CAP else None

    def random_face(self, rng: np.random.Generator) -> int:
        if self.faces is not None:
            return self.faces[int(rng.integers(len(self.faces)))]
        f = self.X.facets[int(rng.integers(len(self.X.facets)))]
        return int(sum(1 << (i - 1) for i in to_indices(f) if rng.random() < 0.5))

    def point_on(self, rng: np.random.Generator, face: int) -> np.ndarray:
        p = np.tile(self.e, (self.X.n, 1))
        for i in to_indices(face):
            while True:
                q = sph.random_point(rng, self.m)
                if np.linalg.norm(q - self.e) > 1e-3:
                    break
            p[i - 1] = q
        return p

    def generic(self, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        return self.point_on(rng, self.random_face(rng)), self.point_on(rng, self.random_face(rng))

    def directed(self, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        J, K = self.random_face(rng), self.random_face(rng)
        x, y = self.point_on(rng, J), self.point_on(rng, K)
        p = rng.random()
        e = self.e
        for i in range(self.X.n):
            inJ, inK = bool(J >> i & 1), bool(K >> i & 1)
            if not (inJ or inK) or rng.random() >= p:
                continue
            if inJ and inK:
                mode = rng.integers(4)
                if mode == 0:
                    y[i] = -x[i]
                elif mode == 1:
                    x[i], y[i] = -e, -e
                elif mode == 2:
                    x[i], y[i] = e, -e
                else:
                    x[i], y[i] = -e, e
            elif inJ:
                x[i] = -e if rng.random() < 0.8 else e
            else:
                y[i] = -e if rng.random() < 0.8 else e
        return x, y

    def pairs(self, rng: np.random.Generator, count: int, directed_fraction: float = 0.5):
        out = []
        for _ in range(count):
            if rng.random() < directed_fraction:
                out.append(self.directed(rng))
            else:
                out.append(self.generic(rng))
        return out


def pattern_pair(rng: np.random.Generator, n: int, m: int, pattern) -> tuple[np.ndarray, np.ndarray]:
    """Pair on the full product with a prescribed per-coordinate label.

    Labels: 0 -> (e, -e), 1 -> (x, -x) with x random, 2 -> independent
    random points.  For odd spheres label 0 is just another antipodal pair.
    """
    e = sph.basepoint(m)
    x = np.empty((n, m))
    y = np.empty((n, m))
    for i, a in enumerate(pattern):
        if a == 0:
            x[i], y[i] = e, -e
        elif a == 1:
            x[i] = sph.random_point(rng, m)
            y[i] = -x[i]
        else:
            x[i], y[i] = sph.random_point(rng, m), sph.random_point(rng, m)
    return x, y
