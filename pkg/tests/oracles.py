"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; complexes are plain lists of
frozensets and algebra elements are plain dicts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import numpy as np


def faces_of(facets) -> set[frozenset]:
    out = {frozenset()}
    for f in facets:
        f = sorted(f)
        for r in range(len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, r))
    return out


def z_naive(facets) -> int:
    fs = faces_of(facets)
    return max(len(a) + len(b) for a in fs for b in fs if not a & b)


def d_naive(facets) -> int:
    return max(len(f) for f in faces_of(facets))


def clique_counts(n: int, edges) -> list[int]:
    """c_0 = 1, c_k = number of k-cliques."""
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edges)
    counts = [1]
    for c in nx.enumerate_all_cliques(G):
        while len(counts) <= len(c):
            counts.append(0)
        counts[len(c)] += 1
    return counts


def maximal_cliques(n: int, edges) -> set[frozenset]:
    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edges)
    return {frozenset(c) for c in nx.find_cliques(G)}


# ---------------------------------------------------------------- algebra


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``, by counting swaps in bubble sort."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def ext_mul(a: tuple, b: tuple, odd: bool):
    """e_a * e_b for sorted index tuples: (sign, product) or None."""
    if set(a) & set(b):
        return None
    word = a + b
    return (perm_sign(word) if odd else 1), tuple(sorted(word))


def tensor_mul(u: dict, v: dict, degree: int) -> dict:
    """(a (x) b)(c (x) d) = (-1)^{|b||c| g^2} ac (x) bd on dicts {(A, B): coeff}."""
    odd = degree % 2 == 1
    out: dict = {}
    for (a, b), s in u.items():
        for (c, d), t in v.items():
            ac = ext_mul(a, c, odd)
            bd = ext_mul(b, d, odd)
            if ac is None or bd is None:
                continue
            koszul = (-1) ** (len(b) * len(c)) if odd else 1
            key = (ac[1], bd[1])
            out[key] = out.get(key, 0) + Fraction(s * t * koszul * ac[0] * bd[0])
    return {k: c for k, c in out.items() if c}


def zbar(i: int) -> dict:
    return {((), (i,)): Fraction(1), ((i,), ()): Fraction(-1)}


def iterated(indices, degree: int = 1) -> dict:
    u = {((), ()): Fraction(1)}
    for i in indices:
        u = tensor_mul(u, zbar(i), degree)
    return u


# ----------------------------------------------------------------- sphere


def rotate_towards(x, y, s):
    """Point at fraction s along the short arc, via a 2x2 rotation in span(x, y)."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    w = y - (x @ y) * x
    w /= np.linalg.norm(w)
    theta = np.arccos(np.clip(x @ y, -1, 1))
    return np.cos(s * theta) * x + np.sin(s * theta) * w


def stereo_field_fd(x, h=1e-6):
    """Even-sphere field by finite differences of inverse stereographic projection from e."""
    x = np.asarray(x, float)
    m = x.shape[0]
    u = x[1:] / (1.0 - x[0])

    def inv(u):
        r2 = u @ u
        return np.concatenate([[(r2 - 1) / (r2 + 1)], 2 * u / (r2 + 1)])

    d = np.zeros(m - 1)
    d[0] = 1.0
    v = (inv(u + h * d) - inv(u - h * d)) / (2 * h)
    return v / np.linalg.norm(v)
