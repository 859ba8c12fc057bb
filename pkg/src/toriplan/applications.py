"""Topological complexity of right-angled Artin complexes and arrangement complements.

Each answer is computed twice where a closed formula exists: once from the
combinatorial model complex through ``complex.tc`` and once from the
formula.  A disagreement raises.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .complex import (
    Graph,
    SimplicialComplex,
    d_invariant,
    flag_complex,
    full_simplex,
    maximal_cliques,
    popcount,
    product,
    skeleton,
    tc,
    to_indices,
    wedge,
)


class ApplicationError(ValueError):
    pass


@dataclass(frozen=True)
class TcAnswer:
    tc: int
    model: SimplicialComplex
    citation: str
    formula: int | None = None
    witness: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())

    def __post_init__(self):
        if self.tc < 1:
            raise ApplicationError(f"tc must be positive, got {self.tc}")


def _agree(model_value: int, formula: int, what: str) -> None:
    if model_value != formula:
        raise ApplicationError(f"{what}: model gives {model_value}, formula gives {formula}")


def clique_z(G: Graph) -> int:
    """Most vertices covered by two cliques."""
    cl = maximal_cliques(G)
    return max(popcount(a | b) for a in cl for b in cl)


def raag_tc(G: Graph, k: int = 1) -> TcAnswer:
    """tc of the toric complex of a graph on spheres of dimension 2k-1; independent of k."""
    if k < 1:
        raise ApplicationError(f"k must be >= 1, got {k}")
    X = flag_complex(G)
    rep = tc(X, "odd", k)
    z = clique_z(G)
    _agree(rep.tc, z + 1, "right-angled Artin complex")
    return TcAnswer(rep.tc, X, "raag: tc = z(graph) + 1", z + 1, rep.witness_sets())


def general_position_model(n: int, ell: int) -> SimplicialComplex:
    return full_simplex(n) if n <= ell else skeleton(n, ell)


def general_position_tc(n: int, ell: int) -> TcAnswer:
    """n affine hyperplanes in general position in C^ell."""
    if n < 1 or ell < 1:
        raise ApplicationError(f"need n, ell >= 1, got n={n}, ell={ell}")
    X = general_position_model(n, ell)
    rep = tc(X, "odd")
    formula = min(n + 1, 2 * ell + 1)
    _agree(rep.tc, formula, "general position arrangement")
    return TcAnswer(rep.tc, X, "general position: tc = min(n+1, 2l+1)", formula, rep.witness_sets())


def generic_central_tc(n: int, ell: int) -> TcAnswer:
    """Generic central arrangement of n hyperplanes in C^ell: a cone, so skeleton(n-1, ell-1) x circle."""
    if not n >= ell >= 1:
        raise ApplicationError(f"generic central arrangement needs n >= ell >= 1, got n={n}, ell={ell}")
    X = product(general_position_model(n - 1, ell - 1), full_simplex(1))
    rep = tc(X, "odd")
    formula = min(n + 1, 2 * ell)
    _agree(rep.tc, formula, "generic central arrangement")
    return TcAnswer(rep.tc, X, "generic central: tc = min(n+1, 2l)", formula, rep.witness_sets())


def redundant_tc(n: int, ell: int, k: int) -> TcAnswer:
    """Codimension-k redundant arrangement of a general position arrangement."""
    if k < 1:
        raise ApplicationError(f"k must be >= 1, got {k}")
    if n < 1 or ell < 1:
        raise ApplicationError(f"need n, ell >= 1, got n={n}, ell={ell}")
    X = general_position_model(n, ell)
    rep = tc(X, "odd", k)
    formula = min(n + 1, 2 * ell + 1)
    _agree(rep.tc, formula, "redundant subspace arrangement")
    return TcAnswer(rep.tc, X, "redundant: tc = min(n+1, 2l+1) for every k", formula, rep.witness_sets())


def wedge_tc(X1: SimplicialComplex, X2: SimplicialComplex) -> TcAnswer:
    """tc of a wedge, checked against max{tc1, tc2, cat1 + cat2 - 1} with cat = d + 1."""
    W = wedge(X1, X2)
    rep = tc(W, "odd")
    cat1, cat2 = d_invariant(X1) + 1, d_invariant(X2) + 1
    formula = max(tc(X1).tc, tc(X2).tc, cat1 + cat2 - 1)
    _agree(rep.tc, formula, "wedge")
    return TcAnswer(rep.tc, W, "wedge: max(tc1, tc2, cat1 + cat2 - 1)", formula, rep.witness_sets())


# ----------------------------------------------------------- arrangements


@dataclass(frozen=True)
class Hyperplane:
    """Zero set of ``normal . y + offset``."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.normal, 1):
            if a:
                parts.append(f"{'' if a == 1 else '-' if a == -1 else a}y{i}")
        if self.offset:
            parts.append(str(self.offset))
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class ArrangementSpec:
    ell: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        for h in self.hyperplanes:
            if len(h.normal) != self.ell:
                raise ApplicationError(f"hyperplane {h} does not live in dimension {self.ell}")
            if not any(h.normal):
                raise ApplicationError("hyperplane with zero normal vector")
        for h1, h2 in itertools.combinations(self.hyperplanes, 2):
            row = sympy.Matrix([list(h1.normal) + [h1.offset], list(h2.normal) + [h2.offset]])
            if row.rank() < 2:
                raise ApplicationError(f"repeated hyperplane: {h1} and {h2}")


def hyperplane(normal, offset=0) -> Hyperplane:
    return Hyperplane(tuple(Fraction(a) for a in normal), Fraction(offset))


def check_general_position(A: ArrangementSpec) -> bool:
    """Every m <= ell hyperplanes meet in codimension m; every ell + 1 have empty intersection."""
    hs = A.hyperplanes
    for m in range(1, min(len(hs), A.ell + 1) + 1):
        for sub in itertools.combinations(hs, m):
            normals = sympy.Matrix([list(h.normal) for h in sub])
            augmented = sympy.Matrix([list(h.normal) + [-h.offset] for h in sub])
            r, ra = normals.rank(), augmented.rank()
            if m <= A.ell:
                # full row rank already forces a solution; ra == r says it exists
                if r != m or ra != r:
                    return False
            elif ra == r:
                return False
    return True


def open_string_arrangement(n: int) -> ArrangementSpec:
    """Hyperplanes y_1 = 0, y_i = y_(i+1) and y_n = 1 in C^n."""
    if n < 1:
        raise ApplicationError(f"n must be >= 1, got {n}")
    hs = [hyperplane([1] + [0] * (n - 1))]
    unit_n = [0] * (n - 1) + [1]
    hs.append(hyperplane(unit_n, -1))
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        hs.append(hyperplane(v))
    return ArrangementSpec(n, tuple(hs))


def open_string_tc(n: int) -> TcAnswer:
    A = open_string_arrangement(n)
    if not check_general_position(A):
        raise ApplicationError(f"open string arrangement for n={n} is not in general position")
    ans = general_position_tc(len(A.hyperplanes), A.ell)
    _agree(ans.tc, n + 2, "open string configuration space")
    return TcAnswer(ans.tc, ans.model, "open string: tc = n + 2", n + 2, ans.witness)
