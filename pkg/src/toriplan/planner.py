"""Motion planners on products of spheres and on their cell subcomplexes.

A product point is an ``(n, m)`` array of unit vectors.  Three planners are
provided:

* ``LiteralPlanner`` moves every coordinate at once with the sphere rules
  chosen by the antipodal pattern of ``(x, y)``.  On the full product this is
  the optimal planner; restricted to a subcomplex it keeps the same rule and
  may leave the subcomplex when the endpoint supports have a non-face union.
* ``SafePlanner`` routes through the basepoint ``(e, ..., e)`` and always
  stays inside the subcomplex, at the price of ``2 d(X) + 1`` domains.
* ``ProductPlanner`` combines two planners on complementary coordinate
  blocks, adding their stratum indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import sphere as sph
from .complex import (
    SimplicialComplex,
    d_invariant,
    full_simplex,
    is_face,
    popcount,
    to_indices,
    to_mask,
    union_closed,
    z_invariant,
)

TAU_CELL = 1e-7


class PlannerError(ValueError):
    pass


class PointNotInComplex(PlannerError):
    pass


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class Stage:
    t0: float
    t1: float
    segments: tuple[sph.Segment, ...]


@dataclass(frozen=True, eq=False)
class TimedPath:
    """Piecewise path on [0, 1]; every stage moves all coordinates together."""

    stages: tuple[Stage, ...]

    @property
    def start(self) -> np.ndarray:
        return np.array([seg.start for seg in self.stages[0].segments])

    @property
    def end(self) -> np.ndarray:
        return np.array([seg.end for seg in self.stages[-1].segments])

    def __call__(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        first = self.stages[0].segments
        out = np.empty((t.size, len(first), first[0].start.shape[0]))
        for k, st in enumerate(self.stages):
            last = k == len(self.stages) - 1
            sel = (t >= st.t0) & ((t <= st.t1) if last else (t < st.t1))
            if sel.any():
                out[sel] = sph.evaluate_segments(st.segments, (t[sel] - st.t0) / (st.t1 - st.t0))
        return out

    def sample(self, count: int = 256) -> tuple[np.ndarray, np.ndarray]:
        ts = np.linspace(0.0, 1.0, count)
        return ts, self(ts)


@dataclass(frozen=True)
class DomainId:
    """Which local domain a pair falls in.

    ``kind`` is ``"odd"`` (index = (I,) with I the antipodal coordinates),
    ``"even"`` (index = the multi-index alpha) or ``"safe"`` (index =
    (I_x, I_y), the coordinates sitting at -e).
    """

    kind: str
    index: tuple
    stratum: int

    def label(self) -> str:
        if self.kind == "odd":
            return f"F_I I={set(to_indices(self.index[0])) or '{}'} j={self.stratum}"
        if self.kind == "even":
            return f"F_alpha alpha={self.index} j={self.stratum}"
        ix, iy = self.index
        return f"Safe I_x={set(to_indices(ix)) or '{}'} I_y={set(to_indices(iy)) or '{}'} s={self.stratum}"

    def to_json(self) -> dict:
        if self.kind == "odd":
            return {"kind": "odd", "I": list(to_indices(self.index[0])), "stratum": self.stratum}
        if self.kind == "even":
            return {"kind": "even", "alpha": list(self.index), "stratum": self.stratum}
        return {
            "kind": "safe",
            "I_x": list(to_indices(self.index[0])),
            "I_y": list(to_indices(self.index[1])),
            "stratum": self.stratum,
        }


@dataclass(frozen=True, eq=False)
class PlanResult:
    domain: DomainId
    path: TimedPath
    kind: str


# --------------------------------------------------------- classification


def _check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 2 or x.shape != y.shape:
        raise PlannerError(f"product points must share an (n, m) shape, got {x.shape} and {y.shape}")
    return x, y


def parity_of(x: np.ndarray) -> str:
    return sph.sphere_parity(np.asarray(x).shape[-1])


def classify_odd(x, y, tau: float = sph.TAU_ANTI) -> DomainId:
    """Antipodal coordinates I and stratum j = n - |I|."""
    x, y = _check_pair(x, y)
    dots = np.einsum("ij,ij->i", x, y)
    I = to_mask(np.nonzero(dots <= -1.0 + tau)[0] + 1)
    return DomainId("odd", (I,), x.shape[0] - popcount(I))


def even_labels(x, y, tau: float = sph.TAU_ANTI) -> tuple[int, ...]:
    x, y = _check_pair(x, y)
    dots = np.einsum("ij,ij->i", x, y)
    anti = dots <= -1.0 + tau
    at_e = x[:, 0] >= 1.0 - tau
    return tuple(int(a) for a in np.where(anti & at_e, 0, np.where(anti, 1, 2)))


def classify_even(x, y, tau: float = sph.TAU_ANTI) -> DomainId:
    alpha = even_labels(x, y, tau)
    return DomainId("even", alpha, sum(alpha))


def classify_literal(x, y, tau: float = sph.TAU_ANTI) -> DomainId:
    return classify_odd(x, y, tau) if parity_of(x) == "odd" else classify_even(x, y, tau)


def support(p, tau_cell: float = TAU_CELL) -> int:
    """Coordinates farther than ``tau_cell`` from the basepoint, as a mask."""
    p = np.asarray(p, dtype=float)
    e = sph.basepoint(p.shape[-1])
    far = np.linalg.norm(p - e, axis=-1) > tau_cell
    return to_mask(np.nonzero(far)[0] + 1)


def membership(X: SimplicialComplex, p, tau_cell: float = TAU_CELL) -> bool:
    p = np.asarray(p, dtype=float)
    if p.shape[0] != X.n:
        raise PlannerError(f"point has {p.shape[0]} coordinates, complex has n={X.n}")
    return is_face(X, support(p, tau_cell))


# ------------------------------------------------------------ rules


def _literal_segments(x, y, dom: DomainId, tau: float) -> tuple[sph.Segment, ...]:
    segs = []
    m = x.shape[1]
    if dom.kind == "odd":
        I = dom.index[0]
        for i in range(x.shape[0]):
            if I >> i & 1:
                segs.append(sph.corrected(sph.s1_semicircle_odd(x[i]), x[i], y[i]))
            else:
                segs.append(sph.s2_short_geodesic(x[i], y[i], tau))
    else:
        for i, a in enumerate(dom.index):
            if a == 0:
                segs.append(sph.corrected(sph.s0_fixed_even(m), x[i], y[i]))
            elif a == 1:
                segs.append(sph.corrected(sph.s1_semicircle_even(x[i], tau), x[i], y[i]))
            else:
                segs.append(sph.s2_short_geodesic(x[i], y[i], tau))
    return tuple(segs)


def plan_full_odd(x, y, tau: float = sph.TAU_ANTI) -> PlanResult:
    x, y = _check_pair(x, y)
    if parity_of(x) != "odd":
        raise PlannerError("plan_full_odd needs odd-dimensional spheres")
    dom = classify_odd(x, y, tau)
    return PlanResult(dom, TimedPath((Stage(0.0, 1.0, _literal_segments(x, y, dom, tau)),)), "full-odd")


def plan_full_even(x, y, tau: float = sph.TAU_ANTI) -> PlanResult:
    x, y = _check_pair(x, y)
    if parity_of(x) != "even":
        raise PlannerError("plan_full_even needs even-dimensional spheres")
    dom = classify_even(x, y, tau)
    return PlanResult(dom, TimedPath((Stage(0.0, 1.0, _literal_segments(x, y, dom, tau)),)), "full-even")


@dataclass(frozen=True, eq=False)
class BatchPaths:
    """Literal-rule paths for a stack of pairs, in the unified ``a P + b Q`` form.

    Arrays have shape ``(N, n, ...)``; ``labels`` holds the per-coordinate
    domain label (odd: 1 antipodal, 2 otherwise; even: 0, 1, 2).
    """

    x: np.ndarray
    y: np.ndarray
    labels: np.ndarray
    family: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    theta: np.ndarray
    off0: np.ndarray
    off1: np.ndarray

    def strata(self) -> np.ndarray:
        if self.x.shape[-1] % 2 == 0:
            return np.sum(self.labels == 2, axis=1)
        return np.sum(self.labels, axis=1)

    def __call__(self, t) -> np.ndarray:
        """Points at times ``t``; shape ``(N, T, n, m)``."""
        s = np.atleast_1d(np.asarray(t, dtype=float))[None, :, None]
        fam = self.family[:, None, :]
        th = self.theta[:, None, :]
        safe_th = np.where(fam == sph.GEODESIC, th, 1.0)
        with np.errstate(invalid="ignore", divide="ignore"):
            a = np.where(
                fam == sph.GEODESIC,
                np.sin((1.0 - s) * safe_th) / np.sin(safe_th),
                np.where(fam == sph.SEMICIRCLE, np.cos(np.pi * s), 1.0),
            )
            b = np.where(
                fam == sph.GEODESIC,
                np.sin(s * safe_th) / np.sin(safe_th),
                np.where(fam == sph.SEMICIRCLE, np.sin(np.pi * s), 0.0),
            )
        out = a[..., None] * self.P[:, None] + b[..., None] * self.Q[:, None]
        has_off = np.any(self.off0 != 0, axis=-1) | np.any(self.off1 != 0, axis=-1)
        if has_off.any():
            s4 = s[..., None]
            bent = out + (1.0 - s4) * self.off0[:, None] + s4 * self.off1[:, None]
            bent /= np.linalg.norm(bent, axis=-1, keepdims=True)
            out = np.where(has_off[:, None, :, None], bent, out)
        ts = s[0, :, 0]
        out[:, ts == 0.0] = self.x[:, None]
        out[:, ts == 1.0] = self.y[:, None]
        return out


def plan_literal_batch(x, y, tau: float = sph.TAU_ANTI, tau_deg: float = sph.TAU_DEG) -> BatchPaths:
    """Vectorized ``plan_full_odd`` / ``plan_full_even`` for pairs stacked as ``(N, n, m)``.

    Same rules and thresholds as the per-pair planner; used for large sample runs.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 3 or x.shape != y.shape:
        raise PlannerError(f"stacked points must share an (N, n, m) shape, got {x.shape} and {y.shape}")
    m = x.shape[-1]
    c = np.einsum("...j,...j->...", x, y)
    anti = c <= -1.0 + tau
    theta = np.arctan2(np.linalg.norm(y - c[..., None] * x, axis=-1), c)
    family = np.where(anti, sph.SEMICIRCLE, np.where(theta < tau_deg, sph.CONSTANT, sph.GEODESIC))
    P = x.copy()
    Q = np.where(family[..., None] == sph.GEODESIC, y, 0.0)
    off0 = np.zeros_like(x)
    off1 = np.zeros_like(x)
    if sph.sphere_parity(m) == "odd":
        labels = np.where(anti, 1, 2)
        Q[anti] = sph.complex_structure(x[anti])
    else:
        at_e = anti & (x[..., 0] >= 1.0 - tau)
        labels = np.where(at_e, 0, np.where(anti, 1, 2))
        mid = anti & ~at_e
        if mid.any():
            Q[mid] = sph.even_field(x[mid], tau)
        e = sph.basepoint(m)
        u2 = np.zeros(m)
        u2[1] = 1.0
        P[at_e] = e
        Q[at_e] = u2
        off0[at_e] = x[at_e] - e
        y_base = np.where(at_e[..., None], -e, -x)
        off1[anti] = (y - y_base)[anti]
    if sph.sphere_parity(m) == "odd":
        off1[anti] = (y + x)[anti]
    return BatchPaths(x, y, labels, family, P, Q, np.where(family == sph.GEODESIC, theta, 0.0), off0, off1)


def literal_stratum_floor(X: SimplicialComplex, parity: str) -> int:
    """Lowest stratum the literal planner is meant to use on X x X."""
    if parity == "odd":
        return X.n - z_invariant(X)[0]
    return 2 * X.n - 2 * d_invariant(X)


def plan_restricted_literal(
    X: SimplicialComplex,
    x,
    y,
    tau: float = sph.TAU_ANTI,
    tau_cell: float = TAU_CELL,
    floor: int | None = None,
) -> PlanResult:
    """The full-product rule applied to a pair of points of X.

    The path is not guaranteed to stay in X; use ``verify_containment``.
    For odd spheres the stratum always satisfies ``j >= n - z(X)`` and a
    breach raises.  For even spheres the bound ``j >= 2n - 2 d(X)`` can fail
    on complexes with several maximal faces, so it is only reported by
    ``verify_partition``.
    """
    x, y = _check_pair(x, y)
    for name, p in (("x", x), ("y", y)):
        if not membership(X, p, tau_cell):
            raise PointNotInComplex(f"{name} has support {to_indices(support(p, tau_cell))}, not a face")
    dom = classify_literal(x, y, tau)
    if dom.kind == "odd":
        floor = literal_stratum_floor(X, "odd") if floor is None else floor
        if dom.stratum < floor:
            raise PlannerError(f"stratum {dom.stratum} below n - z(X) = {floor}")
    path = TimedPath((Stage(0.0, 1.0, _literal_segments(x, y, dom, tau)),))
    return PlanResult(dom, path, "restricted-literal")


def _to_base_segments(x: np.ndarray, tau: float) -> tuple[tuple[sph.Segment, ...], int]:
    m = x.shape[1]
    e = sph.basepoint(m)
    segs = []
    at_minus_e = x[:, 0] <= -1.0 + tau
    for i in range(x.shape[0]):
        if at_minus_e[i]:
            segs.append(sph.corrected(sph.s1_semicircle(-e, tau), x[i], e))
        else:
            segs.append(sph.s2_short_geodesic(x[i], e, tau))
    return tuple(segs), to_mask(np.nonzero(at_minus_e)[0] + 1)


def classify_safe(x, y, tau: float = sph.TAU_ANTI) -> DomainId:
    x, y = _check_pair(x, y)
    ix = to_mask(np.nonzero(x[:, 0] <= -1.0 + tau)[0] + 1)
    iy = to_mask(np.nonzero(y[:, 0] <= -1.0 + tau)[0] + 1)
    return DomainId("safe", (ix, iy), popcount(ix) + popcount(iy))


def plan_safe(X: SimplicialComplex, x, y, tau: float = sph.TAU_ANTI, tau_cell: float = TAU_CELL) -> PlanResult:
    """Go from x to the basepoint, then from the basepoint to y.

    Coordinates at -e leave along the s1 semicircle of -e, the others take
    the short arc to e, so the first half stays in the closed cell of x and
    the second half in the closed cell of y.
    """
    x, y = _check_pair(x, y)
    for name, p in (("x", x), ("y", y)):
        if not membership(X, p, tau_cell):
            raise PointNotInComplex(f"{name} has support {to_indices(support(p, tau_cell))}, not a face")
    out, ix = _to_base_segments(x, tau)
    back, iy = _to_base_segments(y, tau)
    path = TimedPath((Stage(0.0, 0.5, out), Stage(0.5, 1.0, tuple(seg.reversed() for seg in back))))
    dom = DomainId("safe", (ix, iy), popcount(ix) + popcount(iy))
    return PlanResult(dom, path, "safe")


# --------------------------------------------------------- planner objects


@dataclass(frozen=True)
class LiteralPlanner:
    """Coordinate-wise planner, on the full product or restricted to X."""

    X: SimplicialComplex
    parity: str = "odd"
    tau: float = sph.TAU_ANTI
    tau_cell: float = TAU_CELL

    @property
    def kind(self) -> str:
        if union_closed(self.X) and self.X.facets[0] == (1 << self.X.n) - 1:
            return f"full-{self.parity}"
        return "restricted-literal"

    def classify(self, x, y) -> DomainId:
        return classify_literal(x, y, self.tau)

    def plan(self, x, y) -> PlanResult:
        res = plan_restricted_literal(self.X, x, y, self.tau, self.tau_cell, self._floor)
        return PlanResult(res.domain, res.path, self.kind)

    @cached_property
    def _floor(self) -> int:
        return literal_stratum_floor(self.X, self.parity)

    def stratum_floor(self) -> int:
        return self._floor

    def domain_count(self) -> int:
        """Number of strata the planner claims on X x X."""
        top = self.X.n if self.parity == "odd" else 2 * self.X.n
        return top - self.stratum_floor() + 1


@dataclass(frozen=True)
class SafePlanner:
    X: SimplicialComplex
    parity: str = "odd"
    tau: float = sph.TAU_ANTI
    tau_cell: float = TAU_CELL
    kind: str = field(default="safe", init=False)

    def classify(self, x, y) -> DomainId:
        return classify_safe(x, y, self.tau)

    def plan(self, x, y) -> PlanResult:
        return plan_safe(self.X, x, y, self.tau, self.tau_cell)

    def stratum_floor(self) -> int:
        return 0

    def domain_count(self) -> int:
        return 2 * d_invariant(self.X) + 1


def full_planner(n: int, parity: str = "odd", tau: float = sph.TAU_ANTI) -> LiteralPlanner:
    return LiteralPlanner(full_simplex(n), parity, tau)


@dataclass(frozen=True)
class ProductPlanner:
    """Planner on X1 x X2 from planners on the factors.

    The pair lands in the domain whose stratum is the sum of the factor
    strata; the path runs both factor paths side by side.  Factor paths
    must share their stage breakpoints.
    """

    first: object
    second: object

    @property
    def n1(self) -> int:
        return self.first.X.n

    @property
    def kind(self) -> str:
        return f"product({self.first.kind},{self.second.kind})"

    def classify(self, x, y) -> DomainId:
        a = self.first.classify(x[: self.n1], y[: self.n1])
        b = self.second.classify(x[self.n1 :], y[self.n1 :])
        return DomainId("product", (a, b), a.stratum + b.stratum)

    def plan(self, x, y) -> PlanResult:
        x, y = _check_pair(x, y)
        a = self.first.plan(x[: self.n1], y[: self.n1])
        b = self.second.plan(x[self.n1 :], y[self.n1 :])
        if [(s.t0, s.t1) for s in a.path.stages] != [(s.t0, s.t1) for s in b.path.stages]:
            raise PlannerError("factor paths have different stage breakpoints")
        stages = tuple(
            Stage(sa.t0, sa.t1, sa.segments + sb.segments) for sa, sb in zip(a.path.stages, b.path.stages)
        )
        dom = DomainId("product", (a.domain, b.domain), a.domain.stratum + b.domain.stratum)
        return PlanResult(dom, TimedPath(stages), self.kind)

    def domain_count(self) -> int:
        return self.first.domain_count() + self.second.domain_count() - 1
