"""Local rules on a single round sphere.

Points are unit vectors in R^m.  An even ambient dimension m = 2k means the
odd sphere S^(2k-1) (viewed inside C^k); an odd ambient dimension m = 2k+1
means the even sphere S^(2k).  Every segment is a closed-form curve
parametrized by local time s in [0, 1] and returns its declared endpoints
exactly at s = 0 and s = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TAU_NORM = 1e-12
TAU_ANTI = 1e-9
TAU_DEG = 1e-12


class SphereError(ValueError):
    pass


class AntipodalInput(SphereError):
    pass


class PoleInput(SphereError):
    pass


def sphere_parity(m: int) -> str:
    """'odd' for S^(m-1) with m even, 'even' for m odd."""
    if m < 2:
        raise SphereError(f"ambient dimension {m} too small")
    return "odd" if m % 2 == 0 else "even"


def ambient_dim(parity: str, k: int) -> int:
    if k < 1:
        raise SphereError(f"k must be >= 1, got {k}")
    if parity == "odd":
        return 2 * k
    if parity == "even":
        return 2 * k + 1
    raise SphereError(f"unknown parity {parity!r}")


def basepoint(m: int) -> np.ndarray:
    e = np.zeros(m)
    e[0] = 1.0
    return e


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    r = np.linalg.norm(v)
    if r == 0:
        raise SphereError("zero vector has no direction")
    return v / r


def angle_point(theta: float) -> np.ndarray:
    """Point of the circle S^1 at angle ``theta``."""
    return np.array([np.cos(theta), np.sin(theta)])


def check_on_sphere(x: np.ndarray, tol: float = TAU_NORM) -> None:
    if abs(np.linalg.norm(x) - 1.0) > tol:
        raise SphereError(f"point has norm {np.linalg.norm(x)!r}, not 1")


def complex_structure(x: np.ndarray) -> np.ndarray:
    """Multiplication by i on R^(2k) = C^k, pairing coordinates (2j, 2j+1)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] % 2:
        raise SphereError("complex structure needs an even ambient dimension")
    v = np.empty_like(x)
    v[..., 0::2] = -x[..., 1::2]
    v[..., 1::2] = x[..., 0::2]
    return v


def even_field(x: np.ndarray, tau: float = TAU_ANTI) -> np.ndarray:
    """Unit tangent field on the sphere minus the basepoint e.

    Pullback of the constant field u2 (second standard basis vector) under
    stereographic projection from e.  In ambient coordinates the unnormalized
    pullback is ``((1 - x0) x1, (1 - x0) u2' - x1 x')`` with x' the tail of x;
    its length is ``1 - x0``.  Works on stacks of points along the last axis.
    """
    x = np.asarray(x, dtype=float)
    x0 = x[..., 0]
    if np.any(x0 >= 1.0 - tau):
        raise PoleInput("tangent field is undefined at the basepoint")
    tail = x[..., 1:]
    # 1 - x0 without cancellation near the pole
    gap = np.where(x0 > 0, np.sum(tail * tail, axis=-1) / np.where(x0 > 0, 1.0 + x0, 1.0), 1.0 - x0)
    x1 = x[..., 1]
    v = np.empty_like(x)
    v[..., 0] = gap * x1
    v[..., 1:] = -x1[..., None] * tail
    v[..., 1] += gap
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


CONSTANT, GEODESIC, SEMICIRCLE = 0, 1, 2


@dataclass(frozen=True, eq=False)
class Segment:
    """Curve on a sphere over local time s in [0, 1].

    Every variant has the form ``a(s) P + b(s) Q``; the family fixes the
    coefficients (1 and 0, the slerp weights, or cos and sin of pi s).
    """

    start: np.ndarray
    end: np.ndarray

    family = CONSTANT

    def frame(self) -> tuple[np.ndarray, np.ndarray, float]:
        """``(P, Q, theta)`` for the closed form."""
        return self.start, np.zeros_like(self.start), 0.0

    def offsets(self) -> tuple[np.ndarray, np.ndarray] | None:
        return None

    def reversed(self) -> "Segment":
        raise NotImplementedError

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        out = evaluate_segments((self,), s.reshape(-1))[:, 0]
        return out.reshape(s.shape + (self.start.shape[0],))

    @property
    def kind(self) -> str:
        return type(self).__name__


@dataclass(frozen=True, eq=False)
class Constant(Segment):
    def reversed(self):
        return Constant(self.end, self.start)


@dataclass(frozen=True, eq=False)
class ShortGeodesic(Segment):
    theta: float = 0.0

    family = GEODESIC

    def frame(self):
        return self.start, self.end, self.theta

    def reversed(self):
        return ShortGeodesic(self.end, self.start, self.theta)


@dataclass(frozen=True, eq=False)
class Semicircle(Segment):
    """``cos(pi s) x + sin(pi s) v`` for a unit tangent v at x; ends at -x."""

    direction: np.ndarray = None

    family = SEMICIRCLE

    def frame(self):
        return self.start, self.direction, 0.0

    def reversed(self):
        # s -> 1 - s gives cos(pi s) (-x) + sin(pi s) v
        return type(self)(self.end, self.start, self.direction)


@dataclass(frozen=True, eq=False)
class FixedMeridian(Semicircle):
    """The chosen path from e to -e through u2."""


@dataclass(frozen=True, eq=False)
class CorrectedArc(Segment):
    """A fixed arc whose ends are nudged onto the actual endpoints.

    Antipodality is decided with a tolerance, so the far end of a semicircle
    may miss the requested endpoint by a hair.  The two end offsets are
    blended in linearly and the sum renormalized, which keeps the path on
    the sphere and the endpoints exact.
    """

    base: Segment = None

    @property
    def family(self):
        return self.base.family

    def frame(self):
        return self.base.frame()

    def offsets(self):
        return self.start - self.base.start, self.end - self.base.end

    def reversed(self):
        return CorrectedArc(self.end, self.start, self.base.reversed())

    @property
    def kind(self) -> str:
        return self.base.kind


def corrected(base: Segment, x: np.ndarray, y: np.ndarray) -> Segment:
    if np.array_equal(base.start, x) and np.array_equal(base.end, y):
        return base
    return CorrectedArc(x, y, base)


def reverse(seg: Segment) -> Segment:
    return seg.reversed()


def evaluate_segments(segs, s: np.ndarray) -> np.ndarray:
    """Evaluate segments side by side at local times ``s``; shape ``(len(s), len(segs), m)``."""
    s = np.asarray(s, dtype=float)
    frames = [g.frame() for g in segs]
    P = np.array([f[0] for f in frames])
    Q = np.array([f[1] for f in frames])
    theta = np.array([f[2] for f in frames])
    fam = np.array([g.family for g in segs])
    a = np.ones((s.size, len(segs)))
    b = np.zeros((s.size, len(segs)))
    geo = fam == GEODESIC
    if geo.any():
        th = theta[geo]
        a[:, geo] = np.sin(np.outer(1.0 - s, th)) / np.sin(th)
        b[:, geo] = np.sin(np.outer(s, th)) / np.sin(th)
    semi = fam == SEMICIRCLE
    if semi.any():
        a[:, semi] = np.cos(np.pi * s)[:, None]
        b[:, semi] = np.sin(np.pi * s)[:, None]
    out = a[:, :, None] * P + b[:, :, None] * Q
    for i, g in enumerate(segs):
        off = g.offsets()
        if off is None:
            continue
        p = out[:, i] + (1.0 - s)[:, None] * off[0] + s[:, None] * off[1]
        out[:, i] = p / np.linalg.norm(p, axis=1, keepdims=True)
    out[s == 0.0] = np.array([g.start for g in segs])
    out[s == 1.0] = np.array([g.end for g in segs])
    return out


def s2_short_geodesic(x, y, tau_anti: float = TAU_ANTI, tau_deg: float = TAU_DEG) -> Segment:
    """Move x to y along the shorter great-circle arc."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = float(x @ y)
    if c <= -1.0 + tau_anti:
        raise AntipodalInput(f"points are antipodal (x.y = {c!r})")
    # arctan2 keeps small angles accurate where arccos does not
    theta = float(np.arctan2(np.linalg.norm(y - c * x), c))
    if theta < tau_deg:
        # numerically a point; y is still returned exactly at s = 1
        return Constant(x, y)
    return ShortGeodesic(x, y, theta)


def s1_semicircle_odd(x) -> Semicircle:
    """Semicircle from x to -x tangent to ix."""
    x = np.asarray(x, dtype=float)
    if sphere_parity(x.shape[0]) != "odd":
        raise SphereError("s1_semicircle_odd needs an odd-dimensional sphere")
    return Semicircle(x, -x, complex_structure(x))


def s1_semicircle_even(x, tau: float = TAU_ANTI) -> Semicircle:
    x = np.asarray(x, dtype=float)
    if sphere_parity(x.shape[0]) != "even":
        raise SphereError("s1_semicircle_even needs an even-dimensional sphere")
    return Semicircle(x, -x, even_field(x, tau))


def s0_fixed_even(m: int) -> FixedMeridian:
    if sphere_parity(m) != "even":
        raise SphereError("s0_fixed_even needs an even-dimensional sphere")
    e = basepoint(m)
    u2 = np.zeros(m)
    u2[1] = 1.0
    return FixedMeridian(e, -e, u2)


def s1_semicircle(x, tau: float = TAU_ANTI) -> Semicircle:
    x = np.asarray(x, dtype=float)
    if sphere_parity(x.shape[0]) == "odd":
        return s1_semicircle_odd(x)
    return s1_semicircle_even(x, tau)


def random_point(rng: np.random.Generator, m: int) -> np.ndarray:
    """Uniform point on S^(m-1) via a normalized Gaussian."""
    while True:
        v = rng.standard_normal(m)
        r = np.linalg.norm(v)
        if r > 1e-6:
            return v / r
