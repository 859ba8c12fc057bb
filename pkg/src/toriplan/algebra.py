"""Exact square-free monomial algebras and their tensor squares.

``E`` is the algebra on generators e_1..e_n of a fixed degree g with
e_i e_i = 0.  For odd g it is the exterior algebra; for even g it is the
commutative algebra of square-free monomials.  Monomials are bitmasks,
written in increasing index order, and coefficients are ``Fraction``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import SimplicialComplex, face_counts, is_face, popcount, to_indices, to_mask, z_invariant

SHUFFLE_MAX = 16
EXHAUSTIVE_MAX_N = 14


class AlgebraError(ValueError):
    pass


def merge_sign(a: int, b: int) -> int:
    """Sign of the shuffle sorting ``e_A e_B`` into increasing order (odd degree)."""
    inversions = 0
    for i in to_indices(b):
        inversions += popcount(a >> i)
    return -1 if inversions & 1 else 1


@dataclass(frozen=True)
class Element:
    """Element of E: monomial bitmask -> nonzero rational coefficient."""

    terms: dict = field(default_factory=dict)
    degree: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise AlgebraError(f"generator degree must be >= 1, got {self.degree}")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.degree == other.degree and self.terms == other.terms

    def __add__(self, other: "Element") -> "Element":
        _same(self.degree, other.degree)
        return Element(_accumulate(itertools.chain(self.terms.items(), other.terms.items())), self.degree)

    def __neg__(self) -> "Element":
        return Element({k: -v for k, v in self.terms.items()}, self.degree)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element({k: v * other for k, v in self.terms.items() if v * other}, self.degree)
        return mul(self, other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return format_element(self)


def _same(g1: int, g2: int) -> None:
    if g1 != g2:
        raise AlgebraError(f"grading mismatch: {g1} vs {g2}")


def _accumulate(items) -> dict:
    out: dict = {}
    for k, v in items:
        out[k] = out.get(k, 0) + v
    return {k: Fraction(v) for k, v in out.items() if v}


def monomial(indices, degree: int = 1, coeff=1) -> Element:
    mask = indices if isinstance(indices, int) else to_mask(indices)
    return Element({mask: Fraction(coeff)} if coeff else {}, degree)


def one(degree: int = 1) -> Element:
    return Element({0: Fraction(1)}, degree)


def generator(i: int, degree: int = 1) -> Element:
    return monomial([i], degree)


def monomial_product(a: int, b: int, odd: bool) -> tuple[int, int]:
    """``e_A * e_B = sign * e_(A|B)``; sign 0 when A and B overlap."""
    if a & b:
        return 0, 0
    return (merge_sign(a, b) if odd else 1), a | b


def mul(x: Element, y: Element) -> Element:
    _same(x.degree, y.degree)
    out: dict = {}
    odd = x.odd
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            s, m = monomial_product(a, b, odd)
            if s:
                out[m] = out.get(m, 0) + s * ca * cb
    return Element({k: v for k, v in out.items() if v}, x.degree)


# ----------------------------------------------------------------- tensors


@dataclass(frozen=True)
class Tensor:
    """Element of E (x) E: (left mask, right mask) -> nonzero rational."""

    terms: dict = field(default_factory=dict)
    degree: int = 1

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor) and self.degree == other.degree and self.terms == other.terms

    def __add__(self, other: "Tensor") -> "Tensor":
        _same(self.degree, other.degree)
        return Tensor(_accumulate(itertools.chain(self.terms.items(), other.terms.items())), self.degree)

    def __neg__(self) -> "Tensor":
        return Tensor({k: -v for k, v in self.terms.items()}, self.degree)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Tensor({k: v * other for k, v in self.terms.items() if v * other}, self.degree)
        return tensor_mul(self, other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return format_tensor(self)


def tensor(a: Element, b: Element) -> Tensor:
    _same(a.degree, b.degree)
    return Tensor(
        {(p, q): cp * cq for p, cp in a.terms.items() for q, cq in b.terms.items() if cp * cq}, a.degree
    )


def tensor_one(degree: int = 1) -> Tensor:
    return Tensor({(0, 0): Fraction(1)}, degree)


def tensor_mul(u: Tensor, v: Tensor) -> Tensor:
    """``(a (x) b)(c (x) d) = (-1)^(deg b deg c) ac (x) bd``."""
    _same(u.degree, v.degree)
    odd = u.odd
    out: dict = {}
    for (a, b), cu in u.terms.items():
        for (c, d), cv in v.terms.items():
            s1, ac = monomial_product(a, c, odd)
            if not s1:
                continue
            s2, bd = monomial_product(b, d, odd)
            if not s2:
                continue
            # deg b * deg c is odd only when both have an odd number of odd generators
            koszul = -1 if odd and (popcount(b) & popcount(c) & 1) else 1
            key = (ac, bd)
            out[key] = out.get(key, 0) + koszul * s1 * s2 * cu * cv
    return Tensor({k: v for k, v in out.items() if v}, u.degree)


def zero_divisor(i: int, degree: int = 1, n: int | None = None) -> Tensor:
    """``1 (x) e_i - e_i (x) 1``."""
    if i < 1 or (n is not None and i > n):
        raise AlgebraError(f"generator index {i} outside [1, {n}]")
    b = 1 << (i - 1)
    return Tensor({(0, b): Fraction(1), (b, 0): Fraction(-1)}, degree)


def reduce_mod_complex(u: Tensor, X: SimplicialComplex) -> Tensor:
    """Image in E/I_X (x) E/I_X: drop terms whose left or right monomial is not a face."""
    top = (1 << X.n) - 1
    keep = {}
    cache: dict[int, bool] = {}

    def face(m: int) -> bool:
        if m not in cache:
            cache[m] = not (m & ~top) and is_face(X, m)
        return cache[m]

    for (a, b), c in u.terms.items():
        if face(a) and face(b):
            keep[(a, b)] = c
    return Tensor(keep, u.degree)


def zero_divisor_product(indices, X: SimplicialComplex | None = None, degree: int = 1, power: int = 1) -> Tensor:
    """Ordered product of ``zero_divisor(i) ** power`` over ``indices``.

    With X given, every partial product is pushed to the quotient, which is
    legitimate because reduction is a ring map and keeps the sizes small.
    """
    out = tensor_one(degree)
    for i in indices:
        for _ in range(power):
            out = tensor_mul(out, zero_divisor(i, degree))
            if X is not None:
                out = reduce_mod_complex(out, X)
            if not out:
                return out
    return out


def shuffle_expansion(z: int, degree: int = 1) -> Tensor:
    """Closed form of ``zbar_1 ... zbar_z`` for odd generator degree.

    Sum over ordered splits (J, J') of [z] of ``(-1)^|J| sign(sigma) e_J (x) e_J'``
    where sigma lists J then J'.
    """
    if not 0 <= z <= SHUFFLE_MAX:
        raise AlgebraError(f"shuffle expansion capped at z <= {SHUFFLE_MAX}, got {z}")
    if degree % 2 == 0:
        raise AlgebraError("the shuffle formula is for odd generator degree")
    terms = {}
    full = (1 << z) - 1
    for J in range(1 << z):
        Jp = full ^ J
        sign = (-1) ** popcount(J) * merge_sign(J, Jp)
        terms[(J, Jp)] = Fraction(sign)
    return Tensor(terms, degree)


# ------------------------------------------------------------ certificates


@dataclass(frozen=True)
class ZclCertificate:
    value: int
    certified: bool
    indices: tuple[int, ...]
    witness: tuple[tuple[int, ...], tuple[int, ...]]
    surviving_terms: int
    parity: str


def zcl_witness(X: SimplicialComplex, parity: str = "odd", degree: int | None = None) -> ZclCertificate:
    """Lower-bound certificate for the zero-divisor cup length of H*(X).

    Odd spheres: the product of zbar_i over the disjoint witness J | K of
    z(X) is nonzero in the quotient, so zcl >= z(X).  Even spheres: the
    product of zbar_i squared over a largest face is nonzero, so
    zcl >= 2 d(X).
    """
    if parity == "odd":
        g = 1 if degree is None else degree
        if g % 2 == 0:
            raise AlgebraError("odd parity needs an odd generator degree")
        z, (J, K) = z_invariant(X)
        idx = to_indices(J | K)
        prod = zero_divisor_product(idx, X, g)
        ok = bool(prod) and (J, K) in prod.terms
        return ZclCertificate(z, ok, idx, (to_indices(J), to_indices(K)), len(prod.terms), parity)
    if parity == "even":
        g = 2 if degree is None else degree
        if g % 2:
            raise AlgebraError("even parity needs an even generator degree")
        top = max(X.facets, key=lambda f: (popcount(f), [-i for i in to_indices(f)]))
        idx = to_indices(top)
        prod = zero_divisor_product(idx, X, g, power=2)
        return ZclCertificate(2 * len(idx), bool(prod), idx, (idx, ()), len(prod.terms), parity)
    raise AlgebraError(f"unknown parity {parity!r}")


def zcl_exhaustive_basic(X: SimplicialComplex, degree: int = 1) -> int:
    """Largest S with ``prod_(i in S) zbar_i != 0`` in the quotient, by search.

    Depth-first over increasing index sequences; a zero product kills every
    extension since the remaining factors only multiply it further.
    """
    if X.n > EXHAUSTIVE_MAX_N:
        raise AlgebraError(f"exhaustive search capped at n <= {EXHAUSTIVE_MAX_N}, got {X.n}")
    if degree % 2 == 0:
        raise AlgebraError("exhaustive search is for odd generator degree")
    zbars = [zero_divisor(i, degree) for i in range(1, X.n + 1)]
    best = 0

    def dfs(start: int, depth: int, current: Tensor) -> None:
        nonlocal best
        best = max(best, depth)
        if depth + (X.n - start) <= best:
            return
        for i in range(start, X.n):
            nxt = reduce_mod_complex(tensor_mul(current, zbars[i]), X)
            if nxt:
                dfs(i + 1, depth + 1, nxt)

    dfs(0, 0, tensor_one(degree))
    return best


def poincare_polynomial(X: SimplicialComplex) -> list[int]:
    """Coefficients of sum_k (number of k-element faces) t^k."""
    return face_counts(X)


# --------------------------------------------------------------- printing


def _mono(mask: int) -> str:
    idx = to_indices(mask)
    return "e" + "".join(f"_{i}" for i in idx) if idx else "1"


def _coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    return " + ".join(f"{_coeff(c)}*{_mono(m)}" for m, c in sorted(x.terms.items(), key=lambda t: (popcount(t[0]), to_indices(t[0]))))


def format_tensor(u: Tensor) -> str:
    if not u.terms:
        return "0"
    items = sorted(u.terms.items(), key=lambda t: (popcount(t[0][0]), to_indices(t[0][0]), to_indices(t[0][1])))
    return " + ".join(f"{_coeff(c)}*{_mono(a)}(x){_mono(b)}" for (a, b), c in items)


def tensor_records(u: Tensor) -> list[dict]:
    """Machine-readable terms with coefficients as ``"p/q"`` strings."""
    items = sorted(u.terms.items(), key=lambda t: (popcount(t[0][0]), to_indices(t[0][0]), to_indices(t[0][1])))
    return [{"left": list(to_indices(a)), "right": list(to_indices(b)), "coeff": _coeff(c)} for (a, b), c in items]
