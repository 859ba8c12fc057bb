"""The acceptance table: one function per criterion, each returning a Criterion.

Shared by ``tests/test_acceptance.py`` and the ``report`` CLI command.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import algebra as alg
from . import applications as app
from . import sphere as sph
from .complex import (
    Graph,
    flag_complex,
    from_facets,
    full_simplex,
    is_face,
    popcount,
    product,
    skeleton,
    tc,
    to_indices,
    wedge,
    z_bruteforce,
    z_invariant,
)
from .planner import LiteralPlanner, SafePlanner, full_planner
from .sampling import pattern_pair, random_complex, random_graph
from .verify import draw_pairs, verify_containment, verify_full_batch, verify_partition


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float | None = None

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.seconds < self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return f"[{status}] {self.number}. {self.title}: {self.detail} [{self.seconds:.2f}s{budget}]"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
        }


def _timed(number, title, budget, fn) -> Criterion:
    t0 = time.perf_counter()
    passed, detail = fn()
    return Criterion(number, title, passed, detail, time.perf_counter() - t0, budget)


def figure_eight():
    return from_facets(2, [[1], [2]])


def sampled_complexes(seed: int = 0, count: int = 12):
    """Named complexes plus a few random ones on up to 6 vertices."""
    rng = np.random.default_rng(seed)
    named = [
        figure_eight(),
        skeleton(5, 2),
        skeleton(4, 1),
        from_facets(3, [[1, 2], [2, 3]]),
        full_simplex(3),
        wedge(full_simplex(2), full_simplex(1)),
        product(figure_eight(), figure_eight()),
    ]
    randoms = [random_complex(rng, int(rng.integers(2, 7))) for _ in range(count)]
    return named + randoms


# ------------------------------------------------------------- criteria


def criterion_1() -> Criterion:
    def run():
        bad = []
        for ell in range(1, 5):
            for n in range(1, 11):
                X = full_simplex(n) if n <= ell else skeleton(n, ell)
                if tc(X).tc != min(n + 1, 2 * ell + 1):
                    bad.append(("gp", n, ell))
                if n >= ell:
                    model = product(full_simplex(n - 1) if n - 1 <= ell - 1 else skeleton(n - 1, ell - 1), full_simplex(1))
                    if tc(model).tc != min(n + 1, 2 * ell):
                        bad.append(("generic", n, ell))
        return not bad, f"40 general-position + generic cells checked, mismatches={bad}"

    return _timed(1, "tc grid matches min(n+1,2l+1) and min(n+1,2l)", 1.0, run)


def criterion_2(seed: int = 2, count: int = 200) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        bad = []
        for i in range(count):
            X = random_complex(rng, int(rng.integers(1, 15)))
            z, (J, K) = z_invariant(X)
            zb = z_bruteforce(X)
            if z != zb or J & K or not is_face(X, J) or not is_face(X, K) or popcount(J) + popcount(K) != z:
                bad.append(i)
        return not bad, f"{count} random complexes (n<=14), mismatches={bad}"

    return _timed(2, "z_invariant equals brute force", 30.0, run)


def criterion_3(seed: int = 3, count: int = 100) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        bad = []
        for i in range(count):
            X = random_complex(rng, int(rng.integers(1, 13)))
            if alg.zcl_exhaustive_basic(X) != z_invariant(X)[0]:
                bad.append(i)
        return not bad, f"{count} random complexes (n<=12), mismatches={bad}"

    return _timed(3, "exhaustive basic zcl equals z", 60.0, run)


def criterion_4() -> Criterion:
    def run():
        bad = []
        for z in range(0, 9):
            iterated = alg.zero_divisor_product(range(1, z + 1))
            closed = alg.shuffle_expansion(z)
            if iterated != closed or len(closed.terms) != 2**z:
                bad.append(z)
        return not bad, f"z=0..8 exact, mismatches={bad}"

    return _timed(4, "shuffle expansion equals iterated product", 5.0, run)


def full_product_pairs(rng, n: int, m: int, parity: str, count: int):
    """Half generic pairs, half with a uniformly chosen target stratum."""
    labels = (1, 2) if parity == "odd" else (0, 1, 2)
    by_stratum: dict[int, list] = {}
    for pattern in itertools.product(labels, repeat=n):
        j = pattern.count(2) if parity == "odd" else sum(pattern)
        by_stratum.setdefault(j, []).append(list(pattern))
    top = max(by_stratum)
    pairs = []
    for _ in range(count):
        if rng.random() < 0.5:
            pattern = [2] * n
        else:
            options = by_stratum[int(rng.integers(0, top + 1))]
            pattern = options[int(rng.integers(len(options)))]
        pairs.append(pattern_pair(rng, n, m, pattern))
    return pairs


def criterion_5(samples: int = 10_000, seed: int = 5, times: int = 256) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        notes, ok = [], True
        for parity, ns in (("odd", range(1, 7)), ("even", range(1, 4))):
            m = sph.ambient_dim(parity, 1)
            for n in ns:
                planner = full_planner(n, parity)
                pairs = full_product_pairs(rng, n, m, parity, samples)
                part = verify_partition(planner, pairs=pairs)
                cont = verify_full_batch(planner, pairs, times=times)
                want = n + 1 if parity == "odd" else 2 * n + 1
                good = (
                    not part.ambiguous
                    and part.nonempty_strata == want
                    and cont.strata == part.strata
                    and cont.max_endpoint_error <= 1e-9
                    and cont.max_sphere_error <= 1e-10
                    and cont.max_scalar_gap <= 1e-12
                )
                ok &= good
                notes.append(
                    f"{parity} n={n}: strata {part.nonempty_strata}/{want}, "
                    f"end {cont.max_endpoint_error:.1e}, sphere {cont.max_sphere_error:.1e}"
                )
        return ok, "; ".join(notes)

    return _timed(5, "planner contract on full products", 60.0, run)


def criterion_6(samples: int = 1000, seed: int = 6) -> Criterion:
    def run():
        counts = {}
        first = None
        for parity in ("odd", "even"):
            total = 0
            for idx, X in enumerate(sampled_complexes(seed)):
                rep = verify_partition(LiteralPlanner(X, parity), samples=samples, seed=seed + idx)
                total += len(rep.bound_violations) + len(rep.ambiguous)
                if rep.bound_violations and first is None:
                    v = rep.bound_violations[0]
                    first = f"{parity} {X!r}: stratum {v['domain']['stratum']} < floor {v['floor']}"
            counts[parity] = total
        detail = f"violations odd={counts['odd']} even={counts['even']}"
        if first:
            detail += f"; first: {first}"
        return counts["odd"] == 0 and counts["even"] == 0, detail

    return _timed(6, "literal stratum bound on sampled complexes", None, run)


def criterion_7(samples: int = 500, seed: int = 7) -> Criterion:
    def run():
        safe_bad = 0
        for parity in ("odd", "even"):
            for idx, X in enumerate(sampled_complexes(seed)):
                safe_bad += verify_containment(SafePlanner(X, parity), samples=samples, seed=seed + idx).violating_pairs
        closed = [full_simplex(n) for n in range(1, 5)] + [from_facets(5, [[1, 3, 4]]), from_facets(6, [[2, 3, 5, 6]])]
        literal_closed_bad = 0
        for parity in ("odd", "even"):
            for idx, X in enumerate(closed):
                literal_closed_bad += verify_containment(
                    LiteralPlanner(X, parity), samples=samples, seed=seed + idx
                ).violating_pairs
        lit = LiteralPlanner(figure_eight(), "odd")
        pairs = draw_pairs(lit, 1000, seed, directed_fraction=1.0)
        fig8 = verify_containment(lit, pairs=pairs)
        ok = safe_bad == 0 and literal_closed_bad == 0 and fig8.violating_pairs >= 1
        witness = ""
        if fig8.violations:
            v = fig8.violations[0]
            witness = f" (first: sample {v['sample']} at t={v['t']:.3f}, support {v['support']})"
        return ok, (
            f"safe violations={safe_bad}, literal on union-closed={literal_closed_bad}, "
            f"literal on figure-eight={fig8.violating_pairs}/1000{witness}"
        )

    return _timed(7, "containment dichotomy", None, run)


def criterion_8(seed: int = 8) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        raag_bad = []
        for i in range(100):
            G: Graph = random_graph(rng, int(rng.integers(1, 13)))
            ans = app.raag_tc(G)
            X = flag_complex(G)
            if ans.tc != tc(X).tc or ans.tc != z_bruteforce(X) + 1:
                raag_bad.append(i)
        open_bad = [
            n
            for n in range(1, 9)
            if not app.check_general_position(app.open_string_arrangement(n)) or app.open_string_tc(n).tc != n + 2
        ]
        red_bad = [
            (n, ell)
            for ell in range(1, 5)
            for n in range(1, 11)
            if len({app.redundant_tc(n, ell, k).tc for k in range(1, 5)}) != 1
        ]
        ok = not (raag_bad or open_bad or red_bad)
        return ok, f"raag mismatches={raag_bad}, open-string failures={open_bad}, redundant k-dependence={red_bad}"

    return _timed(8, "applications", None, run)


def criterion_9(seed: int = 9) -> Criterion:
    def run():
        bad = []
        for i in range(1, 7):
            sq = alg.tensor_mul(alg.zero_divisor(i, 2), alg.zero_divisor(i, 2))
            b = 1 << (i - 1)
            if sq.terms != {(b, b): Fraction(-2)}:
                bad.append(("square", i))
        for X in sampled_complexes(seed, count=6):
            for J in X.faces():
                if not alg.zero_divisor_product(to_indices(J), X, degree=2, power=2):
                    bad.append((repr(X), J))
        return not bad, f"squares and face products exact, failures={bad[:5]}"

    return _timed(9, "even-parity squares", None, run)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
]


def run_all(echo=None) -> list[Criterion]:
    out = []
    for fn in CRITERIA:
        c = fn()
        if echo:
            echo(c.line())
        out.append(c)
    return out
