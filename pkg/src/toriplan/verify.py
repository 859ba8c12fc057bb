"""Sampling checks of the motion-planner contract.

Each check draws pairs of points of the planner's complex (half generic,
half directed at the domain boundaries), runs the planner and records what
it sees.  With ``jobs > 1`` the pairs are split across worker processes;
pairs are drawn up front from the seed, so reports do not depend on the
worker count.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import sphere as sph
from .complex import is_face, to_indices
from .planner import DomainId, SafePlanner, membership, plan_literal_batch, support
from .sampling import PairSampler

DEFAULT_SAMPLES = 10_000
DEFAULT_TIMES = 256


def draw_pairs(planner, samples: int, seed: int = 0, k: int = 1, directed_fraction: float = 0.5):
    m = sph.ambient_dim(planner.parity, k)
    rng = np.random.default_rng(seed)
    return PairSampler(planner.X, m).pairs(rng, samples, directed_fraction)


def _chunks(items, jobs: int):
    size = max(1, -(-len(items) // jobs))
    return [(start, items[start : start + size]) for start in range(0, len(items), size)]


def _run(fn, planner, pairs, jobs: int, *args):
    """Apply ``fn(planner, offset, chunk, *args)`` over chunks, results in index order."""
    if jobs <= 1 or len(pairs) < 2 * jobs:
        return [fn(planner, 0, pairs, *args)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(fn, planner, off, chunk, *args) for off, chunk in _chunks(pairs, jobs)]
        return [f.result() for f in futs]


# ------------------------------------------------------------ partition


def coordinate_labels(planner, x, y) -> list[tuple[int, ...]]:
    """Every local-domain label each coordinate satisfies, by direct tests.

    Uses squared distances rather than the classifier's inner products, so a
    disagreement points at a classifier bug.  A well-formed partition gives
    exactly one label per coordinate.
    """
    tau = planner.tau
    e = sph.basepoint(x.shape[1])
    out = []
    for xi, yi in zip(x, y):
        anti = np.sum((xi + yi) ** 2) <= 2 * tau
        if isinstance(planner, SafePlanner):
            bx = np.sum((xi + e) ** 2) <= 2 * tau
            by = np.sum((yi + e) ** 2) <= 2 * tau
            out.append((int(bx) + int(by),))
        elif planner.parity == "odd":
            out.append(tuple(lab for lab, ok in ((1, anti), (2, not anti)) if ok))
        else:
            at_e = np.sum((xi - e) ** 2) <= 2 * tau
            out.append(tuple(lab for lab, ok in ((0, anti and at_e), (1, anti and not at_e), (2, not anti)) if ok))
    return out


def _expected_labels(dom: DomainId, n: int) -> list[int]:
    if dom.kind == "odd":
        return [1 if dom.index[0] >> i & 1 else 2 for i in range(n)]
    if dom.kind == "even":
        return list(dom.index)
    ix, iy = dom.index
    return [(ix >> i & 1) + (iy >> i & 1) for i in range(n)]


@dataclass
class PartitionReport:
    planner: str
    samples: int
    strata: dict[int, int]
    domains_hit: int
    nonempty_strata: int
    theoretical_count: int
    stratum_floor: int
    ambiguous: list[int] = field(default_factory=list)
    bound_violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.ambiguous and not self.bound_violations

    def to_json(self) -> dict:
        d = asdict(self)
        d["strata"] = {str(k): v for k, v in sorted(self.strata.items())}
        d["passed"] = self.passed
        return d


def _partition_chunk(planner, offset, pairs):
    strata: Counter = Counter()
    domains = set()
    ambiguous, violations = [], []
    floor = planner.stratum_floor()
    for j, (x, y) in enumerate(pairs):
        dom = planner.classify(x, y)
        strata[dom.stratum] += 1
        domains.add(dom)
        labels = coordinate_labels(planner, x, y)
        want = _expected_labels(dom, x.shape[0])
        if any(len(ls) != 1 or ls[0] != w for ls, w in zip(labels, want)):
            ambiguous.append(offset + j)
        if dom.stratum < floor:
            violations.append(
                {
                    "sample": offset + j,
                    "domain": dom.to_json(),
                    "floor": floor,
                    "support_x": list(to_indices(support(x))),
                    "support_y": list(to_indices(support(y))),
                }
            )
    return strata, domains, ambiguous, violations


def verify_partition(planner, samples: int = DEFAULT_SAMPLES, seed: int = 0, k: int = 1, jobs: int = 1, pairs=None):
    """Classify sampled pairs; check each lands in exactly one domain and above the stratum floor."""
    pairs = draw_pairs(planner, samples, seed, k) if pairs is None else pairs
    strata: Counter = Counter()
    domains: set = set()
    ambiguous, violations = [], []
    for s, d, a, v in _run(_partition_chunk, planner, pairs, jobs):
        strata.update(s)
        domains |= d
        ambiguous += a
        violations += v
    return PartitionReport(
        planner=planner.kind,
        samples=len(pairs),
        strata=dict(sorted(strata.items())),
        domains_hit=len(domains),
        nonempty_strata=len(strata),
        theoretical_count=planner.domain_count(),
        stratum_floor=planner.stratum_floor(),
        ambiguous=sorted(ambiguous),
        bound_violations=sorted(violations, key=lambda v: v["sample"]),
    )


# ----------------------------------------------------------- containment


@dataclass
class ContainmentReport:
    planner: str
    samples: int
    times: int
    violating_pairs: int
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violating_pairs == 0

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _supports(pts: np.ndarray, tau_cell: float) -> np.ndarray:
    e = sph.basepoint(pts.shape[-1])
    far = np.linalg.norm(pts - e, axis=-1) > tau_cell
    return far.astype(np.int64) @ (1 << np.arange(pts.shape[1], dtype=np.int64))


def _containment_chunk(planner, offset, pairs, times, keep):
    ts = np.linspace(0.0, 1.0, times)
    bad = []
    for j, (x, y) in enumerate(pairs):
        masks = _supports(planner.plan(x, y).path(ts), planner.tau_cell)
        faces = {int(mk): is_face(planner.X, int(mk)) for mk in np.unique(masks)}
        hits = [i for i, mk in enumerate(masks) if not faces[int(mk)]]
        if hits:
            t = hits[0]
            bad.append(
                {
                    "sample": offset + j,
                    "t": float(ts[t]),
                    "support": list(to_indices(int(masks[t]))),
                    "x": x.tolist(),
                    "y": y.tolist(),
                }
            )
    return bad


def verify_containment(
    planner,
    samples: int = DEFAULT_SAMPLES,
    times: int = DEFAULT_TIMES,
    seed: int = 0,
    k: int = 1,
    jobs: int = 1,
    pairs=None,
    keep: int = 20,
) -> ContainmentReport:
    """Evaluate planned paths at ``times`` instants and flag any point outside X."""
    pairs = draw_pairs(planner, samples, seed, k) if pairs is None else pairs
    bad = [v for chunk in _run(_containment_chunk, planner, pairs, jobs, times, keep) for v in chunk]
    bad.sort(key=lambda v: v["sample"])
    return ContainmentReport(planner.kind, len(pairs), times, len(bad), bad[:keep])


# ------------------------------------------------- endpoints, continuity


@dataclass
class ContinuityReport:
    planner: str
    samples: int
    max_endpoint_error: float
    max_sphere_error: float
    lipschitz_pairs: int
    lipschitz_max: float
    delta: float
    margin: float

    def to_json(self) -> dict:
        return asdict(self)


def _nudge(rng, p, delta):
    v = rng.standard_normal(p.shape[0])
    v -= (v @ p) * p
    v *= delta / np.linalg.norm(v)
    q = p + v
    return q / np.linalg.norm(q)


def _perturb(rng, x, y, planner, delta):
    """Move every free coordinate by about ``delta`` while keeping the domain's special relations."""
    e = sph.basepoint(x.shape[1])
    tau, tau_cell = planner.tau, planner.tau_cell

    def free(p):
        return np.linalg.norm(p - e) > tau_cell and p[0] > -1.0 + tau

    x2, y2 = x.copy(), y.copy()
    for i in range(x.shape[0]):
        anti = x[i] @ y[i] <= -1.0 + tau
        if anti and not isinstance(planner, SafePlanner):
            if free(x[i]) and free(y[i]):
                x2[i] = _nudge(rng, x[i], delta)
                y2[i] = -x2[i]
            continue
        if free(x[i]):
            x2[i] = _nudge(rng, x[i], delta)
        if free(y[i]):
            y2[i] = _nudge(rng, y[i], delta)
    return x2, y2


def _regular(planner, x, y, margin) -> bool:
    """Inputs at least ``margin`` (in inner product) from where a rule degenerates."""
    e = sph.basepoint(x.shape[1])
    tau = planner.tau
    for xi, yi in zip(x, y):
        if isinstance(planner, SafePlanner):
            for p in (xi, yi):
                if p[0] > -1.0 + tau and p[0] < -1.0 + margin:
                    return False
            continue
        c = xi @ yi
        if c > -1.0 + tau:
            if c < -1.0 + margin:
                return False
        elif planner.parity == "even" and xi @ e < 1.0 - tau and xi @ e > 1.0 - margin:
            return False
    return True


def _continuity_chunk(planner, offset, pairs, times, delta, margin, seed, lipschitz):
    ts = np.linspace(0.0, 1.0, times)
    end_err = sphere_err = 0.0
    lip, count = 0.0, 0
    for j, (x, y) in enumerate(pairs):
        res = planner.plan(x, y)
        pts = res.path(ts)
        end_err = max(end_err, float(np.abs(pts[0] - x).max()), float(np.abs(pts[-1] - y).max()))
        sphere_err = max(sphere_err, float(np.abs(np.linalg.norm(pts, axis=2) - 1.0).max()))
        if not lipschitz or not _regular(planner, x, y, margin):
            continue
        # per-sample stream keeps the report independent of the worker count
        rng = np.random.default_rng([seed, offset + j])
        x2, y2 = _perturb(rng, x, y, planner, delta)
        dist = max(np.linalg.norm(x2 - x, axis=1).max(), np.linalg.norm(y2 - y, axis=1).max())
        if dist == 0.0 or planner.classify(x2, y2) != res.domain:
            continue
        if not (membership(planner.X, x2, planner.tau_cell) and membership(planner.X, y2, planner.tau_cell)):
            continue
        pts2 = planner.plan(x2, y2).path(ts)
        sup = float(np.linalg.norm(pts2 - pts, axis=2).max())
        lip = max(lip, sup / dist)
        count += 1
    return end_err, sphere_err, lip, count


def verify_endpoints_continuity(
    planner,
    samples: int = 1000,
    times: int = DEFAULT_TIMES,
    seed: int = 0,
    k: int = 1,
    jobs: int = 1,
    delta: float = 1e-3,
    margin: float = 0.1,
    pairs=None,
    lipschitz: bool = True,
) -> ContinuityReport:
    """Endpoint and on-sphere errors, plus an empirical Lipschitz constant within domains.

    Each regular pair is perturbed by at most ``delta`` inside its own
    domain; pairs whose perturbation changes domain or leaves X are skipped.
    """
    pairs = draw_pairs(planner, samples, seed, k) if pairs is None else pairs
    parts = _run(_continuity_chunk, planner, pairs, jobs, times, delta, margin, seed, lipschitz)
    return ContinuityReport(
        planner=planner.kind,
        samples=len(pairs),
        max_endpoint_error=max(p[0] for p in parts),
        max_sphere_error=max(p[1] for p in parts),
        lipschitz_pairs=sum(p[3] for p in parts),
        lipschitz_max=max(p[2] for p in parts),
        delta=delta,
        margin=margin,
    )


@dataclass
class BatchReport:
    samples: int
    max_endpoint_error: float
    max_sphere_error: float
    strata: dict[int, int]
    scalar_checked: int
    max_scalar_gap: float

    def to_json(self) -> dict:
        d = asdict(self)
        d["strata"] = {str(k): v for k, v in sorted(self.strata.items())}
        return d


def verify_full_batch(planner, pairs, times: int = DEFAULT_TIMES, chunk: int = 500, scalar: int = 100) -> BatchReport:
    """Endpoint and on-sphere errors of the vectorized full-product planner.

    The first ``scalar`` pairs are also run through ``planner.plan`` and the
    two paths compared, so the batch code cannot drift from the per-pair one.
    """
    ts = np.linspace(0.0, 1.0, times)
    x = np.array([p[0] for p in pairs])
    y = np.array([p[1] for p in pairs])
    end_err = sphere_err = gap = 0.0
    strata: Counter = Counter()
    for start in range(0, len(pairs), chunk):
        batch = plan_literal_batch(x[start : start + chunk], y[start : start + chunk], planner.tau)
        pts = batch(ts)
        end_err = max(
            end_err,
            float(np.abs(pts[:, 0] - batch.x).max()),
            float(np.abs(pts[:, -1] - batch.y).max()),
        )
        sphere_err = max(sphere_err, float(np.abs(np.linalg.norm(pts, axis=-1) - 1.0).max()))
        strata.update(int(j) for j in batch.strata())
        for i in range(max(0, min(scalar - start, len(pts)))):
            res = planner.plan(batch.x[i], batch.y[i])
            gap = max(gap, float(np.abs(res.path(ts) - pts[i]).max()))
    return BatchReport(len(pairs), end_err, sphere_err, dict(strata), min(scalar, len(pairs)), gap)
