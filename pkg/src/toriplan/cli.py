"""Command-line entry point: ``toriplan <command> ...``.

Exit codes: 0 success, 1 input error, 2 verification failure.  Defaults can
be overridden with environment variables ``TORIPLAN_SEED``, ``TORIPLAN_JOBS``,
``TORIPLAN_SAMPLES``, ``TORIPLAN_PATH_SAMPLES``, ``TORIPLAN_TAU_ANTI``,
``TORIPLAN_TAU_CELL`` and ``TORIPLAN_FORMAT``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance
from . import algebra as alg
from . import applications as app
from . import sphere as sph
from .complex import ComplexError, d_invariant, flag_complex, full_simplex, tc, to_indices, z_invariant
from .io import InputError, load_complex, load_graph, load_plan_query, path_csv, path_records
from .planner import TAU_CELL, LiteralPlanner, PlannerError, SafePlanner
from .verify import verify_containment, verify_endpoints_continuity, verify_partition

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2

def _env(name: str, default, cast):
    raw = os.environ.get(f"TORIPLAN_{name}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise InputError(f"TORIPLAN_{name}={raw!r} is not a valid {cast.__name__}") from None

def _emit(args, human: str, record) -> None:
    if args.format == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(human)

def _witness(w) -> str:
    J, K = w
    return f"J={list(J)} K={list(K)}"

# ------------------------------------------------------------ commands

def _model_from_args(args):
    if args.complex:
        return load_complex(args.complex)
    if args.graph:
        return flag_complex(load_graph(args.graph))
    raise InputError("give --complex FILE or --graph FILE")

def cmd_tc(args) -> int:
    if args.gp:
        ans = app.general_position_tc(*args.gp)
    elif args.generic:
        ans = app.generic_central_tc(*args.generic)
    elif args.redundant:
        ans = app.redundant_tc(*args.redundant)
    elif args.openstring is not None:
        ans = app.open_string_tc(args.openstring)
    elif args.graph and args.parity == "odd":
        ans = app.raag_tc(load_graph(args.graph), args.k)
    else:
        X = _model_from_args(args)
        rep = tc(X, args.parity, args.k)
        ans = app.TcAnswer(rep.tc, X, f"tc = {'z + 1' if args.parity == 'odd' else '2d + 1'}", None, rep.witness_sets())
    record = {"tc": ans.tc, "citation": ans.citation, "witness": [list(ans.witness[0]), list(ans.witness[1])]}
    human = f"{ans.tc}  [{ans.citation}]"
    if args.certificate:
        cert = alg.zcl_witness(ans.model, args.parity)
        record["zcl_certificate"] = {
            "value": cert.value,
            "certified": cert.certified,
            "indices": list(cert.indices),
            "surviving_terms": cert.surviving_terms,
        }
        human += f"\nzcl >= {cert.value} {'certified' if cert.certified else 'NOT certified'}"
    _emit(args, human, record)
    return EXIT_OK

def cmd_z(args) -> int:
    X = _model_from_args(args)
    z, (J, K) = z_invariant(X)
    w = (to_indices(J), to_indices(K))
    record = {"n": X.n, "z": z, "d": d_invariant(X), "witness": [list(w[0]), list(w[1])]}
    _emit(args, f"z={z} d={d_invariant(X)} witness {_witness(w)}", record)
    return EXIT_OK

def _planner(args, X):
    cls = SafePlanner if args.planner == "safe" else LiteralPlanner
    return cls(X, args.parity, args.tau_anti, args.tau_cell)

def cmd_plan(args) -> int:
    m = sph.ambient_dim(args.parity, args.k)
    X, x, y = load_plan_query(args.query, m)
    if args.planner == "full":
        X = full_simplex(X.n)
    res = _planner(args, X).plan(x, y)
    ts, pts = res.path.sample(args.path_samples)
    if args.format == "json":
        record = {"planner": res.kind, "domain": res.domain.to_json(), "path": path_records(ts, pts)}
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(f"# planner {res.kind}")
        print(f"# domain {res.domain.label()}")
        print(f"# stratum {res.domain.stratum}")
        sys.stdout.write(path_csv(ts, pts))
    return EXIT_OK

def cmd_verify(args) -> int:
    X = _model_from_args(args)
    if args.planner == "full":
        X = full_simplex(X.n)
    planner = _planner(args, X)
    common = dict(samples=args.samples, seed=args.seed, k=args.k, jobs=args.jobs)
    part = verify_partition(planner, **common)
    cont = verify_containment(planner, times=args.path_samples, **common)
    ends = verify_endpoints_continuity(planner, times=args.path_samples, **{**common, "samples": min(args.samples, 1000)})
    ok = part.passed and cont.passed and ends.max_endpoint_error <= 1e-9
    record = {
        "planner": planner.kind,
        "passed": ok,
        "partition": part.to_json(),
        "containment": cont.to_json(),
        "endpoints_continuity": ends.to_json(),
    }
    lines = [
        f"planner {planner.kind} on n={X.n}, parity {args.parity}, {args.samples} samples, seed {args.seed}",
        f"partition: strata {dict(sorted(part.strata.items()))}, ambiguous {len(part.ambiguous)}, "
        f"below floor {part.stratum_floor}: {len(part.bound_violations)}",
        f"containment: {cont.violating_pairs} violating pairs",
    ]
    for v in cont.violations[:5]:
        lines.append(f"  sample {v['sample']} t={v['t']:.4f} support {v['support']} is not a face")
    lines.append(
        f"endpoints: max error {ends.max_endpoint_error:.2e}, sphere {ends.max_sphere_error:.2e}, "
        f"Lipschitz {ends.lipschitz_max:.3f} over {ends.lipschitz_pairs} pairs"
    )
    lines.append("PASS" if ok else "FAIL")
    _emit(args, "\n".join(lines), record)
    return EXIT_OK if ok else EXIT_VERIFY

def cmd_algebra(args) -> int:
    if args.action == "expand":
        u = alg.shuffle_expansion(args.z, args.degree)
        _emit(args, alg.format_tensor(u), {"z": args.z, "degree": args.degree, "terms": alg.tensor_records(u)})
        return EXIT_OK
    X = _model_from_args(args)
    if args.action == "poincare":
        return _poincare(args, X)
    cert = alg.zcl_witness(X, args.parity)
    name = "z" if args.parity == "odd" else "2d"
    record = {
        "parity": cert.parity,
        "value": cert.value,
        "certified": cert.certified,
        "indices": list(cert.indices),
        "witness": [list(cert.witness[0]), list(cert.witness[1])],
        "surviving_terms": cert.surviving_terms,
    }
    _emit(args, f"{name}={cert.value} {'certified' if cert.certified else 'not certified'}", record)
    return EXIT_OK if cert.certified else EXIT_VERIFY

def _poincare(args, X) -> int:
    coeffs = alg.poincare_polynomial(X)
    terms = [f"{c}" if k == 0 else f"{c}t" if k == 1 else f"{c}t^{k}" for k, c in enumerate(coeffs) if c]
    _emit(args, " + ".join(terms), {"coefficients": coeffs})
    return EXIT_OK

def cmd_poincare(args) -> int:
    return _poincare(args, _model_from_args(args))

def cmd_report(args) -> int:
    echo = None if args.format == "json" else print
    results = acceptance.run_all(echo)
    if args.format == "json":
        print(json.dumps([c.to_json() for c in results], indent=2))
    else:
        print(f"{sum(c.ok for c in results)}/{len(results)} criteria pass")
    if args.expect_pass and not all(c.ok for c in results):
        return EXIT_VERIFY
    return EXIT_OK

# -------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1, keeping 2 for verification failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default=_env("FORMAT", "human", str))
    common.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    common.add_argument("--jobs", type=int, default=_env("JOBS", 1, int))
    common.add_argument("--samples", type=int, default=_env("SAMPLES", 10_000, int))
    common.add_argument("--path-samples", type=int, default=_env("PATH_SAMPLES", 256, int))
    common.add_argument("--tau-anti", type=float, default=_env("TAU_ANTI", sph.TAU_ANTI, float))
    common.add_argument("--tau-cell", type=float, default=_env("TAU_CELL", TAU_CELL, float))
    common.add_argument("--parity", choices=("odd", "even"), default="odd")
    common.add_argument("--k", type=int, default=1, help="spheres have dimension 2k-1 (odd) or 2k (even)")

    source = _Parser(add_help=False)
    source.add_argument("--complex", metavar="FILE")
    source.add_argument("--graph", metavar="FILE", help="use the flag complex of this graph")

    p = _Parser(prog="toriplan", description="Topological complexity and motion planning on polyhedral products of spheres.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("tc", parents=[common, source], help="topological complexity")
    t.add_argument("--gp", nargs=2, type=int, metavar=("N", "L"), help="general position arrangement")
    t.add_argument("--generic", nargs=2, type=int, metavar=("N", "L"), help="generic central arrangement")
    t.add_argument("--redundant", nargs=3, type=int, metavar=("N", "L", "K"), help="redundant subspace arrangement")
    t.add_argument("--openstring", type=int, metavar="N", help="open string configuration space")
    t.add_argument("--certificate", action="store_true", help="also print the zero-divisor certificate")
    t.set_defaults(fn=cmd_tc)

    z = sub.add_parser("z", parents=[common, source], help="z and d invariants with a witness")
    z.set_defaults(fn=cmd_z)

    pl = sub.add_parser("plan", parents=[common], help="plan one motion")
    pl.add_argument("--query", required=True, metavar="FILE", help='JSON {"complex": ..., "x": ..., "y": ...}')
    pl.add_argument("--planner", choices=("literal", "safe", "full"), default="safe")
    pl.set_defaults(fn=cmd_plan)

    v = sub.add_parser("verify", parents=[common, source], help="sample the planner contract; exit 2 on failure")
    v.add_argument("--planner", choices=("literal", "safe", "full"), default="safe")
    v.set_defaults(fn=cmd_verify)

    a = sub.add_parser("algebra", parents=[common], help="exterior algebra computations")
    a_sub = a.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ex = a_sub.add_parser("expand", parents=[common], help="expand zbar_1 ... zbar_z in closed form")
    ex.add_argument("--z", type=int, required=True)
    ex.add_argument("--degree", type=int, default=1)
    a_sub.add_parser("witness", parents=[common, source], help="zero-divisor lower-bound certificate")
    a_sub.add_parser("poincare", parents=[common, source], help="face-count polynomial")
    a.set_defaults(fn=cmd_algebra)

    pc = sub.add_parser("poincare", parents=[common, source], help="face-count polynomial")
    pc.set_defaults(fn=cmd_poincare)

    r = sub.add_parser("report", parents=[common], help="run the acceptance table")
    r.add_argument("--expect-pass", action="store_true", help="exit 2 unless every criterion passes")
    r.set_defaults(fn=cmd_report)
    return p

def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except (InputError, ComplexError, PlannerError, sph.SphereError, app.ApplicationError, alg.AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

if __name__ == "__main__":
    sys.exit(main())
