"""Command line front end: ``bpbkit {correct,generate,sweep,radius,demo-counterexample,verify}``.

Exit status: 0 when every postcondition verifies, 1 on a verification
failure, 2 on hypothesis, parse or domain errors.
"""

import argparse
import csv
import io as _io
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .c0 import bpbp_nu_c0, numerical_radius_c0
from .construct import METHODS, first_threshold, second_threshold
from .errors import BPBError
from .generate import KINDS, generate
from .operators import bpbp_nu_l1, bpbp_nu_l1_modulus, numerical_radius_l1, operator_threshold
from .oracle import (
    counterexample_demo,
    nr_grid_oracle_l1,
    verify_c0_correction,
    verify_operator_correction,
    verify_pair_correction,
)
from .space import DEFAULT_TOL, FIELD_MODES

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
SWEEP_COLUMNS = [
    "kind", "method", "field_mode", "n", "eps", "trial",
    "threshold_first", "threshold_second", "threshold_operator", "threshold",
    "deficit", "dist_x", "dist_phi", "dist_T", "max_ratio", "passed",
]


def default_seed():
    return int(os.environ.get("BPBKIT_SEED", "0"))


def run_instance(inst, tol=DEFAULT_TOL, force=False, normalize=False, oracle_resolution=None, seed=0):
    """Run the correction matching ``inst.kind`` and verify it.

    Returns ``(correction, verdict)``.
    """
    if inst.kind == "pair-l1":
        if inst.method not in METHODS:
            raise BPBError(f"unknown method {inst.method!r}")
        out = METHODS[inst.method](inst.x, inst.phi, inst.eps, tol=tol, force=force)
        return out, verify_pair_correction(inst.x, inst.phi, inst.eps, out, tol=tol)
    if inst.kind == "operator-l1":
        fn = bpbp_nu_l1_modulus if inst.method == "modulus" else bpbp_nu_l1
        out = fn(inst.T, inst.x, inst.phi, inst.eps, tol=tol, force=force, normalize=normalize)
        verdict = verify_operator_correction(
            inst.T, inst.x, inst.phi, inst.eps, out, tol=tol, oracle_resolution=oracle_resolution, seed=seed
        )
        return out, verdict
    out = bpbp_nu_c0(inst.T, inst.x, inst.phi, inst.eps, tol=tol, force=force, normalize=normalize)
    return out, verify_c0_correction(inst.T, inst.x, inst.phi, inst.eps, out, tol=tol)


def build_report(inst, out, verdict, tol, seed, seconds):
    """Self-contained run report: inputs, outputs, witnesses and verdict."""
    rep = {
        "kind": inst.kind,
        "method": inst.method,
        "field_mode": inst.field_mode,
        "n": inst.n,
        "eps": io.fmt(inst.eps),
        "tol": io.fmt(tol),
        "seed": seed,
        "forced": bool(getattr(out, "forced", False) or getattr(getattr(out, "l1", None), "forced", False)),
        "inputs": io.instance_to_dict(inst),
    }
    if inst.kind == "pair-l1":
        rep["outputs"] = {"x0": io.enc_vector(out.x0), "phi0": io.enc_vector(out.phi0)}
        rep["distances"] = {"dist_x": io.fmt(out.dist_x), "dist_phi": io.fmt(out.dist_phi)}
        rep["attainment"] = io.enc_scalar(out.attainment)
        rep["witnesses"] = {
            "P": [int(j) for j in out.P],
            "A": None if out.A is None else [int(j) for j in out.A],
            "M": io.fmt(out.M),
            "r": io.fmt(out.r),
            "threshold": io.fmt(out.threshold),
            "realized": io.enc_scalar(out.realized),
        }
    else:
        l1 = out if inst.kind == "operator-l1" else out.l1
        if inst.kind == "operator-l1":
            rep["outputs"] = {"T0": io.enc_matrix(out.T0), "x0": io.enc_vector(out.x0), "phi0": io.enc_vector(out.phi0)}
            rep["distances"] = {"dist_T": io.fmt(out.dist_T), "dist_x": io.fmt(out.dist_x), "dist_phi": io.fmt(out.dist_phi)}
            rep["nu"] = io.fmt(out.nu_T0)
        else:
            rep["outputs"] = {"S": io.enc_matrix(out.S), "x0": io.enc_vector(out.x0), "phi0": io.enc_vector(out.phi0)}
            rep["distances"] = {"dist_T": io.fmt(out.dist_T), "dist_x": io.fmt(out.dist_x), "dist_phi": io.fmt(out.dist_phi)}
            rep["nu"] = io.fmt(out.nu_S)
        rep["attainment"] = io.enc_scalar(out.attainment)
        rep["witnesses"] = {
            "P": [int(j) for j in l1.P],
            "A": [int(j) for j in l1.A],
            "mu": io.fmt(l1.mu),
            "constants": {k: io.fmt(v) for k, v in l1.constants.items()},
            "a": [[int(rec.j)] + io.enc_scalar(rec.a) for rec in l1.column_log],
            "scale": io.fmt(l1.scale),
            "rotation": io.enc_scalar(l1.rotation),
            "realized": io.enc_scalar(l1.realized),
        }
    rep["verdict"] = {
        "passed": verdict.passed,
        "checks": {k: bool(v) for k, v in verdict.checks.items()},
    }
    rep["timing"] = {"seconds": seconds}
    return rep


def reverify_report(report, oracle_resolution=None):
    """Re-run the verifier on the arrays stored in ``report``."""
    inst = io.instance_from_dict(report["inputs"])
    out = io.report_correction(report)
    tol = float(report["tol"])
    if inst.kind == "pair-l1":
        return verify_pair_correction(inst.x, inst.phi, inst.eps, out, tol=tol)
    if inst.kind == "operator-l1":
        return verify_operator_correction(inst.T, inst.x, inst.phi, inst.eps, out, tol=tol,
                                          oracle_resolution=oracle_resolution)
    return verify_c0_correction(inst.T, inst.x, inst.phi, inst.eps, out, tol=tol)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_correct(args):
    inst = io.load_instance(args.instance)
    if args.method:
        inst.method = args.method
    t0 = time.perf_counter()
    out, verdict = run_instance(
        inst, tol=args.tol, force=args.force, normalize=args.normalize,
        oracle_resolution=args.resolution if args.oracle else None, seed=args.seed,
    )
    rep = build_report(inst, out, verdict, args.tol, args.seed, time.perf_counter() - t0)
    _write(io.dumps(rep), args.output)
    if not verdict.passed:
        print(f"verification failed: {', '.join(verdict.failures())}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_generate(args):
    delta = args.delta
    docs = []
    for i in range(args.count):
        rng = np.random.default_rng([args.seed, i])
        inst = generate(args.kind, args.n, args.eps, rng, delta=delta, field_mode=args.field,
                        method=args.method or ("first" if args.kind == "pair-l1" else "plain"),
                        rotate=args.rotate)
        inst.seed = [args.seed, i]
        docs.append(io.instance_to_dict(inst))
    if args.count == 1:
        _write(io.dumps(docs[0]), args.output)
    else:
        if args.output in (None, "-"):
            _write(io.dumps(docs), None)
        else:
            out = Path(args.output)
            out.mkdir(parents=True, exist_ok=True)
            for i, d in enumerate(docs):
                (out / f"instance_{i:04d}.json").write_text(io.dumps(d))
    return EXIT_OK


def sweep_rows(kind, n, eps_list, trials, seed, field_mode="complex", method=None):
    """One dict per ``(eps, trial)``; per-trial generators are seeded by ``(seed, eps index, trial)``."""
    method = method or ("first" if kind == "pair-l1" else "plain")
    rows = []
    for ei, eps in enumerate(eps_list):
        for trial in range(trials):
            rng = np.random.default_rng([seed, ei, trial])
            inst = generate(kind, n, eps, rng, field_mode=field_mode, method=method)
            out, verdict = run_instance(inst)
            if kind == "pair-l1":
                realized = out.realized
                dist_T = None
                threshold = out.threshold
            else:
                l1 = out if kind == "operator-l1" else out.l1
                realized = l1.realized
                dist_T = out.dist_T
                threshold = l1.threshold
            deficit = 1.0 - (abs(realized) if method == "first-modulus" else realized.real)
            dists = [out.dist_x, out.dist_phi] + ([dist_T] if dist_T is not None else [])
            rows.append({
                "kind": kind,
                "method": method,
                "field_mode": field_mode,
                "n": n,
                "eps": repr(float(eps)),
                "trial": trial,
                "threshold_first": repr(first_threshold(eps)),
                "threshold_second": repr(second_threshold(eps)),
                "threshold_operator": repr(operator_threshold(eps)),
                "threshold": repr(float(threshold)),
                "deficit": repr(float(deficit)),
                "dist_x": repr(float(out.dist_x)),
                "dist_phi": repr(float(out.dist_phi)),
                "dist_T": "" if dist_T is None else repr(float(dist_T)),
                "max_ratio": repr(float(max(dists) / eps)),
                "passed": int(verdict.passed),
            })
    return rows


def sweep_csv(kind, n, eps_list, trials, seed, field_mode="complex", method=None):
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in sweep_rows(kind, n, eps_list, trials, seed, field_mode, method):
        w.writerow(row)
    return buf.getvalue()


def cmd_sweep(args):
    eps_list = [float(e) for e in args.eps.split(",") if e.strip()]
    text = sweep_csv(args.kind, args.n, eps_list, args.trials, args.seed, args.field, args.method)
    _write(text, args.output)
    return EXIT_OK


def cmd_radius(args):
    inst = io.load_instance(args.instance)
    if inst.T is None:
        raise BPBError("instance has no operator T")
    if inst.kind == "operator-c0":
        nu = numerical_radius_c0(inst.T)
        T_l1 = inst.T.T
    else:
        nu = numerical_radius_l1(inst.T)
        T_l1 = inst.T
    result = {"kind": inst.kind, "nu": io.fmt(nu)}
    if args.oracle:
        rep = nr_grid_oracle_l1(T_l1, resolution=args.resolution, seed=args.seed)
        result["oracle"] = {
            "estimate": io.fmt(rep.estimate),
            "closed_form": io.fmt(rep.closed_form),
            "gap": io.fmt(rep.gap),
            "samples": rep.samples,
            "seed": rep.seed,
            "resolution": rep.resolution,
        }
    _write(io.dumps(result), None)
    return EXIT_OK


def cmd_demo(args):
    res = counterexample_demo(args.eps, samples=args.samples, seed=args.seed, n=args.n)
    print(f"shift operator on l1^{res.n}, eps = {res.eps:g}, {res.samples} sampled pairs, seed {res.seed}")
    print(f"max |phi(x)| observed: {res.max_abs_pair:.12g}")
    print(f"bound 2*eps: <= {res.bound:g}")
    return EXIT_OK if res.max_abs_pair <= res.bound + 1e-9 else EXIT_FAIL


def cmd_verify(args):
    report = io.load_json(args.report)
    verdict = reverify_report(report)
    for k, ok in verdict.checks.items():
        print(f"{'PASS' if ok else 'FAIL'}  {k}")
    return EXIT_OK if verdict.passed else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="bpbkit", description="Bishop-Phelps-Bollobas corrections on l1^n and c0^n.")
    sub = p.add_subparsers(dest="command", required=True)
    seed = default_seed()

    c = sub.add_parser("correct", help="run the correction for an instance file and write a report")
    c.add_argument("instance")
    c.add_argument("-o", "--output", default=None, help="report path (default stdout)")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--force", action="store_true", help="run even if the hypothesis fails")
    c.add_argument("--normalize", action="store_true", help="rescale T to numerical radius 1 first")
    c.add_argument("--method", choices=sorted(METHODS) + ["plain", "modulus"], default=None)
    c.add_argument("--oracle", action="store_true", help="also check nu(T0) with the grid oracle")
    c.add_argument("--resolution", type=int, default=10_000)
    c.add_argument("--seed", type=int, default=seed)
    c.set_defaults(func=cmd_correct)

    g = sub.add_parser("generate", help="emit instances satisfying a hypothesis by construction")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--delta", type=float, default=None, help="near-attainment slack (default: the threshold)")
    g.add_argument("--seed", type=int, default=seed)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--field", choices=FIELD_MODES, default="complex")
    g.add_argument("--method", choices=sorted(METHODS) + ["plain", "modulus"], default=None)
    g.add_argument("--rotate", action="store_true", help="multiply T by a random phase")
    g.add_argument("-o", "--output", default=None, help="file (count 1) or directory")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("sweep", help="eps sweep; writes CSV")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", help="comma separated")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=seed)
    s.add_argument("--field", choices=FIELD_MODES, default="complex")
    s.add_argument("--method", choices=sorted(METHODS) + ["plain", "modulus"], default=None)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("radius", help="numerical radius of the operator in an instance")
    r.add_argument("instance")
    r.add_argument("--oracle", action="store_true")
    r.add_argument("--resolution", type=int, default=10_000)
    r.add_argument("--seed", type=int, default=seed)
    r.set_defaults(func=cmd_radius)

    d = sub.add_parser("demo-counterexample", help="pairs near (e1, e2*) for the shift are never norming")
    d.add_argument("--eps", type=float, required=True)
    d.add_argument("--samples", type=int, default=10_000)
    d.add_argument("--seed", type=int, default=seed)
    d.add_argument("--n", type=int, default=3)
    d.set_defaults(func=cmd_demo)

    v = sub.add_parser("verify", help="re-verify a report written by 'correct'")
    v.add_argument("report")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BPBError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
