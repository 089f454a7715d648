"""Command-line front end.

Exit codes: 0 success (or Parallel), 1 NotParallel, 2 bad input,
3 numerical failure, 4 demo self-test mismatch.
"""

import argparse
import datetime
import json
import math
import sys

import numpy as np

from . import __version__
from .files import (
    MatrixFileError, boundary_csv, complex_pair, fmt, read_matrix, sig, vector_pairs,
)
from .matcore import ConvergenceError, DimensionError, operator_norm, rank_one
from .numrange import RADIUS_TOL, numerical_radius, range_boundary
from .oracle import brute_pair_max
from .parallel import (
    DECIDE_REL, WIT_TOL, block_operator, norm_parallel, omega_parallel,
)

EXIT_OK = 0
EXIT_NOT_PARALLEL = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_SELFTEST = 4


class InputError(Exception):
    pass


def _load(path, label):
    try:
        M, name, digest = read_matrix(path)
    except OSError as exc:
        raise InputError(f"{label}: cannot read {path}: {exc.strerror or exc}") from exc
    except MatrixFileError as exc:
        raise InputError(f"{label} ({path}): {exc}") from exc
    return M, {"path": str(path), "name": name, "sha256": digest}


def _load_pair(a_path, b_path):
    A, a_info = _load(a_path, "A")
    B, b_info = _load(b_path, "B")
    if A.shape != B.shape:
        raise InputError(f"dimension mismatch: A is {A.shape[0]}x{A.shape[0]}, "
                         f"B is {B.shape[0]}x{B.shape[0]}")
    return A, B, {"A": a_info, "B": b_info}


def _document(command, inputs, tolerances, result, seed=None):
    return {
        "tool": "numrad",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "tolerances": tolerances,
        "seed": seed,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "result": result,
    }


def _text_value(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(v)
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, list):
        if len(v) == 2 and all(isinstance(t, float) for t in v):
            re, im = v
            return f"{fmt(re)}{'-' if math.copysign(1, im) < 0 else '+'}{fmt(abs(im))}i"
        return "[" + ", ".join(_text_value(t) for t in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(t)}" for k, t in v.items()) + "}"
    return str(v)


def _emit(doc, as_json, out):
    if as_json:
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    out.write(f"# {doc['tool']} {doc['version']} {doc['command']}  {doc['timestamp']}\n")
    for label, info in doc["inputs"].items():
        out.write(f"# input {label}: {info['path']} sha256={info['sha256']}\n")
    out.write(f"# tolerances: {_text_value(doc['tolerances'])}\n")
    if doc["seed"] is not None:
        out.write(f"# seed: {doc['seed']}\n")
    for k, v in doc["result"].items():
        out.write(f"{k}: {_text_value(v)}\n")


def _radius_fields(r):
    return {
        "omega": sig(r.omega),
        "theta_star": sig(r.theta_star),
        "witness": vector_pairs(r.witness),
        "witness_value": complex_pair(r.witness_value),
        "residual": sig(r.residual),
    }


def _certificate_fields(cert):
    labels = ("omega_a", "omega_b") if cert.kind == "omega" else ("norm_a", "norm_b")
    res = cert.witness_residuals
    return {
        "kind": cert.kind,
        "decision": cert.decision.value,
        "lambda_phase": sig(cert.phase),
        "lambda_star": complex_pair(cert.lambda_star),
        "achieved": sig(cert.achieved),
        "target": sig(cert.target),
        "gap": sig(cert.gap),
        "decide_tol": sig(cert.decide_tol),
        labels[0]: sig(cert.norm_a),
        labels[1]: sig(cert.norm_b),
        "witness": vector_pairs(cert.witness),
        "witness_ok": res.ok,
        "witness_product_residual": sig(res.product_residual),
        "witness_a_residual": sig(res.a_residual),
        "witness_b_residual": sig(res.b_residual),
    }


def cmd_radius(args, out):
    A, info = _load(args.matrix, "matrix")
    r = numerical_radius(A, args.tol)
    _emit(_document("radius", {"matrix": info}, {"tol": args.tol}, _radius_fields(r)),
          args.json, out)
    return EXIT_OK


def cmd_range(args, out):
    if args.samples < 4:
        raise InputError("--samples must be >= 4")
    A, _ = _load(args.matrix, "matrix")
    text = boundary_csv(range_boundary(A, args.samples))
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    else:
        out.write(text)
    return EXIT_OK


def _parse_oracle(text):
    try:
        count, seed = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected COUNT,SEED") from None
    if count < 1:
        raise argparse.ArgumentTypeError("COUNT must be >= 1")
    return count, seed


def cmd_wparallel(args, out):
    A, B, inputs = _load_pair(args.a, args.b)
    d = omega_parallel(A, B, rel_tol=args.tol)
    result = _certificate_fields(d.certificate)
    seed = None
    if args.oracle:
        count, seed = args.oracle
        rep = brute_pair_max(A, B, count, seed)
        product = d.certificate.norm_a * d.certificate.norm_b
        result.update({
            "oracle_count": count,
            "oracle_pair_max": sig(rep.best_value),
            "oracle_target_product": sig(product),
            "oracle_shortfall": sig(product - rep.best_value),
        })
    _emit(_document("wparallel", inputs,
                    {"rel_tol": args.tol, "wit_tol": WIT_TOL, "radius_tol": RADIUS_TOL},
                    result, seed), args.json, out)
    return EXIT_OK if d.parallel else EXIT_NOT_PARALLEL


def cmd_nparallel(args, out):
    A, B, inputs = _load_pair(args.a, args.b)
    d = norm_parallel(A, B, rel_tol=args.tol)
    cert = d.certificate
    result = _certificate_fields(cert)
    if d.parallel:
        x = cert.witness
        result["witness_inner_product"] = sig(abs(np.vdot(B @ x, A @ x)))
        result["norm_product"] = sig(cert.norm_a * cert.norm_b)
    _emit(_document("nparallel", inputs, {"rel_tol": args.tol, "wit_tol": WIT_TOL},
                    result), args.json, out)
    return EXIT_OK if d.parallel else EXIT_NOT_PARALLEL


def cmd_block(args, out):
    A, B, inputs = _load_pair(args.a, args.b)
    r = numerical_radius(block_operator(A, B, args.theta))
    na, nb = operator_norm(A)[0], operator_norm(B)[0]
    result = {
        "theta": sig(args.theta),
        "block_omega": sig(r.omega),
        "half_norm_sum": sig((na + nb) / 2),
        "norm_a": sig(na),
        "norm_b": sig(nb),
        "difference": sig(r.omega - (na + nb) / 2),
    }
    _emit(_document("block", inputs, {"radius_tol": RADIUS_TOL}, result), args.json, out)
    return EXIT_OK


DEMO_TOL = 1e-8


def demo_rows():
    """Worked example: S = diag(1, -1), identity I, nilpotent R = e1 (x) e2."""
    S = np.diag([1.0, -1.0]).astype(complex)
    I = np.eye(2, dtype=complex)
    e1, e2 = np.eye(2, dtype=complex)
    R = rank_one(e1, e2)
    si = omega_parallel(S, I)
    ir = omega_parallel(I, R)
    sr = omega_parallel(S, R)
    ti = omega_parallel(R, I)
    return [
        ("w(S + I)", numerical_radius(S + I).omega, 2.0),
        ("w(I + R)", numerical_radius(I + R).omega, 1.5),
        ("max_lam w(S + lam R)", sr.certificate.achieved, math.sqrt(5) / 2),
        ("(S, I) decision", si.value.value, "Parallel"),
        ("(I, R) decision", ir.value.value, "Parallel"),
        ("(S, R) decision", sr.value.value, "NotParallel"),
        ("(S, R) gap", sr.certificate.gap, 1.5 - math.sqrt(5) / 2),
        ("(T, I) achieved, T = R", ti.certificate.achieved, 1.5),
        ("(T, I) decision", ti.value.value, "Parallel"),
    ]


def cmd_demo(args, out):
    rows = demo_rows()
    failed = 0
    out.write(f"{'quantity':<26}{'computed':>18}{'expected':>18}  status\n")
    for label, got, want in rows:
        if isinstance(want, str):
            ok = got == want
            g, w = got, want
        else:
            ok = abs(got - want) <= DEMO_TOL
            g, w = fmt(got), fmt(want)
        failed += not ok
        out.write(f"{label:<26}{g:>18}{w:>18}  {'ok' if ok else 'MISMATCH'}\n")
    out.write("note: for T = R, w(T) + w(I) = 1/2 + 1 = 3/2; the value 5/2 quoted for this pair "
              "in some sources is a misprint.\n")
    out.write(f"result: {'all values reproduced' if not failed else f'{failed} mismatches'}\n")
    return EXIT_OK if not failed else EXIT_SELFTEST


def build_parser():
    p = argparse.ArgumentParser(prog="numrad", description=(
        "Numerical ranges, numerical radii, and numerical-radius / norm parallelism "
        "of complex matrices."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="json", action="store_true", help="JSON certificate")
        g.add_argument("--text", dest="json", action="store_false", help="key: value lines (default)")

    sp = sub.add_parser("radius", help="numerical radius with witness vector")
    sp.add_argument("matrix")
    sp.add_argument("--tol", type=float, default=RADIUS_TOL, help="witness residual tolerance")
    output_flags(sp)
    sp.set_defaults(func=cmd_radius)

    sp = sub.add_parser("range", help="sample the numerical range boundary to CSV")
    sp.add_argument("matrix")
    sp.add_argument("--samples", type=int, default=360)
    sp.add_argument("--out", help="CSV path (default: stdout)")
    sp.set_defaults(func=cmd_range)

    for name, func, help_ in (("wparallel", cmd_wparallel, "numerical-radius parallelism"),
                              ("nparallel", cmd_nparallel, "norm parallelism")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("a")
        sp.add_argument("b")
        sp.add_argument("--tol", type=float, default=DECIDE_REL,
                        help="relative decision tolerance (default 1e-8)")
        if name == "wparallel":
            sp.add_argument("--oracle", type=_parse_oracle, metavar="COUNT,SEED",
                            help="cross-check with a brute-force sphere search")
        output_flags(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("block", help="numerical radius of the 2x2 block operator")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--theta", type=float, default=0.0)
    output_flags(sp)
    sp.set_defaults(func=cmd_block)

    sp = sub.add_parser("demo", help="reproduce the worked nontransitivity example")
    sp.set_defaults(func=cmd_demo)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    tol = getattr(args, "tol", None)
    if tol is not None and not (tol > 0 and math.isfinite(tol)):
        print("numrad: error: --tol must be a positive finite number", file=sys.stderr)
        return EXIT_INPUT
    if not math.isfinite(getattr(args, "theta", 0.0)):
        print("numrad: error: --theta must be finite", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, DimensionError) as exc:
        print(f"numrad: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numrad: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
