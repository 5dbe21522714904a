"""Command-line interface.

Exit status: 0 success, 1 identity or nonnegativity failed, 2 input error,
3 internal assertion failure. The worker count for ``corpus`` is read from
``GORENSTEIN_FANS_WORKERS`` (default: number of logical processors).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import families, io
from .cone import Cone
from .decomposition import (
    DecompositionReport,
    c_polynomials,
    h_V,
    local_c,
    verify_identity,
    verify_polytope_formula,
    verify_subdivision_invariance,
)
from .ehrhart import box_points, box_polynomial, delta_of_complex, delta_of_cone
from .errors import GorensteinFansError, InputError, InternalAssertion
from .fan import Fan, is_complete, single_cone_fan
from .polynomial import format_polynomial
from .subdivision import ORDERS, crepant_subdivide

WORKERS_ENV = "GORENSTEIN_FANS_WORKERS"

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise InputError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise InputError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1


def _rays(rays) -> str:
    return " ".join("(" + ",".join(str(x) for x in r) + ")" for r in rays) or "-"


def format_report(report: DecompositionReport, fmt: str = "human") -> str:
    if fmt == "machine":
        return io.dump_report(report)
    if fmt != "human":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [
        f"{report.kind} {report.fan_hash}  ambient dim {report.ambient_dim}  cones {len(report.records)}",
        f"delta = {format_polynomial(report.delta)}  (denominator (1-t)^{report.denominator_power})",
        "",
    ]
    h_label = "g" if report.kind == "polytope" else "h_V"
    for r in sorted(report.records, key=lambda r: r.id):
        lines.append(f"cone {r.id}  dim {r.dim}  rays {_rays(r.rays)}")
        lines.append(f"    c = {format_polynomial(r.c)}    {h_label} = {format_polynomial(r.h)}")
    lines += [
        "",
        f"lhs = {format_polynomial(report.lhs)}",
        f"rhs = {format_polynomial(report.rhs)}",
        f"identity: {'holds' if report.identity_holds else 'FAILS'}",
    ]
    if report.nonnegative:
        lines.append("nonnegativity: holds")
    else:
        lines.append("nonnegativity: FAILS at cones " + ", ".join(map(str, report.negative_witnesses)))
    if report.timing:
        lines.append("timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in report.timing.items()))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# input


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _is_polytope(text: str) -> bool:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return False
    return isinstance(doc, dict) and "vertices" in doc


def load(path: str, *, validate: bool = True) -> Fan:
    """A fan file, or a polytope file read as the fan of faces of its cone."""
    text = _read(path)
    if _is_polytope(text):
        return single_cone_fan(io.parse_polytope(text))
    return io.parse_fan(text, validate=validate)


def load_cone(path: str) -> Cone:
    text = _read(path)
    if not _is_polytope(text):
        raise InputError(f"{path} is not a polytope file")
    return io.parse_polytope(text)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _selected(fan: Fan, cone: int | None) -> list[int]:
    if cone is None:
        return sorted(fan.cones)
    fan.cone(cone)
    return [cone]


def _poly_table(fan: Fan, polys: dict, fmt: str, name: str) -> str:
    if fmt == "machine":
        doc = {str(i): [str(c) for c in p.coeffs] for i, p in sorted(polys.items())}
        return json.dumps({name: doc}, indent=2) + "\n"
    rows = []
    for i, p in sorted(polys.items()):
        c = fan.cones[i]
        rows.append(f"cone {i}  dim {c.dim}  rays {_rays(c.rays)}  {name} = {format_polynomial(p)}")
    return "\n".join(rows) + "\n"


# --------------------------------------------------------------------------
# verbs


def cmd_validate(args) -> int:
    fan = load(args.input)
    fan.k_function
    complete = is_complete(fan)
    f = ", ".join(map(str, fan.f_vector()))
    text = (
        f"valid Gorenstein fan in R^{fan.ambient_dim}\n"
        f"f-vector ({f})\n"
        f"simplicial {'yes' if fan.is_simplicial else 'no'}\n"
        f"complete {'yes' if complete else 'no'}\n"
    )
    _emit(text, args.out)
    return EXIT_OK


def cmd_delta(args) -> int:
    fan = load(args.input)
    fan.k_function
    if args.cone is not None:
        d = delta_of_cone(fan.cone(args.cone))
    elif len(fan.max_cone_ids) == 1 and not is_complete(fan):
        d = delta_of_cone(fan.cones[fan.max_cone_ids[0]])
    else:
        d = delta_of_complex(fan)
    if args.format == "machine":
        text = json.dumps({"delta": [str(c) for c in d.numerator.coeffs], "denominator_power": d.denominator_power}) + "\n"
    else:
        text = format_polynomial(d.numerator) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_box(args) -> int:
    fan = load(args.input)
    fan.k_function
    cone = fan.cone(args.cone) if args.cone is not None else fan.cones[fan.max_cone_ids[0]]
    pts = box_points(cone)
    if args.format == "machine":
        doc = {
            "points": [{"point": list(p.point), "degree": p.degree, "alpha": [str(a) for a in p.alpha]} for p in pts],
            "box_polynomial": [str(c) for c in box_polynomial(cone).coeffs],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"{_rays([p.point])}  degree {p.degree}{'  interior' if p.is_interior else ''}" for p in pts]
        lines.append(f"box polynomial = {format_polynomial(box_polynomial(cone))}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_cpoly(args) -> int:
    fan = load(args.input)
    fan.k_function
    ids = _selected(fan, args.cone)
    polys = c_polynomials(fan) if args.cone is None else {args.cone: local_c(fan.cones[args.cone])}
    _emit(_poly_table(fan, {i: polys[i] for i in ids}, args.format, "c"), args.out)
    return EXIT_OK


def cmd_hpoly(args) -> int:
    fan = load(args.input)
    fan.k_function
    ids = _selected(fan, args.cone)
    if not is_complete(fan):
        raise InputError("h_V needs a complete fan")
    polys = {i: h_V(fan, i, check_complete=False) for i in ids}
    _emit(_poly_table(fan, polys, args.format, "h_V"), args.out)
    return EXIT_OK


def _verdict(report: DecompositionReport) -> int:
    return EXIT_OK if report.verified else EXIT_FALSIFIED


def cmd_identity(args) -> int:
    report = verify_identity(load(args.input))
    _emit(format_report(report, args.format), args.out)
    return _verdict(report)


def cmd_polytope_check(args) -> int:
    report = verify_polytope_formula(load_cone(args.input))
    _emit(format_report(report, args.format), args.out)
    return _verdict(report)


def cmd_subdivide(args) -> int:
    fan = load(args.input)
    sub = crepant_subdivide(fan, order=args.order, seed=args.seed)
    _emit(io.dump_fan(sub), args.out)
    f = ", ".join(map(str, sub.f_vector()))
    print(f"subdivided: f-vector ({f})", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    fan = families.generate(args.family, args.dim, args.seed)
    _emit(io.dump_fan(fan), args.out)
    return EXIT_OK


def _corpus_job(job):
    family, dim, seed = job
    fan = families.generate(family, dim, seed)
    sub = verify_subdivision_invariance(fan, orders=("deep", "lex"))
    rep = sub.original
    return {
        "family": family,
        "dim": dim,
        "seed": seed,
        "fan_hash": rep.fan_hash,
        "f_vector": list(fan.f_vector()),
        "delta": [str(c) for c in rep.delta.coeffs],
        "identity": rep.identity_holds,
        "nonnegative": rep.nonnegative,
        "subdivision_invariant": sub.delta_invariant and all(r.verified for _, _, r in sub.refined),
        "verified": sub.verified,
    }


def corpus_jobs(family: str, max_dim: int, count: int, seed: int) -> list[tuple]:
    if family == "random":
        return [("random", max_dim, seed + k) for k in range(count)]
    return [(family, d, seed) for d in range(2, max_dim + 1)]


def cmd_corpus(args) -> int:
    jobs = corpus_jobs(args.family, args.max_dim, args.count, args.seed)
    workers = min(worker_count(), len(jobs)) or 1
    if workers == 1:
        rows = [_corpus_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_corpus_job, jobs))
    ok = all(r["verified"] for r in rows)
    if args.format == "machine":
        text = json.dumps({"family": args.family, "runs": rows, "verified": ok}, indent=2) + "\n"
    else:
        lines = []
        for r in rows:
            delta = format_polynomial(io._unpoly(r["delta"], "delta"))
            status = "ok" if r["verified"] else "FAILED"
            lines.append(f"{r['family']} dim {r['dim']} seed {r['seed']}  f ({', '.join(map(str, r['f_vector']))})  delta {delta}  {status}")
        lines.append(f"{sum(r['verified'] for r in rows)}/{len(rows)} verified")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FALSIFIED


# --------------------------------------------------------------------------


def _cone_id(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cone id must be an integer, got {text!r}") from None
    return value


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2^64)")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gorenstein-fans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, func, help, input=True):
        p = sub.add_parser(name, help=help)
        if input:
            p.add_argument("input", help="fan or polytope file ('-' for stdin)")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        p.set_defaults(func=func)
        return p

    verb("validate", cmd_validate, "check a fan file: cones, fan axioms, Gorenstein degree function")
    verb("delta", cmd_delta, "delta polynomial of the fan or of one cone").add_argument("--cone", type=_cone_id)
    verb("box", cmd_box, "box points of a simplicial cone").add_argument("--cone", type=_cone_id)
    verb("cpoly", cmd_cpoly, "local polynomials c").add_argument("--cone", type=_cone_id)
    verb("hpoly", cmd_hpoly, "star polynomials h_V of a complete fan").add_argument("--cone", type=_cone_id)
    verb("identity", cmd_identity, "verify the decomposition identity and nonnegativity")
    verb("polytope-check", cmd_polytope_check, "verify the single-polytope formula")
    p = verb("subdivide", cmd_subdivide, "crepant simplicial subdivision, written as a fan file")
    p.add_argument("--order", choices=ORDERS, default="deep")
    p.add_argument("--seed", type=_u64, default=None)
    p = verb("gen", cmd_gen, "write a built-in fan", input=False)
    p.add_argument("family", choices=families.FAMILIES)
    p.add_argument("--dim", type=_positive, default=3)
    p.add_argument("--seed", type=_u64, default=0)
    p = verb("corpus", cmd_corpus, "verify identity and subdivision invariance over a family", input=False)
    p.add_argument("family", choices=families.FAMILIES)
    p.add_argument("--max-dim", type=_positive, default=3)
    p.add_argument("--count", type=_positive, default=10)
    p.add_argument("--seed", type=_u64, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalAssertion as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GorensteinFansError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
