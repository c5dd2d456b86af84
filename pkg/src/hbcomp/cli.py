"""Command line front end.

    hbcomp analyze problem.json [--scan] [--trunc K] [--out report.json]
    hbcomp scan problem.json --grid-depth 10 --out grid.csv
    hbcomp gallery --filter hs --tol quad_tol=1e-4

Exit status: 0 when the pipeline completes (whatever the verdict), 2 on
input or validation errors, 1 when gallery cases fail.
"""

import argparse
import json
import sys
from dataclasses import replace

from . import __version__
from .config import parse_overrides, tolerances, use_tolerances
from .errors import HbcompError, SchemaError
from .report import build_report, dumps, load_problem, run, toolkit_info

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _read_problem(path):
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec(args, **need):
    spec = load_problem(_read_problem(args.problem), **need)
    if args.grid_depth is not None:
        if args.grid_depth < 1:
            raise SchemaError("--grid-depth must be positive")
        spec.grid = replace(spec.grid, depth=args.grid_depth)
    if args.trunc is not None:
        if not 1 <= args.trunc <= 512:
            raise SchemaError("--trunc must lie in [1, 512]")
        spec.trunc = args.trunc
    return spec


def _mate(spec):
    from .verdict import build_mate

    return build_mate(spec.b, spec.a)


def cmd_mate(args):
    from .mate import pythagorean_residual

    spec = _spec(args, need_phi=False)
    m = _mate(spec)
    data = {"toolkit": toolkit_info(), "tolerances": tolerances().as_dict(), "mate": m.to_json()}
    data["pythagorean_residual"] = pythagorean_residual(m)
    return dumps(data)


def cmd_hb_membership(args):
    from .hbspace import decompose

    spec = _spec(args, need_phi=False, need_f=True)
    m = _mate(spec)
    data = {"toolkit": toolkit_info(), "tolerances": tolerances().as_dict(), "mate": m.to_json()}
    data["f"] = spec.f.to_json()
    data["membership"] = decompose(spec.f, m).to_json()
    return dumps(data)


def cmd_u(args):
    from .symbolkit import admit_symbol, profile
    from .ubuild import build_u

    spec = _spec(args)
    m = _mate(spec)
    adm = admit_symbol(spec.phi)
    if not adm:
        from .errors import NotASelfMap

        raise NotASelfMap(f"phi is not a self-map of the disk: {adm.reason}")
    data = {"toolkit": toolkit_info(), "tolerances": tolerances().as_dict(), "mate": m.to_json()}
    if m.N == 0:
        data["u"] = None
        data["note"] = "a has no zeros on the circle; u is not defined"
        return dumps(data)
    prof = profile(spec.phi, m)
    data["profile"] = prof.to_json()
    data["u"] = build_u(prof, m).to_json()
    data["violations"] = list(prof.violations)
    return dumps(data)


def cmd_analyze(args):
    spec = _spec(args)
    trunc = spec.trunc if (args.trunc is not None or "trunc" in spec.raw) else None
    return dumps(run(spec, scan=args.scan, trunc=trunc))


def cmd_scan(args):
    from .verdict import analyze

    spec = _spec(args)
    res = analyze(spec.phi, b=spec.b, a=spec.a, scan=True, grid=spec.grid)
    if res.verdict.scans is None:
        raise SchemaError("no scan: u is not in H^2 (operator unbounded) or H(b) = H^2")
    if args.json:
        return dumps(build_report(spec, res))
    return res.verdict.scans.to_csv()


def cmd_matrix(args):
    from .opmatrix import hb_cphi_matrix, truncate_weighted
    from .verdict import Tri, analyze

    spec = _spec(args)
    res = analyze(spec.phi, b=spec.b, a=spec.a)
    if res.verdict.bounded is not Tri.YES:
        raise SchemaError(f"matrix needs a bounded operator; verdict is {res.verdict.bounded.value}")
    if args.basis == "hb":
        op = hb_cphi_matrix(res.mate, res.profile, spec.trunc)
        label = "C_phi on H(b)"
    else:
        op = truncate_weighted(res.upack.u, spec.phi, spec.trunc)
        label = "W_{u,phi} on H^2"
    data = {"toolkit": toolkit_info(), "tolerances": tolerances().as_dict(), "operator": label}
    data.update(op.to_json() if not args.summary_only else op.summary())
    return dumps(data)


def cmd_gallery(args):
    from .gallery import format_table, gallery

    results = gallery(args.filter or None)
    text = format_table(results) + "\n"
    return text, (EXIT_OK if all(r.passed for r in results) else EXIT_FAIL)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-depth", type=int, metavar="q", help="radii 1-2^-q, q = 1..q (default 12)")
    common.add_argument("--trunc", type=int, metavar="K", help="truncation size (default 64)")
    common.add_argument("--tol", action="append", default=[], metavar="name=value", help="tolerance override")
    common.add_argument("--out", metavar="path", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="hbcomp", description="Composition operators on H(b) with rational data")
    p.add_argument("--version", action="version", version=f"hbcomp {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, problem=True):
        s = sub.add_parser(name, parents=[common], help=help_)
        if problem:
            s.add_argument("problem", help="problem JSON file ('-' for stdin)")
        s.set_defaults(func=func)
        return s

    add("mate", cmd_mate, "pythagorean mate and boundary zeros")
    add("hb-membership", cmd_hb_membership, "decompose f in H(b)")
    add("u", cmd_u, "symbol profile and auxiliary function u")
    s = add("analyze", cmd_analyze, "full verdict report")
    s.add_argument("--scan", action="store_true", help="attach Carleson scan evidence")
    s = add("scan", cmd_scan, "Carleson grid as CSV (re_w, im_w, I_w)")
    s.add_argument("--json", action="store_true", help="full report with scan data instead of CSV")
    s = add("matrix", cmd_matrix, "truncated operator matrix")
    s.add_argument("--basis", choices=("h2", "hb"), default="h2", help="h2: W_{u,phi}; hb: C_phi in the split basis")
    s.add_argument("--summary-only", action="store_true", help="omit the matrix entries")
    s = add("gallery", cmd_gallery, "run the regression gallery", problem=False)
    s.add_argument("--filter", action="append", metavar="TAG", help="only cases with this tag")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        overrides = parse_overrides(args.tol)
    except ValueError as exc:
        print(f"hbcomp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        file_tol = {}
        if getattr(args, "problem", None) and args.problem != "-":
            try:
                file_tol = load_problem(_read_problem(args.problem), need_phi=False,
                                        need_f=False).tol
            except HbcompError:
                file_tol = {}  # reported by the command itself
        with use_tolerances(**{**file_tol, **overrides}):
            result = args.func(args)
        text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
        _emit(text, args.out)
        return code
    except HbcompError as exc:
        print(f"hbcomp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
