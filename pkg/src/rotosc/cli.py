"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import metadata
from pathlib import Path

import numpy as np

from rotosc.eigenfunction import WaveForm, max_relative_residual
from rotosc.errors import NumericalError
from rotosc.model import ConversionContext, a_from_alpha, etilde_from_w
from rotosc.oracle import FdGrid, fd_spectrum
from rotosc.ritz import DEFAULT_SIZE, ritz_spectrum
from rotosc.sweep import (
    FIGURE_DEFAULTS,
    build_dataset,
    hellmann_feynman_samples,
    lambda_report,
    monotonicity_violations,
    verify_intersections,
    write_dataset,
    write_plot_script,
)
from rotosc.truncation import (
    CSV_HEADER,
    exact_solutions,
    root_certificate,
    solution_rows,
    truncation_energy,
    truncation_roots,
    write_solutions_csv,
)
from rotosc.export import csv_text

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3
OUTPUT_ENV = "ROTOSC_OUTPUT_DIR"

TOLERANCES = {
    "intersection": 1e-5,
    "lambda_point": 1e-10,
    "lambda_integer": 1e-6,
    "hellmann_feynman": 1e-4,
    "residual": 1e-10,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotosc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, out_dir=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if out_dir:
            p.add_argument("--out", type=Path, help=f"output directory (env {OUTPUT_ENV})")
            p.add_argument("--seed-manifest", type=Path,
                           help="manifest path (default: <out>/manifest.json)")
        return p

    p = common(sub.add_parser("roots", help="truncation couplings a for order n"))
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--l", type=_nonneg, default=0)

    p = common(sub.add_parser("exact", help="exact solutions for order n as CSV"))
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--l", type=_nonneg, default=0)
    p.add_argument("--output", type=Path, help="CSV file (default: stdout)")

    def coupling(p):
        p.add_argument("--l", type=_nonneg, default=0)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--a", type=float, help="coupling a")
        g.add_argument("--alpha", type=float,
                       help="interaction parameter; sets a = sqrt(2/alpha) and adds E~ columns")
        p.add_argument("--physical", action="store_true", help="reject a <= 0")

    p = common(sub.add_parser("ritz", help="Ritz eigenvalues at one coupling"))
    coupling(p)
    p.add_argument("--size", type=_positive, default=DEFAULT_SIZE)
    p.add_argument("--count", type=_positive, help="number of eigenvalues to print")

    p = common(sub.add_parser("oracle", help="finite-difference eigenvalues"))
    coupling(p)
    p.add_argument("--count", type=_positive, default=4)
    p.add_argument("--points", type=_positive, default=4000)
    p.add_argument("--q-max", type=float)
    p.add_argument("--no-extrapolate", action="store_true")

    for name, helptext in (("sweep", "eigencurve dataset as CSV"),
                           ("figure", "eigencurve dataset plus plot script")):
        p = common(sub.add_parser(name, help=helptext), out_dir=True)
        p.add_argument("--l", type=_nonneg, default=FIGURE_DEFAULTS["l"])
        p.add_argument("--n-max", type=_positive, default=FIGURE_DEFAULTS["n_max"])
        p.add_argument("--nu-max", type=_nonneg, default=FIGURE_DEFAULTS["nu_max"])
        p.add_argument("--a-min", type=float, default=FIGURE_DEFAULTS["a_min"])
        p.add_argument("--a-max", type=float, default=FIGURE_DEFAULTS["a_max"])
        p.add_argument("--steps", type=int, default=FIGURE_DEFAULTS["steps"])
        p.add_argument("--basis-size", type=_positive, default=FIGURE_DEFAULTS["basis_size"])
        p.add_argument("--jobs", type=_positive, default=1)

    p = common(sub.add_parser("verify", help="run the property checks"), out_dir=True)
    p.add_argument("--l", type=_nonneg, default=0)
    p.add_argument("--n-max", type=_positive, default=10)
    p.add_argument("--a-min", type=float, default=-4.0)
    p.add_argument("--a-max", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=161)
    p.add_argument("--basis-size", type=_positive, default=DEFAULT_SIZE)
    p.add_argument("--tol", type=float, default=TOLERANCES["intersection"])
    p.add_argument("--hf-samples", type=_positive, default=20)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--jobs", type=_positive, default=1)
    return parser


def _emit(args, payload, table: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=_jsonable))
    else:
        print(table, end="" if table.endswith("\n") else "\n")


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    raise TypeError(f"not serialisable: {type(x)}")


def _outdir(args) -> Path:
    if args.out is not None:
        return args.out
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return Path(env)
    return Path("rotosc-output")


def _config(args) -> dict:
    skip = {"json", "out", "seed_manifest"}
    return {k: (str(v) if isinstance(v, Path) else v)
            for k, v in sorted(vars(args).items()) if k not in skip}


def _write_manifest(args, outdir: Path, extra: dict | None = None) -> Path:
    path = args.seed_manifest or (outdir / "manifest.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    manifest = {
        "package": "rotosc",
        "version": _version(),
        "command": args.command,
        "config": _config(args),
        "tolerances": TOLERANCES,
    }
    if extra:
        manifest.update(extra)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _table(values, etilde=None) -> str:
    if etilde is None:
        return "\n".join(f"{w:.12f}" for w in values)
    return "\n".join(f"{w:.12f}  {e:.12f}" for w, e in zip(values, etilde))


def _coupling(args) -> float:
    """Resolve a from --a or --alpha, honouring --physical."""
    if args.alpha is not None:
        ConversionContext(args.alpha)
        args.a = a_from_alpha(args.alpha)
    if args.physical and not args.a > 0:
        raise ValueError(f"--physical requires a > 0, got {args.a}")
    return args.a


def _spectrum_payload(args, values) -> tuple[dict, str]:
    values = [float(w) for w in values]
    payload = {"l": args.l, "a": args.a, "eigenvalues": values}
    etilde = None
    if args.alpha is not None:
        ctx = ConversionContext(args.alpha)
        etilde = [etilde_from_w(ctx, w) for w in values]
        payload.update(alpha=args.alpha, etilde=etilde)
    return payload, _table(values, etilde)


def cmd_roots(args) -> int:
    roots = truncation_roots(args.n, args.l)
    rows = [(i, a, truncation_energy(args.n, args.l, a)) for i, a in enumerate(roots, 1)]
    lines = [f"# n={args.n} l={args.l}", f"{'i':>3}  {'a':>12}  {'W':>12}"]
    lines += [f"{i:>3}  {a:>12.6f}  {W:>12.6f}" for i, a, W in rows]
    _emit(args, {"n": args.n, "l": args.l,
                 "roots": [dict(i=i, a=a, W=W) for i, a, W in rows]}, "\n".join(lines))
    return EXIT_OK


def cmd_exact(args) -> int:
    sols = exact_solutions(args.n, args.l)
    if args.json:
        payload = [dict(n=s.n, l=s.l, i=s.i, a=s.a_root, W=s.W, **{"lambda": s.lam},
                        node_count=s.node_count, coefficients=list(s.coeffs)) for s in sols]
        print(json.dumps(payload, indent=2))
    elif args.output:
        write_solutions_csv(sols, args.output)
    else:
        sys.stdout.write(csv_text(CSV_HEADER, solution_rows(sols)))
    return EXIT_OK


def cmd_ritz(args) -> int:
    a = _coupling(args)
    result = ritz_spectrum(args.l, a, args.size)
    values = result.eigenvalues[: args.count] if args.count else result.eigenvalues
    payload, table = _spectrum_payload(args, values)
    payload.update(size=args.size, effective_size=result.effective_size)
    _emit(args, payload, table)
    return EXIT_OK


def cmd_oracle(args) -> int:
    a = _coupling(args)
    grid = FdGrid(args.q_max, args.points) if args.q_max else FdGrid.default(a, args.points)
    values = fd_spectrum(args.l, a, grid, args.count, extrapolate=not args.no_extrapolate)
    payload, table = _spectrum_payload(args, values)
    payload.update(q_max=grid.q_max, points=grid.points)
    _emit(args, payload, table)
    return EXIT_OK


def cmd_sweep(args) -> int:
    ds = build_dataset(args.l, args.n_max, args.nu_max, args.a_min, args.a_max,
                       args.steps, args.basis_size, jobs=args.jobs)
    outdir = _outdir(args)
    files = write_dataset(ds, outdir)
    if args.command == "figure":
        files.append(write_plot_script(outdir))
    manifest = _write_manifest(args, outdir, {"files": sorted(f.name for f in files)})
    payload = {"outdir": str(outdir), "files": [str(f) for f in files],
               "manifest": str(manifest), "points": len(ds.points),
               "curves": len(ds.curves)}
    _emit(args, payload, "\n".join(str(f) for f in files + [manifest]))
    return EXIT_OK


def cmd_verify(args) -> int:
    l = args.l
    ds = build_dataset(l, args.n_max, max(args.n_max, 1), args.a_min, args.a_max,
                       args.steps, args.basis_size, jobs=args.jobs)
    checks = {}

    inter = verify_intersections(ds, args.tol, mode="exact")
    checks["intersections"] = inter.summary()

    lam = lambda_report(ds, TOLERANCES["lambda_point"], TOLERANCES["lambda_integer"])
    checks["lambda"] = lam.summary()

    hf = hellmann_feynman_samples(l, args.hf_samples, seed=args.seed,
                                  basis_size=args.basis_size)
    hf_gap = max(s.gap for s in hf)
    hf_ok = hf_gap <= TOLERANCES["hellmann_feynman"] and all(s.slope < 0 for s in hf)
    checks["hellmann_feynman"] = dict(passed=hf_ok, max_gap=hf_gap,
                                      max_slope=max(s.slope for s in hf))

    mono = monotonicity_violations(ds)
    checks["monotonicity"] = dict(passed=not mono, violations=mono[:20])

    bad_nodes, worst_res = [], 0.0
    bad_roots = []
    for n in range(0, args.n_max + 1):
        cert = root_certificate(n, l)
        if not (cert["distinct_real_roots"] == n + 1 and cert["square_free"]
                and cert["zero_is_root"] == (n % 2 == 0)):
            bad_roots.append(cert)
        for s in exact_solutions(n, l):
            if s.node_count != s.i - 1:
                bad_nodes.append((s.n, s.i, s.node_count))
            worst_res = max(worst_res, max_relative_residual(WaveForm.from_solution(s)))
    checks["roots"] = dict(passed=not bad_roots, failures=bad_roots)
    checks["nodes"] = dict(passed=not bad_nodes, failures=bad_nodes)
    checks["residual"] = dict(passed=worst_res <= TOLERANCES["residual"],
                              worst_relative=worst_res)

    ok = all(c["passed"] for c in checks.values())
    if args.out is not None or args.seed_manifest is not None or os.environ.get(OUTPUT_ENV):
        outdir = _outdir(args)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "verify.json").write_text(json.dumps(checks, indent=2, default=_jsonable))
        _write_manifest(args, outdir, {"passed": ok})
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {name}" for name, c in checks.items()]
    _emit(args, {"passed": ok, "checks": checks}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "roots": cmd_roots, "exact": cmd_exact, "ritz": cmd_ritz, "oracle": cmd_oracle,
    "sweep": cmd_sweep, "figure": cmd_sweep, "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in ("sweep", "figure", "verify") and args.steps < 4:
        parser.print_usage(sys.stderr)
        print("rotosc: error: --steps must be at least 4 (cubic interpolation needs "
              "four samples)", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (NumericalError, np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"rotosc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"rotosc: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
