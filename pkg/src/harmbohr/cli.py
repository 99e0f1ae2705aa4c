"""Command-line entry point: ``harmbohr {radius,table,figure,verify,forensics}``.

Exit codes: 0 success, 1 failing verification suites, 2 inadmissible
parameters or bad flags, 3 solver failure, 4 table mismatch.

A ``--config FILE`` of flat ``key = value`` lines supplies defaults for the
chosen subcommand's flags; flags given on the command line win.  The worker
count for table and figure sweeps comes from ``HARMBOHR_THREADS``.
"""

import argparse
import sys

from . import tables, verify
from .functionals import EXTRAS, FunctionalId, ParamSet
from .radius import RootFindingError, radius_for
from .series import VARIANTS
from .specfun import DomainError

EXIT_OK = 0
EXIT_SUITE = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_MISMATCH = 4

_SWITCHES = {"quick", "no-fail", "no_fail", "certify"}


def _floats(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _samples(text):
    k = int(text)
    if k < 50:
        raise argparse.ArgumentTypeError("--samples must be at least 50")
    return k


def build_parser():
    ap = argparse.ArgumentParser(prog="harmbohr",
                                 description="Sharp Bohr-type radii for harmonic maps of class P0_H(M).")
    ap.add_argument("--config", help="file of key = value defaults mirroring the flags")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="solve one radius equation")
    p.add_argument("--functional", required=True, choices=[f.value for f in FunctionalId])
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--m", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--poly", type=_floats, default=(), help="lambda_1,...,lambda_q")
    p.add_argument("--lambda2", type=float, help="override lambda_2 for cor3.12")
    p.add_argument("--a0", type=float, help="|a_0| for ana-ra0 / ana-rpa0")
    p.add_argument("--variant", choices=VARIANTS, default="squared")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--certify", action="store_true", help="attach an extremal sharpness check")

    p = sub.add_parser("table", help="reproduce a printed table as CSV")
    p.add_argument("--table", type=int, required=True,
                   help="one of 1, 2, 4, 5, 6, 7 (there is no table 3)")
    p.add_argument("--variant", choices=VARIANTS, default="squared")
    p.add_argument("--rounding", choices=tables.ROUNDINGS, default="truncate")
    p.add_argument("--no-fail", action="store_true", help="exit 0 even when entries mismatch")

    p = sub.add_parser("figure", help="emit R(M) curves as gnuplot-style TSV")
    p.add_argument("--figure", type=int, required=True, choices=sorted(tables.FIGURES))
    p.add_argument("--samples", type=_samples, default=200)
    p.add_argument("--variant", choices=VARIANTS, default="squared")

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="skip quadrature and sampling")

    p = sub.add_parser("forensics", help="which area-bound variant reproduces a table")
    p.add_argument("--table", type=int, default=2)
    p.add_argument("--rounding", choices=tables.ROUNDINGS, default="truncate")
    return ap


def read_config(path):
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for num, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{num}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-")] = value
    return out


def _config_tokens(cfg):
    toks = []
    for key, value in cfg.items():
        if key in _SWITCHES:
            if value.lower() in ("1", "true", "yes", "on"):
                toks.append("--" + key.replace("_", "-"))
        else:
            toks += ["--" + key, value]
    return toks


def _splice_config(argv):
    # pull --config out, then put its tokens right after the subcommand so
    # explicit flags (parsed later) override them
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return argv
    cfg = read_config(known.config)
    commands = {"radius", "table", "figure", "verify", "forensics"}
    for i, tok in enumerate(rest):
        if tok in commands:
            return rest[:i + 1] + _config_tokens(cfg) + rest[i + 1:]
    return rest


def cmd_radius(args, out):
    fid = FunctionalId.parse(args.functional)
    p = None
    extras = ()
    if fid in EXTRAS:
        vals = {"m": args.m, "N": args.N, "a0": args.a0}
        missing = [k for k in EXTRAS[fid] if vals[k] is None]
        if missing:
            raise DomainError(f"{fid.value} needs --{' --'.join(missing)}")
        extras = tuple(vals[k] for k in EXTRAS[fid])
    else:
        p = ParamSet(beta=args.beta, mu=args.mu, lam=args.lam, m=args.m or 1, N=args.N or 1,
                     poly=args.poly, M=args.M, variant=args.variant)
        if fid is FunctionalId.COR_3_12 and args.lambda2 is not None:
            extras = (args.lambda2,)
    res = radius_for(fid, p, extras, tol=args.tol, certify=args.certify)
    lo, hi = res.bracket
    print(f"functional: {fid.value}", file=out)
    print(f"value: {res.value:.15g}", file=out)
    print(f"residual: {res.residual:.3e}", file=out)
    print(f"bracket: [{lo:.15g}, {hi:.15g}]", file=out)
    print(f"iterations: {res.iterations}", file=out)
    print(f"unique: {str(res.unique).lower()}", file=out)
    if res.certificate is not None:
        c = res.certificate
        print(f"sharp: {str(c.holds).lower()} (lhs {c.below:.10g} < d {c.distance:.10g} "
              f"< lhs {c.above:.10g} at R -/+ {c.delta:g})", file=out)
    return EXIT_OK


def cmd_table(args, out):
    rows = tables.reproduce(args.table, args.variant, args.rounding)
    out.write(tables.table_csv(rows))
    if all(r.match4dp for r in rows) or args.no_fail:
        return EXIT_OK
    return EXIT_MISMATCH


def cmd_figure(args, out):
    out.write(tables.figure_tsv(tables.figure_data(args.figure, args.samples, args.variant)))
    return EXIT_OK


def cmd_verify(args, out):
    results = verify.run(seed=args.seed, quick=args.quick)
    failed = []
    for name, ok, detail, _secs in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}", file=out)
        if not ok:
            failed.append(name)
    if failed:
        print(f"failing suites: {', '.join(failed)}", file=sys.stderr)
        return EXIT_SUITE
    return EXIT_OK


def cmd_forensics(args, out):
    report = tables.variant_forensics(args.table, args.rounding)
    for variant, (hits, total) in report.items():
        print(f"{variant}: {hits}/{total} entries match", file=out)
    winners = [v for v, (hits, total) in report.items() if hits == total]
    if len(winners) == 1:
        print(f"matching variant: {winners[0]}", file=out)
    else:
        print(f"matching variant: none unique ({', '.join(winners) or 'none'})", file=out)
    return EXIT_OK


COMMANDS = {
    "radius": cmd_radius,
    "table": cmd_table,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "forensics": cmd_forensics,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        argv = _splice_config(argv)
    except (OSError, ValueError) as exc:
        print(f"harmbohr: config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (DomainError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"harmbohr: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except RootFindingError as exc:
        print(f"harmbohr: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
