"""Command-line interface.

Subcommands::

    young {eval|inverse|complement|delta2|triple}
    norm     Luxemburg norm of a preset or CSV function
    gauge    dilation-gauge CSV (lam, lower, upper, crude_lo, crude_hi)
    boyd     Boyd-index estimate
    bm       evaluate a bilinear multiplier on two functions
    verify   run a verification experiment and write JSON/CSV/figures

Exit codes: 0 on success or pass, 1 on a verification failure, 2 on a
usage error.  Young functions use the mini-DSL of
:func:`orlicz_lab.young.parse_young`; sampled functions use the presets of
:func:`orlicz_lab.function_lab.parse_preset` or ``@file.csv``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .bilinear import Measure, Symbol, applicable_methods, evaluate_bm
from .dilation import boyd_indices, gauge_estimate
from .experiments import EXPERIMENTS, run_experiment
from .function_lab import Grid, luxemburg_norm, parse_preset, save_csv
from .young import check_delta2, check_triple, complement, parse_young


def _grid(args) -> Grid:
    return Grid(half_width=args.L, n=args.n)


def _add_grid_options(parser, L: float = 16.0, n: int = 1024) -> None:
    parser.add_argument("--L", type=float, default=L,
                        help=f"grid half-width (default {L:g})")
    parser.add_argument("--n", type=int, default=n,
                        help=f"grid points, power of two (default {n})")


def _fmt(x: float) -> str:
    """Print exact-looking values plainly (2 rather than 2.0000000000000004
    is not attempted; repr keeps round-trip fidelity)."""
    return f"{x:.12g}"


# ---------------------------------------------------------------------------
# young


def _cmd_young(args) -> int:
    phi = parse_young(args.phi)
    if args.action == "eval":
        print(_fmt(phi(args.x)))
    elif args.action == "inverse":
        print(_fmt(phi.inverse(args.y)))
    elif args.action == "complement":
        psi = complement(phi)
        if args.x is not None:
            print(_fmt(psi(args.x)))
        else:
            print(psi.label)
    elif args.action == "delta2":
        res = check_delta2(phi, 1e-6, 1e6)
        print(f"delta2={'yes' if res.holds else 'no'} k={_fmt(res.k)}")
        return 0 if res.holds else 1
    else:  # triple
        if args.phi2 is None or args.phi3 is None:
            raise SystemExit("young triple needs --phi2 and --phi3")
        grid = np.geomspace(1e-6, 1e6, 241)
        cond = check_triple(args.kind, phi, parse_young(args.phi2),
                            parse_young(args.phi3), grid)
        # equality cases carry float noise; judge the defect relative to
        # the right-hand side rather than strictly
        phi3 = parse_young(args.phi3)
        rhs = phi3.inverse_many(grid)
        if args.kind == "young_conv":
            rhs = grid * rhs
        scale = float(np.max(rhs[np.isfinite(rhs)], initial=1.0))
        ok = cond.max_violation <= 1e-9 * scale
        print(f"{args.kind}: holds={'yes' if ok else 'no'} "
              f"max_violation={cond.max_violation:.6g}")
        return 0 if ok else 1
    return 0


# ---------------------------------------------------------------------------
# norm / gauge / boyd


def _cmd_norm(args) -> int:
    grid = _grid(args)
    f = parse_preset(args.f, grid)
    phi = parse_young(args.phi)
    val = luxemburg_norm(f, phi, gamma=args.gamma)
    # round away bisection noise below the solver tolerance, then print in
    # float repr form (e.g. 2.0)
    print(repr(float(f"{val:.10g}")))
    return 0


def _cmd_gauge(args) -> int:
    phi = parse_young(args.phi)
    lams = (np.geomspace(args.lam_min, args.lam_max, args.points)
            if args.lam is None else np.asarray([args.lam]))
    rows = []
    for lam in lams:
        est = gauge_estimate(phi, float(lam))
        rows.append((float(lam), est.lower, est.upper,
                     est.crude[0], est.crude[1]))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["lam", "lower", "upper", "crude_lo", "crude_hi"])
        for row in rows:
            writer.writerow([f"{v:.17g}" for v in row])
    finally:
        if args.out:
            out.close()
            print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_boyd(args) -> int:
    est = boyd_indices(parse_young(args.phi))
    print(f"lower={_fmt(est.lower_index)} upper={_fmt(est.upper_index)} "
          f"fit_decades={est.fit_decades:g} residual={est.residual:.3g}")
    return 0


# ---------------------------------------------------------------------------
# bm


def _parse_measure_spec(rest: str) -> Symbol:
    """``measure:delta@t,w;delta@t2,w2:alpha=1,beta=-1``."""
    parts = rest.split(":")
    atoms = []
    for item in parts[0].split(";"):
        if not item.startswith("delta@"):
            raise ValueError(f"bad atom {item!r}; expected delta@t,w")
        t_str, _, w_str = item[len("delta@"):].partition(",")
        atoms.append((float(t_str), complex(w_str or "1")))
    alpha, beta = 1.0, -1.0
    if len(parts) > 1 and parts[1]:
        for kv in parts[1].split(","):
            key, _, val = kv.partition("=")
            if key == "alpha":
                alpha = float(val)
            elif key == "beta":
                beta = float(val)
            else:
                raise ValueError(f"unknown measure option {key!r}")
    return Symbol.measure_hat(Measure.from_atoms(*atoms),
                              alpha=alpha, beta=beta)


def _load_profile_csv(path: str) -> Symbol:
    """Difference-profile CSV with header ``v,re,im``; v strictly
    increasing (uniformity is not required for a profile)."""
    vs, re, im = [], [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            try:
                v = float(row[0])
            except ValueError:
                continue  # header
            vs.append(v)
            re.append(float(row[1]))
            im.append(float(row[2]) if len(row) > 2 else 0.0)
    v = np.asarray(vs)
    if len(v) < 2 or np.any(np.diff(v) <= 0):
        raise ValueError("profile CSV v column must be strictly increasing")
    rev = np.asarray(re)
    imv = np.asarray(im)

    def prof(u):
        u = np.asarray(u, dtype=float)
        return (np.interp(u, v, rev, left=0.0, right=0.0)
                + 1j * np.interp(u, v, imv, left=0.0, right=0.0))

    return Symbol.difference(prof, (float(v[0]), float(v[-1])),
                             label="difference-csv")


def parse_symbol(spec: str) -> Symbol:
    head, _, rest = spec.partition(":")
    if head == "difference":
        if rest == "gauss":
            return Symbol.gauss_difference()
        if rest == "sign":
            return Symbol.sign_difference()
        if rest.startswith("@"):
            return _load_profile_csv(rest[1:])
        raise ValueError(f"unknown difference profile {rest!r}; "
                         "use gauss, sign, or @file.csv")
    if head == "measure":
        return _parse_measure_spec(rest)
    if head == "constant":
        return Symbol.constant(complex(rest or "1"))
    raise ValueError(f"unknown symbol spec {spec!r}; use difference:..., "
                     "measure:..., or constant:c")


def _cmd_bm(args) -> int:
    grid = _grid(args)
    sym = parse_symbol(args.symbol)
    f = parse_preset(args.f, grid)
    g = parse_preset(args.g, grid)
    if args.method == "all":
        methods = applicable_methods(sym)
    else:
        methods = [args.method]
    results = {meth: evaluate_bm(sym, f, g, method=meth) for meth in methods}
    first = results[methods[0]]
    if len(results) > 1:
        dev = max(np.max(np.abs(results[m].values - first.values))
                  for m in methods[1:])
        print(f"methods={','.join(methods)} max_cross_deviation={dev:.6g} "
              f"linf={first.linf():.12g}")
    else:
        print(f"method={methods[0]} linf={first.linf():.12g} "
              f"l1={first.l1():.12g}")
    if args.out:
        save_csv(first, args.out)
        print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# verify


_VERIFY_KEYS = {"p1", "p2", "p3", "a", "N", "trials"}


def _cmd_verify(args) -> int:
    kw = {}
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
        unknown = sorted(set(doc) - _VERIFY_KEYS)
        if unknown:
            raise SystemExit(
                f"unknown config keys {unknown}; accepted: "
                f"{sorted(_VERIFY_KEYS)}")
        kw.update(doc)
    for key in _VERIFY_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            kw[key] = val
    reports = run_experiment(args.name, seed=args.seed, **kw)
    all_pass = True
    for rep in reports:
        rep.write(args.out, figures=not args.no_figures)
        ok = rep.passed
        all_pass &= ok
        n_ok = sum(c.passed for c in rep.claims)
        print(f"{rep.name}: {'pass' if ok else 'FAIL'} "
              f"({n_ok}/{len(rep.claims)} claims)")
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orlicz-lab",
        description="Orlicz-norm and bilinear-multiplier laboratory")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("young", help="Young-function utilities")
    p.add_argument("action",
                   choices=["eval", "inverse", "complement", "delta2",
                            "triple"])
    p.add_argument("--phi", required=True, help="e.g. power:p=2")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--phi2", default=None)
    p.add_argument("--phi3", default=None)
    p.add_argument("--kind", choices=["hoelder", "young_conv"],
                   default="hoelder")
    p.set_defaults(func=_cmd_young)

    p = sub.add_parser("norm", help="Luxemburg norm")
    p.add_argument("--f", required=True,
                   help="preset (indicator:a=4, gauss:s=1, sinc:w=1, "
                        "bl-gauss) or @file.csv")
    p.add_argument("--phi", required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    _add_grid_options(p, L=32.0, n=4096)
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("gauge", help="dilation gauge scan (CSV)")
    p.add_argument("--phi", required=True)
    p.add_argument("--lam", type=float, default=None,
                   help="single dilation factor (default: a log scan)")
    p.add_argument("--lam-min", type=float, default=1e-3)
    p.add_argument("--lam-max", type=float, default=1e3)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gauge)

    p = sub.add_parser("boyd", help="Boyd-index estimate")
    p.add_argument("--phi", required=True)
    p.set_defaults(func=_cmd_boyd)

    p = sub.add_parser("bm", help="evaluate a bilinear multiplier")
    p.add_argument("--symbol", required=True,
                   help="difference:gauss | difference:sign | "
                        "difference:@file.csv | "
                        "measure:delta@t,w;...[:alpha=1,beta=-1] | "
                        "constant:c")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--method", default="direct",
                   choices=["direct", "kernel", "halfsum", "convolution",
                            "space_side", "all"])
    p.add_argument("--out", default=None, help="output CSV path")
    _add_grid_options(p)
    p.set_defaults(func=_cmd_bm)

    p = sub.add_parser("verify", help="run a verification experiment")
    p.add_argument("name", choices=sorted(EXPERIMENTS) + ["all"])
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--seed", type=int, default=0,
                   help="RNG seed (fixed default 0; never wall-clock)")
    p.add_argument("--out", default="reports", help="output directory")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    p.add_argument("--p3", type=float, default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        return int(exc.code or 0)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
