"""Command-line entry point ``hua``."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import kernels, transforms
from .geometry import DomainSpec
from .harness.config import ConfigError, load_config
from .harness.suites import SUITE_IDS, run_all
from .polynomial import parse_polynomial
from .quadrature import QuadratureSpec, convergence_table
from .report import reports_to_csv, reports_to_json


def parse_point(text: str) -> np.ndarray:
    """'re,im;re,im;...' -> complex vector (a lone 're' means zero imaginary part)."""
    coords = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = [b.strip() for b in part.split(",")]
        if len(bits) > 2:
            raise argparse.ArgumentTypeError(f"bad coordinate {part!r}")
        coords.append(complex(float(bits[0]), float(bits[1]) if len(bits) == 2 else 0.0))
    if not coords:
        raise argparse.ArgumentTypeError("empty point")
    return np.array(coords)


def parse_orders(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be comma-separated integers: {text!r}") from None


def format_complex(v) -> str:
    v = complex(v)
    return f"{v.real:.17g}{v.imag:+.17g}i"


def _domain(kind: str, n: int) -> DomainSpec:
    return DomainSpec.disc() if kind == "disc" else DomainSpec.ball(n)


def _quad_from_orders(n: int, orders: list[int] | None) -> QuadratureSpec:
    base = QuadratureSpec.default(n)
    if not orders:
        return base
    if n == 1:
        if len(orders) != 2:
            raise ValueError("disc orders are 't,theta'")
        return QuadratureSpec(radial_order=orders[0], angular_points=(orders[1],))
    if len(orders) != 4:
        raise ValueError("ball orders are 's,u,theta1,theta2'")
    return QuadratureSpec(radial_order=orders[0], slice_order=orders[1], angular_points=tuple(orders[2:]))


def cmd_kernel_eval(args) -> int:
    z, zeta = args.z, args.zeta
    n = args.dim or len(z)
    dom = _domain(args.domain, n)
    v = kernels.evaluate(args.kernel, dom, z, zeta)
    if args.kernel.replace("-", "_") in ("poisson_szego", "poisson_bergman"):
        print(f"{float(np.real(v)):.17g}")
    else:
        print(format_complex(v))
    return 0


def cmd_transform_berezin(args) -> int:
    z = args.z
    n = len(z)
    f = parse_polynomial(args.f, n)
    q = _quad_from_orders(n, args.orders)
    fine = QuadratureSpec(
        radial_order=2 * q.radial_order, slice_order=2 * q.slice_order, angular_points=q.with_angular(2).angular_points
    )
    if args.method == "mobius":
        v, v2 = (transforms.berezin_transform_mobius_form(f, z, s) for s in (q, fine))
    else:
        dom = transforms.domain_for(n)
        v, v2 = (transforms.berezin_transform(f, z, dom, s) for s in (q, fine))
    print(f"value: {format_complex(v)}")
    print(f"error_estimate: {abs(v2 - v):.3e}")
    return 0


def cmd_table_convergence(args) -> int:
    f = parse_polynomial(args.integrand, args.dim)
    n = f.n
    dom = transforms.domain_for(n)
    if args.kernel_z is not None:
        kz = args.kernel_z
        if len(kz) != n:
            raise ValueError("--kernel-z must have the integrand's dimension")
        integrand = lambda pts: kernels.bergman_kernel(dom, kz, pts) * f(pts)  # noqa: E731
    else:
        integrand = f
    rows, monotone = convergence_table(integrand, dom, args.orders)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["order", "value_re", "value_im", "delta"])
    for r in rows:
        v = complex(r.value)
        w.writerow([r.order, repr(v.real), repr(v.imag), "" if r.delta is None else repr(r.delta)])
    print(f"# monotone_decay={str(monotone).lower()}", file=sys.stderr)
    return 0


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_verify(args) -> int:
    cfg = load_config(args.config, args.seed)
    reports, summary = run_all(cfg, args.suite, args.jobs)
    if not args.timings:
        summary.pop("wall_time", None)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        extra = f"  error: {r.error}" if r.error else ""
        print(f"{status}  {r.suite:22s} checks={len(r.checks):3d}{extra}", file=sys.stderr)
        for c in r.checks:
            if not c.passed:
                print(f"      {c.name}: {c.residual:.3e} {c.relation} {c.tolerance:.1e}", file=sys.stderr)
    print(f"{summary['passed']}/{summary['suites']} suites passed", file=sys.stderr)
    if args.json:
        _write(args.json, reports_to_json(reports, summary, args.timings))
    if args.csv:
        _write(args.csv, reports_to_csv(reports))
    return 0 if summary["passed"] == summary["suites"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hua", description="Kernels, Berezin transform and verification suites on the unit ball.")
    sub = p.add_subparsers(dest="command", required=True)

    kp = sub.add_parser("kernel", help="evaluate a kernel").add_subparsers(dest="action", required=True)
    ev = kp.add_parser("eval", help="evaluate a kernel at (z, zeta)")
    ev.add_argument("--kernel", required=True, choices=["bergman", "szego", "poisson-szego", "poisson-bergman"])
    ev.add_argument("--domain", required=True, choices=["disc", "ball"])
    ev.add_argument("--dim", type=int, default=None)
    ev.add_argument("--z", required=True, type=parse_point)
    ev.add_argument("--zeta", required=True, type=parse_point)
    ev.set_defaults(func=cmd_kernel_eval)

    tp = sub.add_parser("transform", help="integral transforms").add_subparsers(dest="action", required=True)
    be = tp.add_parser("berezin", help="Berezin transform of a polynomial at z")
    be.add_argument("--f", required=True, help="polynomial, e.g. 'z1^2 * z2 + (0.5-1i) * w1'")
    be.add_argument("--z", required=True, type=parse_point)
    be.add_argument("--orders", type=parse_orders, default=None, help="disc: t,theta; ball: s,u,theta1,theta2")
    be.add_argument("--method", choices=["direct", "mobius"], default="direct")
    be.set_defaults(func=cmd_transform_berezin)

    vp = sub.add_parser("verify", help="run verification suites")
    vp.add_argument("--suite", action="append", choices=SUITE_IDS, default=None)
    vp.add_argument("--config", default=None)
    vp.add_argument("--seed", type=int, default=None)
    vp.add_argument("--jobs", type=int, default=1)
    vp.add_argument("--json", default=None, help="write the JSON report here ('-' for stdout)")
    vp.add_argument("--csv", default=None, help="write the CSV projection here ('-' for stdout)")
    vp.add_argument("--timings", action="store_true", help="include wall times (makes output run-dependent)")
    vp.set_defaults(func=cmd_verify)

    tb = sub.add_parser("table", help="tables").add_subparsers(dest="action", required=True)
    cv = tb.add_parser("convergence", help="ball-integral convergence table as CSV")
    cv.add_argument("--integrand", required=True)
    cv.add_argument("--dim", type=int, default=None)
    cv.add_argument("--kernel-z", type=parse_point, default=None, help="multiply by the Bergman kernel K(z, .)")
    cv.add_argument("--orders", type=parse_orders, default=[8, 16, 32, 64])
    cv.set_defaults(func=cmd_table_convergence)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, ZeroDivisionError) as exc:
        print(f"hua: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
