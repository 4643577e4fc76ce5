"""Berezin and Poisson-Szego integrals and the experiments built on them.

The Berezin transform is available in two forms: the direct volume integral
of B(z, .) f and the change of variables through the involution phi_z, whose
integrand stays tame as z approaches the sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import (
    DomainSpec,
    Moebius,
    admissible_contains,
    as_point,
    basis,
    hermitian_dot,
    norm_sq,
    rho,
    sample_ball,
    unitary_to_e1,
)
from .kernels import poisson_bergman, poisson_szego
from .quadrature import QuadratureSpec, gauss_unit, integrate_ball, integrate_sphere
from .report import Report

INTERIOR_LIMIT = 0.95
ESCALATE_BELOW = 1e-2

Func = Callable[[np.ndarray], np.ndarray]


def domain_for(n: int) -> DomainSpec:
    return DomainSpec.disc() if n == 1 else DomainSpec.ball(n)


def _stack(f) -> Func:
    """A single vectorised function, or several stacked along a trailing axis."""
    if isinstance(f, (list, tuple)):
        fs = list(f)
        return lambda pts: np.stack([np.broadcast_to(g(pts), pts.shape[:-1]) for g in fs], axis=-1)
    return lambda pts: np.broadcast_to(f(pts), pts.shape[:-1])


def _weighted(k: np.ndarray, vals: np.ndarray) -> np.ndarray:
    return k[:, None] * vals if vals.ndim == 2 else k * vals


def _check_radius(z, limit=INTERIOR_LIMIT):
    if norm_sq(z) > limit**2 + 1e-12:
        raise ValueError(f"|z| must not exceed {limit}")


def berezin_transform(f, z, domain: DomainSpec, q: QuadratureSpec | None = None):
    """Quadrature of B(z, zeta) f(zeta) over the ball (f may be a list of functions)."""
    z = as_point(z, domain.n)
    _check_radius(z)
    g = _stack(f)
    return integrate_ball(lambda pts: _weighted(poisson_bergman(domain, z, pts), g(pts)), domain, q)


def berezin_transform_mobius_form(f, z, q: QuadratureSpec | None = None, limit: float = 1.0):
    """Normalised volume average of f o phi_z, equal to the Berezin transform on the ball."""
    z = as_point(z)
    if norm_sq(z) >= 1.0:
        raise ValueError("z must lie in the open ball")
    _check_radius(z, limit)
    domain = domain_for(z.shape[-1])
    phi = Moebius(z)
    g = _stack(f)
    return integrate_ball(lambda w: g(phi(w)), domain, q) / domain.volume()


def poisson_szego_integral(f, z, domain: DomainSpec, q: QuadratureSpec | None = None):
    """Sphere quadrature of P(z, zeta) f(zeta)."""
    z = as_point(z, domain.n)
    _check_radius(z)
    g = _stack(f)
    return integrate_sphere(lambda s: _weighted(poisson_szego(domain, z, s), g(s)), domain.n, q)


def spherical_mean(f, r: float, n: int, q: QuadratureSpec | None = None):
    """Integral of f(r zeta) over the unit sphere (not divided by its area)."""
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    g = _stack(f)
    return integrate_sphere(lambda s: g(r * s), n, q)


# -- maximal function and domination -----------------------------------------


@dataclass
class MaximalResult:
    value: float
    radius: float | None
    averages: list = field(default_factory=list)  # (r, average or None, hits)
    skipped: list = field(default_factory=list)


def default_radii(z, count: int = 20) -> np.ndarray:
    lo = math.sqrt(max(1.0 - norm_sq(z), 1e-300)) / 8
    return np.geomspace(lo, math.sqrt(2.0), count)


def _grid_maxima(absf: np.ndarray, dist: np.ndarray, radii, min_hits: int) -> list[MaximalResult]:
    """Ball averages of each column of ``absf`` for every radius, via one sort."""
    order = np.argsort(dist, kind="stable")
    d = dist[order]
    csum = np.cumsum(absf[order], axis=0)
    results = [MaximalResult(-np.inf, None) for _ in range(absf.shape[1])]
    for r in radii:
        hits = int(np.searchsorted(d, r, side="left"))
        for j, out in enumerate(results):
            if hits < min_hits:
                out.skipped.append(float(r))
                out.averages.append((float(r), None, hits))
                continue
            avg = float(csum[hits - 1, j] / hits)
            out.averages.append((float(r), avg, hits))
            if avg > out.value:
                out.value, out.radius = avg, float(r)
    for out in results:
        if out.radius is None:
            raise ValueError("every radius in the grid produced an empty ball")
    return results


def maximal_function(
    f,
    z,
    domain: DomainSpec,
    radii: Sequence[float] | None = None,
    mc: QuadratureSpec | None = None,
    min_hits: int = 30,
):
    """Grid maximum of Monte Carlo averages of |f| over the quasi-balls beta_2(z, r).

    The grid maximum is a lower bound for the supremum over all radii. Radii
    whose ball collects fewer than ``min_hits`` samples are skipped. A list of
    functions shares one sample set and yields a list of results.
    """
    z = as_point(z, domain.n)
    mc = mc or QuadratureSpec(kind="monte_carlo", samples=200_000)
    radii = default_radii(z) if radii is None else np.asarray(radii, dtype=float)
    pts = sample_ball(domain.n, mc.samples, np.random.default_rng(mc.seed))
    absf = np.abs(_stack(list(f) if isinstance(f, (list, tuple)) else [f])(pts))
    results = _grid_maxima(absf, rho(z, pts), radii, min_hits)
    return results if isinstance(f, (list, tuple)) else results[0]


def domination_report(
    fs,
    sample,
    domain: DomainSpec,
    berezin_q: QuadratureSpec | None = None,
    mc: QuadratureSpec | None = None,
    bound: float = 100.0,
    radii_count: int = 20,
    labels: Sequence[str] | None = None,
) -> Report:
    """Ratios |Bf(z)| / Mf(z) over a family of functions and sample points.

    Bf is computed through the Moebius form, which stays accurate up to
    |z| = 0.99. The largest ratio is the empirical domination constant.
    Points where Mf vanishes are skipped and counted.
    """
    fs = list(fs) if isinstance(fs, (list, tuple)) else [fs]
    labels = list(labels) if labels is not None else [str(f) for f in fs]
    mc = mc or QuadratureSpec(kind="monte_carlo", samples=200_000)
    rep = Report("maximal_domination", seed=mc.seed)
    ratios = np.full((len(fs), len(sample)), np.nan)
    for i, z in enumerate(sample):
        z = as_point(z, domain.n)
        if norm_sq(z) > 0.99**2 + 1e-12:
            raise ValueError("sample points must satisfy |z| <= 0.99")
        bf = np.atleast_1d(berezin_transform_mobius_form(fs, z, berezin_q))
        pts_mc = QuadratureSpec(kind="monte_carlo", samples=mc.samples, seed=_point_seed(mc.seed, i))
        ms = maximal_function(fs, z, domain, default_radii(z, radii_count), pts_mc)
        for j, m in enumerate(ms):
            if m.value > 0:
                ratios[j, i] = abs(bf[j]) / m.value
    for j, label in enumerate(labels):
        row = ratios[j]
        finite = row[np.isfinite(row)]
        worst = float(np.max(finite)) if finite.size else float("nan")
        rep.add(f"ratio_max[{label}]", worst, bound, inputs=(label, len(sample)),
                points=int(finite.size), skipped=int(row.size - finite.size))
    C = float(np.nanmax(ratios)) if np.any(np.isfinite(ratios)) else float("nan")
    rep.add("empirical_C", C, bound, inputs=(len(fs), len(sample)))
    return rep


def _point_seed(seed: int, i: int) -> int:
    return int(np.random.SeedSequence([int(seed), int(i)]).generate_state(1)[0])


# -- boundary approach --------------------------------------------------------


@dataclass
class ApproachPath:
    P: np.ndarray
    alpha: float
    kind: str
    steps: np.ndarray
    ks: tuple = ()

    def __post_init__(self):
        self.P = as_point(self.P)
        inside = admissible_contains(self.P, self.alpha, self.steps)
        if not np.all(inside):
            bad = int(np.argmin(inside))
            raise ValueError(f"path point {bad} lies outside the admissible region")


def radial_path(P, alpha: float, ks: Sequence[int]) -> ApproachPath:
    """z_k = (1 - 2^-k) P."""
    P = as_point(P)
    steps = np.array([(1 - 2.0**-k) * P for k in ks])
    return ApproachPath(P, alpha, "radial", steps, tuple(ks))


def tangential_path(P, alpha: float, ks: Sequence[int], direction=None, ratio: float = 0.9) -> ApproachPath:
    """z_k = (1 - d_k) P + ratio sqrt(d_k) v with v a unit vector orthogonal to P.

    The offset is of order sqrt(1 - |z|), i.e. a complex-tangential approach;
    d_k is chosen so that 1 - |z_k| is about 2^-k.
    """
    P = as_point(P)
    n = P.shape[-1]
    if direction is None:
        if n < 2:
            raise ValueError("tangential approach needs n >= 2")
        U = unitary_to_e1(P)
        direction = U.conj().T @ basis(n, 1)
    v = as_point(direction, n)
    v = v - hermitian_dot(v, P) * P
    v = v / math.sqrt(norm_sq(v))
    if ratio**2 >= 2:
        raise ValueError("ratio must satisfy ratio^2 < 2")
    steps = []
    for k in ks:
        d = 2.0 ** (1 - k) / (2 - ratio**2)
        steps.append((1 - d) * P + ratio * math.sqrt(d) * v)
    return ApproachPath(P, alpha, f"tangential_offset(ratio={ratio})", np.array(steps), tuple(ks))


@dataclass
class ApproachRow:
    k: int
    z: np.ndarray
    one_minus_norm: float
    value: complex
    deviation: float
    escalated: bool
    error_estimate: float
    precision_limited: bool


def boundary_approach(
    f,
    path: ApproachPath,
    domain: DomainSpec | None = None,
    q: QuadratureSpec | None = None,
    precision_tol: float = 1e-3,
) -> list[ApproachRow]:
    """Berezin values along ``path`` and their distance from f(P).

    Values come from the Moebius form. When 1 - |z| < 1e-2 the angular
    orders are doubled once; rows whose doubled and base values differ by
    more than ``precision_tol`` are flagged as precision limited.
    """
    n = path.P.shape[-1]
    domain = domain or domain_for(n)
    q = q or boundary_quadrature(n)
    fP = complex(np.asarray(_stack(f)(path.P[None, :]))[0])
    rows = []
    for k, z in zip(path.ks or range(len(path.steps)), path.steps):
        gap = 1.0 - math.sqrt(norm_sq(z))
        base = complex(berezin_transform_mobius_form(f, z, q))
        escalated = gap < ESCALATE_BELOW
        err = 0.0
        value = base
        if escalated:
            value = complex(berezin_transform_mobius_form(f, z, q.with_angular(2)))
            err = abs(value - base)
        rows.append(ApproachRow(k, z, gap, value, abs(value - fP), escalated, err, err > precision_tol))
    return rows


def boundary_quadrature(n: int) -> QuadratureSpec:
    if n == 1:
        return QuadratureSpec(radial_order=24, angular_points=(256,))
    return QuadratureSpec(radial_order=12, slice_order=12, angular_points=(64, 64))


# -- mass bounds, shell integral, plurisubharmonicity --------------------------


def dual_mass_quadrature(n: int) -> QuadratureSpec:
    # after rotating zeta onto the first axis the integrand ignores arg z_2
    if n == 1:
        return QuadratureSpec(radial_order=48, angular_points=(512,))
    return QuadratureSpec(radial_order=40, slice_order=40, angular_points=(512, 4))


def dual_mass(zeta, domain: DomainSpec, q: QuadratureSpec | None = None) -> float:
    """Integral of B(z, zeta) over z in the ball (integration in the first slot)."""
    zeta = as_point(zeta, domain.n)
    _check_radius(zeta)
    n = domain.n
    z1 = math.sqrt(norm_sq(zeta)) * basis(n, 0)  # unitary invariance of B and dV
    q = q or dual_mass_quadrature(n)
    val = integrate_ball(lambda pts: poisson_bergman(domain, pts, z1), domain, q)
    return float(np.real(val))


@dataclass
class ShellResult:
    value: float
    nodes: int
    levels: int


def _graded_panels(length: float, smallest: float) -> list[tuple[float, float]]:
    """Dyadic panels of (0, length] refined towards 0 down to ``smallest``."""
    edges = [length]
    while edges[-1] > smallest:
        edges.append(edges[-1] / 2)
    edges.append(0.0)
    return [(edges[i + 1], edges[i]) for i in range(len(edges) - 1)]


def shell_integral(
    z, n: int, q: QuadratureSpec | None = None, exponent: int | None = None, refine: float = 1e-3
) -> ShellResult:
    """Sphere integral of (1 - |z|^2)^(n-1) / |1 - <z, zeta>|^p, p = n + 1 by default.

    The integrand depends on zeta only through <zeta, z/|z|>, so the sphere
    integral is reduced to the disc (n >= 2) or the circle (n = 1) and
    evaluated with a rule graded dyadically towards the near-pole point,
    mirroring the shell decomposition |1 - <z, zeta>| ~ 2^j (1 - |z|^2).
    ``q.radial_order`` is the Gauss order per shell and ``q.slice_order`` the
    angular Gauss order.
    """
    z = as_point(z, n)
    r = math.sqrt(norm_sq(z))
    if r >= 1:
        raise ValueError("z must lie in the open ball")
    q = q or QuadratureSpec(radial_order=16, slice_order=48, angular_points=(4,))
    p = n + 1 if exponent is None else exponent
    gap = 1.0 - r
    scale = (1.0 - r * r) ** (n - 1)
    xs, wx = gauss_unit(q.radial_order)
    if n == 1:
        panels = _graded_panels(math.pi, refine * gap)
        th = np.concatenate([a + (b - a) * xs for a, b in panels])
        wt = np.concatenate([(b - a) * wx for a, b in panels])
        vals = np.abs(1.0 - r * np.exp(1j * th)) ** (-p)
        return ShellResult(float(2 * scale * np.sum(wt * vals)), 2 * th.size, len(panels))
    area = 2 * math.pi**n / math.factorial(n - 1)
    # rho = 2 sin(theta) keeps the angular range pi/2 - theta smooth at rho = 2
    panels = _graded_panels(math.pi / 2, refine * gap / 2)
    th = np.concatenate([a + (b - a) * xs for a, b in panels])
    rho_n = 2 * np.sin(th)
    rho_w = np.concatenate([(b - a) * wx for a, b in panels]) * 2 * np.cos(th)
    ys, wy = gauss_unit(q.slice_order)
    psi_max = np.pi / 2 - th
    psi = (2 * ys[None, :] - 1) * psi_max[:, None]
    wpsi = 2 * wy[None, :] * psi_max[:, None]
    R = rho_n[:, None]
    w = 1.0 - R * np.exp(1j * psi)
    weight = np.clip(R * (2 * np.cos(psi) - R), 0.0, None) ** (n - 2)
    vals = weight * np.abs(1.0 - r * w) ** (-p)
    total = np.sum(rho_w[:, None] * wpsi * R * vals)
    return ShellResult(float(area * (n - 1) / math.pi * scale * total), int(vals.size), len(panels))


def psh_probe(z, zeta0, v, r: float, q: QuadratureSpec | None = None, variant: str = "slot") -> tuple[float, float]:
    """(B at the centre, trapezoid mean of B over the circle zeta0 + r e^{it} v).

    ``variant='slot'`` probes zeta -> B(z, zeta); ``'diagonal'`` probes
    zeta -> B(zeta, zeta) and ignores ``z``.
    """
    zeta0 = as_point(zeta0)
    n = zeta0.shape[-1]
    v = as_point(v, n)
    v = v / math.sqrt(norm_sq(v))
    if math.sqrt(norm_sq(zeta0)) + r >= 1:
        raise ValueError("probe circle leaves the ball")
    dom = domain_for(n)
    m = (q.angular_points[0] if q else 256)
    t = 2 * np.pi * np.arange(m) / m
    circle = zeta0 + r * np.exp(1j * t)[:, None] * v
    if variant == "slot":
        z = as_point(z, n)
        center = float(poisson_bergman(dom, z, zeta0))
        vals = poisson_bergman(dom, z, circle)
    elif variant == "diagonal":
        center = float(poisson_bergman(dom, zeta0, zeta0))
        vals = poisson_bergman(dom, circle, circle)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return center, float(np.mean(vals))


__all__ = [
    "ApproachPath",
    "ApproachRow",
    "MaximalResult",
    "ShellResult",
    "berezin_transform",
    "berezin_transform_mobius_form",
    "boundary_approach",
    "domination_report",
    "dual_mass",
    "maximal_function",
    "poisson_szego_integral",
    "psh_probe",
    "radial_path",
    "shell_integral",
    "spherical_mean",
    "tangential_path",
]
