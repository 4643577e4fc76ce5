"""Product quadrature on the disc, the ball in C^2 and the spheres S^1, S^3.

Volume rules use the substitution t = r^2 so that polynomial integrands stay
polynomial in the Gauss variable. For n >= 3 the rules fall back to Monte
Carlo. Integrands are vectorised: they receive an ``(m, n)`` array of points
and return an ``(m,)`` (or ``(m, k)``) array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .geometry import DomainSpec, sample_ball, sample_sphere

CHUNK = 1 << 18

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureSpec:
    """Rule description.

    For the disc, ``radial_order`` is the Gauss order in t = r^2 and
    ``angular_points`` holds one trapezoid count. For the ball in C^2 it holds
    (theta_1, theta_2) counts and ``slice_order`` is the Gauss order in u.
    """

    kind: str = "product"
    radial_order: int = 32
    slice_order: int = 24
    angular_points: tuple = (128,)
    samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "angular_points", tuple(int(a) for a in self.angular_points))
        if self.kind not in ("product", "monte_carlo"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "product":
            if self.radial_order < 2 or self.slice_order < 2:
                raise ValueError("radial and slice orders must be at least 2")
            if not self.angular_points or min(self.angular_points) < 4:
                raise ValueError("angular point counts must be at least 4")
        elif self.samples < 1000:
            raise ValueError("monte carlo needs at least 1000 samples")

    @classmethod
    def default(cls, n: int) -> "QuadratureSpec":
        if n == 1:
            return cls(radial_order=32, slice_order=24, angular_points=(128,))
        if n == 2:
            return cls(radial_order=24, slice_order=24, angular_points=(64, 64))
        return cls(kind="monte_carlo", samples=1_000_000)

    def with_angular(self, factor: int) -> "QuadratureSpec":
        return replace(self, angular_points=tuple(a * factor for a in self.angular_points))

    def scaled(self, order: int) -> "QuadratureSpec":
        """Every axis set to ``order`` (used by convergence tables)."""
        return replace(
            self,
            radial_order=max(2, order),
            slice_order=max(2, order),
            angular_points=tuple(max(4, order) for _ in self.angular_points),
        )

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "radial_order": self.radial_order,
            "slice_order": self.slice_order,
            "angular_points": list(self.angular_points),
            "samples": self.samples,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QuadratureSpec":
        return cls(**{**d, "angular_points": tuple(d.get("angular_points", (128,)))})


@dataclass
class Estimate:
    value: complex
    stderr: float = 0.0
    nodes: int = 0
    method: str = "product"


@dataclass(frozen=True)
class Rule:
    points: np.ndarray
    weights: np.ndarray
    method: str = field(default="product")


def gauss_unit(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def trapezoid_angles(m: int) -> np.ndarray:
    return 2 * np.pi * np.arange(m) / m


def _angles(spec: QuadratureSpec, count: int) -> tuple:
    a = spec.angular_points
    if len(a) >= count:
        return a[:count]
    return a + (a[-1],) * (count - len(a))


@lru_cache(maxsize=32)
def _disc_rule(t_order: int, m: int) -> Rule:
    t, wt = gauss_unit(t_order)
    th = trapezoid_angles(m)
    T, TH = np.meshgrid(t, th, indexing="ij")
    pts = (np.sqrt(T) * np.exp(1j * TH)).reshape(-1, 1)
    # dV = (1/2) dt dtheta
    w = np.outer(wt, np.full(m, 2 * np.pi / m)).ravel() * 0.5
    return Rule(pts, w)


@lru_cache(maxsize=32)
def _sphere3_rule(u_order: int, m1: int, m2: int) -> Rule:
    u, wu = gauss_unit(u_order)
    t1 = trapezoid_angles(m1)
    t2 = trapezoid_angles(m2)
    U, T1, T2 = np.meshgrid(u, t1, t2, indexing="ij")
    pts = np.stack([np.sqrt(1 - U) * np.exp(1j * T1), np.sqrt(U) * np.exp(1j * T2)], axis=-1).reshape(-1, 2)
    # dsigma = (1/2) du dtheta_1 dtheta_2
    w = (wu[:, None, None] * (2 * np.pi / m1) * (2 * np.pi / m2) * 0.5 * np.ones((1, m1, m2))).ravel()
    return Rule(pts, w)


@lru_cache(maxsize=16)
def _ball2_rule(s_order: int, u_order: int, m1: int, m2: int) -> Rule:
    s, ws = gauss_unit(s_order)
    sph = _sphere3_rule(u_order, m1, m2)
    pts = (np.sqrt(s)[:, None, None] * sph.points[None, :, :]).reshape(-1, 2)
    # dV = r^3 dr dsigma = (1/2) s ds dsigma
    w = (0.5 * s * ws)[:, None] * sph.weights[None, :]
    return Rule(pts, w.ravel())


def _circle_rule(m: int) -> Rule:
    th = trapezoid_angles(m)
    return Rule(np.exp(1j * th).reshape(-1, 1), np.full(m, 2 * np.pi / m))


def ball_rule(domain: DomainSpec, q: QuadratureSpec) -> Rule:
    if domain.n == 1:
        return _disc_rule(q.radial_order, _angles(q, 1)[0])
    if domain.n == 2:
        m1, m2 = _angles(q, 2)
        return _ball2_rule(q.radial_order, q.slice_order, m1, m2)
    raise ValueError("product volume rules exist only for n <= 2")


def sphere_rule(n: int, q: QuadratureSpec) -> Rule:
    if n == 1:
        return _circle_rule(_angles(q, 1)[0])
    if n == 2:
        m1, m2 = _angles(q, 2)
        return _sphere3_rule(q.slice_order, m1, m2)
    raise ValueError("product sphere rules exist only for n <= 2")


def apply_rule(f: Integrand, rule: Rule):
    """Weighted sum of ``f`` over the rule, chunked with a deterministic summation order."""
    parts = []
    for start in range(0, len(rule.weights), CHUNK):
        pts = rule.points[start : start + CHUNK]
        vals = np.asarray(f(pts))
        if not np.all(np.isfinite(vals)):
            bad = np.argwhere(~np.isfinite(vals.reshape(len(pts), -1)).all(axis=1))[0, 0]
            raise FloatingPointError(f"integrand not finite at {pts[bad]}")
        w = rule.weights[start : start + CHUNK]
        prod = w.reshape((-1,) + (1,) * (vals.ndim - 1)) * vals
        # numpy sums a contiguous last axis pairwise; BLAS dots are build dependent
        parts.append(np.sum(np.ascontiguousarray(np.moveaxis(prod, 0, -1)), axis=-1))
    parts = np.asarray(parts)
    re = np.array([math.fsum(col) for col in np.real(parts).reshape(len(parts), -1).T])
    im = np.array([math.fsum(col) for col in np.imag(parts).reshape(len(parts), -1).T])
    out = (re + 1j * im).reshape(parts.shape[1:])
    return out[()] if out.ndim == 0 else out


def _monte_carlo(f: Integrand, pts: np.ndarray, measure: float) -> Estimate:
    vals = np.asarray(f(pts))
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("integrand not finite at a sample point")
    mean = vals.mean(axis=0)
    sd = np.sqrt(np.mean(np.abs(vals - mean) ** 2, axis=0) / (len(vals) - 1))
    return Estimate(measure * mean, float(np.max(measure * sd)), len(vals), "monte_carlo")


def integrate_ball_estimate(f: Integrand, domain: DomainSpec, q: QuadratureSpec | None = None) -> Estimate:
    q = q or QuadratureSpec.default(domain.n)
    if q.kind == "monte_carlo" or domain.n >= 3:
        pts = sample_ball(domain.n, q.samples, np.random.default_rng(q.seed))
        return _monte_carlo(f, pts, domain.volume())
    rule = ball_rule(domain, q)
    return Estimate(apply_rule(f, rule), 0.0, len(rule.weights))


def integrate_ball(f: Integrand, domain: DomainSpec, q: QuadratureSpec | None = None):
    """Integral of ``f`` over the open ball with respect to Euclidean volume."""
    return integrate_ball_estimate(f, domain, q).value


def integrate_sphere_estimate(f: Integrand, n: int, q: QuadratureSpec | None = None) -> Estimate:
    q = q or QuadratureSpec.default(n)
    if q.kind == "monte_carlo" or n >= 3:
        pts = sample_sphere(n, q.samples, np.random.default_rng(q.seed))
        return _monte_carlo(f, pts, 2 * math.pi**n / math.factorial(n - 1))
    rule = sphere_rule(n, q)
    return Estimate(apply_rule(f, rule), 0.0, len(rule.weights))


def integrate_sphere(f: Integrand, n: int, q: QuadratureSpec | None = None):
    """Integral of ``f`` over the unit sphere S^(2n-1) with respect to surface measure."""
    return integrate_sphere_estimate(f, n, q).value


@dataclass
class ConvergenceRow:
    order: int
    value: complex
    delta: float | None


def convergence_table(f: Integrand, domain: DomainSpec, orders: Sequence[int], base: QuadratureSpec | None = None):
    """Values of the ball integral as every rule axis is raised through ``orders``.

    Returns ``(rows, monotone)`` where ``delta`` is |value_i - value_{i-1}|
    and ``monotone`` says whether the deltas never increase.
    """
    if len(orders) < 2:
        raise ValueError("need at least two orders")
    base = base or QuadratureSpec.default(domain.n)
    rows: list[ConvergenceRow] = []
    prev = None
    for o in orders:
        v = integrate_ball(f, domain, base.scaled(o))
        rows.append(ConvergenceRow(o, v, None if prev is None else float(abs(v - prev))))
        prev = v
    deltas = [r.delta for r in rows[1:]]
    monotone = all(b <= a * (1 + 1e-12) + 1e-300 for a, b in zip(deltas, deltas[1:]))
    return rows, monotone


def monomial_ball_integral(alpha: Sequence[int], beta: Sequence[int]) -> float:
    """Closed form of the integral of z^alpha conj(z)^beta over the unit ball of C^n."""
    if tuple(alpha) != tuple(beta):
        return 0.0
    n = len(alpha)
    num = math.prod(math.factorial(a) for a in alpha)
    return math.pi**n * num / math.factorial(n + sum(alpha))


def monomial_sphere_integral(alpha: Sequence[int], beta: Sequence[int]) -> float:
    if tuple(alpha) != tuple(beta):
        return 0.0
    n = len(alpha)
    num = math.prod(math.factorial(a) for a in alpha)
    return 2 * math.pi**n * num / math.factorial(n - 1 + sum(alpha))
