"""Points of C^n, the disc/ball domains, the boundary pseudometric and ball automorphisms.

Points are numpy complex arrays whose last axis is the coordinate axis, so
``z.shape == (..., n)``. Every function here broadcasts over leading axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

BOUNDARY_TOL = 1e-12


def as_point(z, n: int | None = None) -> np.ndarray:
    """Coerce ``z`` to a complex array with a trailing coordinate axis."""
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if n is not None and arr.shape[-1] != n:
        raise ValueError(f"expected points of dimension {n}, got {arr.shape[-1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point has non-finite entries")
    return arr


def basis(n: int, k: int) -> np.ndarray:
    e = np.zeros(n, dtype=complex)
    e[k] = 1.0
    return e


@dataclass(frozen=True)
class DomainSpec:
    """The unit disc (``kind='disc'``, n = 1) or the unit ball of C^n."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("disc", "ball"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if self.kind == "disc" and self.n != 1:
            raise ValueError("the disc has dimension 1")

    @classmethod
    def disc(cls) -> "DomainSpec":
        return cls("disc", 1)

    @classmethod
    def ball(cls, n: int) -> "DomainSpec":
        return cls("ball", n)

    def volume(self) -> float:
        return math.pi**self.n / math.factorial(self.n)

    def sphere_area(self) -> float:
        return 2 * math.pi**self.n / math.factorial(self.n - 1)


def hermitian_dot(z, w) -> np.ndarray | complex:
    """Sum_j z_j conj(w_j), broadcast over leading axes."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.shape[-1:] != w.shape[-1:]:
        raise ValueError(f"dimension mismatch: {z.shape[-1:]} vs {w.shape[-1:]}")
    out = np.sum(z * np.conj(w), axis=-1)
    return out[()] if out.ndim == 0 else out


def norm_sq(z) -> np.ndarray | float:
    z = np.asarray(z, dtype=complex)
    out = np.sum(z.real**2 + z.imag**2, axis=-1)
    return out[()] if out.ndim == 0 else out


def contains(domain: DomainSpec, z, closed: bool = False):
    z = as_point(z, domain.n)
    r2 = norm_sq(z)
    if closed:
        return r2 <= 1.0 + BOUNDARY_TOL
    return r2 < 1.0


def rho(z, zeta):
    """Boundary pseudometric |1 - <z, zeta>|^(1/2)."""
    return np.sqrt(np.abs(1.0 - hermitian_dot(z, zeta)))


def admissible_contains(P, alpha: float, z):
    """Membership of ``z`` in the aperture-``alpha`` admissible region at ``P``."""
    if alpha <= 1:
        raise ValueError("aperture must exceed 1")
    P = as_point(P)
    if abs(norm_sq(P) - 1.0) > BOUNDARY_TOL:
        raise ValueError("P must lie on the unit sphere")
    z = as_point(z, P.shape[-1])
    return np.abs(1.0 - hermitian_dot(z, P)) < alpha * (1.0 - norm_sq(z))


@dataclass
class MCEstimate:
    value: float
    stderr: float
    hits: int
    samples: int

    @property
    def empty(self) -> bool:
        return self.hits == 0


def sample_ball(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from the unit ball of C^n."""
    g = rng.standard_normal((size, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = rng.random(size) ** (1.0 / (2 * n))
    pts = g[:, :n] + 1j * g[:, n:]
    return pts * r[:, None]


def sample_sphere(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((size, 2 * n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g[:, :n] + 1j * g[:, n:]


def quasi_ball_volumes(z, radii: Sequence[float], domain: DomainSpec, samples: int, seed) -> list[MCEstimate]:
    """Rejection Monte Carlo volumes of beta_2(z, r) for several radii from one sample set."""
    z = as_point(z, domain.n)
    rng = np.random.default_rng(seed)
    pts = sample_ball(domain.n, samples, rng)
    dist = rho(z, pts)
    vol = domain.volume()
    out = []
    for r in radii:
        if r <= 0:
            raise ValueError("radius must be positive")
        hits = int(np.count_nonzero(dist < r))
        p = hits / samples
        out.append(MCEstimate(vol * p, vol * math.sqrt(p * (1 - p) / samples), hits, samples))
    return out


def quasi_ball_volume(z, r: float, domain: DomainSpec, mc) -> MCEstimate:
    """Monte Carlo estimate of V(beta_2(z, r)) using ``mc.samples`` and ``mc.seed``."""
    return quasi_ball_volumes(z, [r], domain, mc.samples, mc.seed)[0]


# -- automorphisms -----------------------------------------------------------


class Automorphism:
    kind = "abstract"

    def __call__(self, z) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(Automorphism):
    kind = "identity"

    def __call__(self, z):
        return np.array(z, dtype=complex)


@dataclass(frozen=True, eq=False)
class Unitary(Automorphism):
    U: np.ndarray
    kind = "unitary"

    def __post_init__(self):
        U = np.asarray(self.U, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise ValueError("unitary must be square")
        if np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))) > 1e-12:
            raise ValueError("matrix is not unitary to 1e-12")
        object.__setattr__(self, "U", U)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return z @ self.U.T


@dataclass(frozen=True, eq=False)
class Moebius(Automorphism):
    """The involution phi_a exchanging 0 and a.

    phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>) with P_a the orthogonal
    projection onto span(a), Q_a = I - P_a and s_a = sqrt(1 - |a|^2).
    """

    a: np.ndarray
    kind = "moebius"

    def __post_init__(self):
        a = as_point(self.a)
        if a.ndim != 1:
            raise ValueError("moebius centre must be a single point")
        if norm_sq(a) >= 1.0:
            raise ValueError("moebius centre must lie in the open ball")
        object.__setattr__(self, "a", a)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        a = self.a
        aa = norm_sq(a)
        za = hermitian_dot(z, a)
        denom = 1.0 - za
        if np.any(denom == 0):
            raise ZeroDivisionError("1 - <z, a> vanished")
        s = math.sqrt(1.0 - aa)
        if aa == 0.0:
            return -z
        proj = (za / aa)[..., None] * a
        return (a - proj - s * (z - proj)) / denom[..., None]


@dataclass(frozen=True)
class Composite(Automorphism):
    """Apply ``parts`` in order: the first element acts first."""

    parts: tuple = field(default_factory=tuple)
    kind = "composite"

    def __call__(self, z):
        out = np.asarray(z, dtype=complex)
        for p in self.parts:
            out = p(out)
        return out


def apply_automorphism(phi: Automorphism, z) -> np.ndarray:
    return phi(z)


def _check_step(step: float) -> None:
    if not 1e-7 <= step <= 1e-3:
        raise ValueError("step must lie in [1e-7, 1e-3]")


def complex_jacobian_matrix(phi: Automorphism, z, step: float = 1e-5) -> np.ndarray:
    """Matrix of holomorphic partials d phi_j / d z_k by central differences."""
    _check_step(step)
    z = as_point(z)
    n = z.shape[-1]
    if isinstance(phi, Identity):
        return np.eye(n, dtype=complex)
    if isinstance(phi, Unitary):
        return phi.U.copy()
    # phi is holomorphic, so a real step along e_k gives d/dz_k.
    shifts = step * np.eye(n)
    plus = phi(z[None, :] + shifts)
    minus = phi(z[None, :] - shifts)
    J = ((plus - minus) / (2 * step)).T
    if not np.all(np.isfinite(J)):
        raise FloatingPointError("non-finite Jacobian entries")
    return J


def complex_jacobian_det(phi: Automorphism, z, step: float = 1e-5) -> complex:
    _check_step(step)
    if isinstance(phi, Identity):
        return 1.0 + 0j
    if isinstance(phi, Unitary):
        return complex(np.linalg.det(phi.U))
    return complex(np.linalg.det(complex_jacobian_matrix(phi, z, step)))


def unitary_to_e1(v) -> np.ndarray:
    """A unitary U with U v = |v| e_1 (Householder reflection, up to a phase fix)."""
    v = as_point(v)
    n = v.shape[-1]
    nv = math.sqrt(norm_sq(v))
    if nv == 0:
        return np.eye(n, dtype=complex)
    u = v / nv
    # rotate the phase of the first coordinate away, then reflect
    phase = u[0] / abs(u[0]) if abs(u[0]) > 0 else 1.0
    D = np.eye(n, dtype=complex)
    D[0, 0] = np.conj(phase)
    w = D @ u
    diff = w - basis(n, 0)
    dd = norm_sq(diff)
    if dd < 1e-300:
        return D
    H = np.eye(n, dtype=complex) - 2.0 * np.outer(diff, diff.conj()) / dd
    return H @ D


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(A)
    d = np.diag(R)
    return Q * (d / np.abs(d))
