"""Closed-form Bergman, Szego, Poisson-Szego and Poisson-Bergman kernels on the disc and ball.

All kernels broadcast over leading axes of ``z`` and ``zeta``.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Automorphism, DomainSpec, as_point, complex_jacobian_det, hermitian_dot, norm_sq

# below this |1 - <z, zeta>| powers are formed through exp/log
LOG_SPACE_THRESHOLD = 1e-6

KERNEL_IDS = ("bergman", "szego", "poisson_szego", "poisson_bergman")


class KernelPoleError(ZeroDivisionError):
    """Raised when <z, zeta> = 1, i.e. both arguments sit at the same boundary point."""


def bergman_constant(n: int) -> float:
    return math.factorial(n) / math.pi**n


def szego_constant(n: int) -> float:
    return math.factorial(n - 1) / (2 * math.pi**n)


def _one_minus_dot(domain: DomainSpec, z, zeta) -> np.ndarray:
    z = as_point(z, domain.n)
    zeta = as_point(zeta, domain.n)
    d = 1.0 - hermitian_dot(z, zeta)
    d = np.asarray(d)
    if np.any(d == 0):
        raise KernelPoleError("kernel pole: <z, zeta> = 1")
    return d


def _inverse_power(d: np.ndarray, p: int) -> np.ndarray:
    """d**(-p) for complex d, switching to log space near the pole."""
    out = np.empty(d.shape, dtype=complex)
    small = np.abs(d) < LOG_SPACE_THRESHOLD
    big = ~small
    out[big] = d[big] ** (-p)
    if np.any(small):
        ds = d[small]
        out[small] = np.exp(-p * (np.log(np.abs(ds)) + 1j * np.angle(ds)))
    return out


def _abs_inverse_power(d: np.ndarray, p: int) -> np.ndarray:
    a = np.abs(d)
    out = np.empty(a.shape)
    small = a < LOG_SPACE_THRESHOLD
    out[~small] = a[~small] ** (-p)
    out[small] = np.exp(-p * np.log(a[small]))
    return out


def _scalar(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def bergman_kernel(domain: DomainSpec, z, zeta):
    """K(z, zeta) = (n!/pi^n) (1 - <z, zeta>)^-(n+1)."""
    d = _one_minus_dot(domain, z, zeta)
    return _scalar(bergman_constant(domain.n) * _inverse_power(d, domain.n + 1))


def szego_kernel(domain: DomainSpec, z, zeta):
    """S(z, zeta) = ((n-1)!/(2 pi^n)) (1 - <z, zeta>)^-n.

    The constant makes the boundary integral of S(0, .) equal to one.
    """
    d = _one_minus_dot(domain, z, zeta)
    return _scalar(szego_constant(domain.n) * _inverse_power(d, domain.n))


def poisson_szego(domain: DomainSpec, z, zeta):
    """Closed form c_n (1 - |z|^2)^n / |1 - <z, zeta>|^(2n)."""
    n = domain.n
    d = _one_minus_dot(domain, z, zeta)
    w = (1.0 - norm_sq(as_point(z))) ** n
    return _scalar(szego_constant(n) * w * _abs_inverse_power(d, 2 * n))


def poisson_szego_quotient(domain: DomainSpec, z, zeta):
    """Hua's quotient |S(z, zeta)|^2 / S(z, z)."""
    s = szego_kernel(domain, z, zeta)
    return _scalar(np.abs(s) ** 2 / np.real(szego_kernel(domain, z, z)))


def poisson_bergman(domain: DomainSpec, z, zeta):
    """Closed form (n!/pi^n) (1 - |z|^2)^(n+1) / |1 - <z, zeta>|^(2n+2)."""
    n = domain.n
    d = _one_minus_dot(domain, z, zeta)
    w = (1.0 - norm_sq(as_point(z))) ** (n + 1)
    return _scalar(bergman_constant(n) * w * _abs_inverse_power(d, 2 * n + 2))


def poisson_bergman_quotient(domain: DomainSpec, z, zeta):
    """Hua's quotient |K(z, zeta)|^2 / K(z, z)."""
    k = bergman_kernel(domain, z, zeta)
    return _scalar(np.abs(k) ** 2 / np.real(bergman_kernel(domain, z, z)))


def evaluate(kernel: str, domain: DomainSpec, z, zeta):
    table = {
        "bergman": bergman_kernel,
        "szego": szego_kernel,
        "poisson_szego": poisson_szego,
        "poisson_bergman": poisson_bergman,
    }
    try:
        fn = table[kernel.replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown kernel {kernel!r}; choose from {KERNEL_IDS}") from None
    return fn(domain, z, zeta)


def bergman_law_residual(phi: Automorphism, z, zeta, step: float = 1e-5) -> float:
    """Relative residual of det J(z) K(phi z, phi zeta) conj(det J(zeta)) = K(z, zeta) on the ball."""
    z = as_point(z)
    zeta = as_point(zeta)
    dom = DomainSpec.ball(z.shape[-1]) if z.shape[-1] > 1 else DomainSpec.disc()
    lhs = (
        complex_jacobian_det(phi, z, step)
        * bergman_kernel(dom, phi(z), phi(zeta))
        * np.conj(complex_jacobian_det(phi, zeta, step))
    )
    rhs = bergman_kernel(dom, z, zeta)
    return float(abs(lhs - rhs) / abs(rhs))


def berezin_law_residual(phi: Automorphism, z, zeta, step: float = 1e-5) -> float:
    """Relative residual of B(phi z, phi zeta) |det J(zeta)|^2 = B(z, zeta)."""
    z = as_point(z)
    zeta = as_point(zeta)
    dom = DomainSpec.ball(z.shape[-1]) if z.shape[-1] > 1 else DomainSpec.disc()
    lhs = poisson_bergman(dom, phi(z), phi(zeta)) * abs(complex_jacobian_det(phi, zeta, step)) ** 2
    rhs = poisson_bergman(dom, z, zeta)
    return float(abs(lhs - rhs) / abs(rhs))
