"""Bergman metric of the ball, its inverse and determinant, and the invariant Laplacian.

Also holds the closed-form derivative table of the unnormalised Poisson-Szego
body (1 - |z|^2)^2 / |1 - z_1|^4 in C^2 and its finite-difference twin.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import wirtinger
from .geometry import DomainSpec, as_point, norm_sq
from .kernels import bergman_kernel
from .polynomial import TestFunction


def _check_interior(z):
    if np.any(norm_sq(z) >= 1.0):
        raise ValueError("point must lie in the open ball")


def bergman_metric(z, n: int | None = None) -> np.ndarray:
    """g_jk = (n+1)/(1-|z|^2)^2 [delta_jk (1-|z|^2) + conj(z_j) z_k]; broadcasts to (..., n, n)."""
    z = as_point(z, n)
    n = z.shape[-1]
    _check_interior(z)
    d = 1.0 - norm_sq(z)
    d = np.asarray(d)[..., None, None]
    outer = np.conj(z)[..., :, None] * z[..., None, :]
    return (n + 1) / d**2 * (np.eye(n) * d + outer)


def inverse_metric(z, n: int | None = None) -> np.ndarray:
    """g^jk = (1-|z|^2)/(n+1) (delta_jk - conj(z_j) z_k)."""
    z = as_point(z, n)
    n = z.shape[-1]
    _check_interior(z)
    d = np.asarray(1.0 - norm_sq(z))[..., None, None]
    outer = np.conj(z)[..., :, None] * z[..., None, :]
    return d / (n + 1) * (np.eye(n) - outer)


def metric_determinant(z, n: int | None = None):
    """(n+1)^n / (1-|z|^2)^(n+1)."""
    z = as_point(z, n)
    n = z.shape[-1]
    _check_interior(z)
    return (n + 1) ** n / (1.0 - norm_sq(z)) ** (n + 1)


def log_bergman_diagonal(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    dom = DomainSpec.disc() if n == 1 else DomainSpec.ball(n)
    return np.log(np.real(bergman_kernel(dom, z, z)))


def metric_from_potential(z, step: float = 1e-4) -> np.ndarray:
    """Finite-difference d^2 log K(z,z) / dz_j dzbar_k, the oracle for :func:`bergman_metric`."""
    return wirtinger.mixed_hessian(log_bergman_diagonal, as_point(z), step)


def _g_times_inverse(z):
    z = np.asarray(z, dtype=complex)
    return metric_determinant(z)[..., None, None] * inverse_metric(z)


def divergence_components(z, step: float = 1e-4) -> tuple[np.ndarray, np.ndarray]:
    """(sum_j d/dzbar_j (g g^jk) for each k,  sum_k d/dz_k (g g^jk) for each j)."""
    z = as_point(z)
    _check_interior(z)
    dzb = wirtinger.d_zbar(_g_times_inverse, z, step)  # [j, row, col]
    dz = wirtinger.d_z(_g_times_inverse, z, step)
    n = z.shape[-1]
    first = np.array([sum(dzb[j, j, k] for j in range(n)) for k in range(n)])
    second = np.array([sum(dz[k, j, k] for k in range(n)) for j in range(n)])
    return first, second


def divergence_residual(z, n: int | None = None, step: float = 1e-4) -> float:
    """Largest modulus among both contracted divergence identities at ``z``."""
    z = as_point(z, n)
    if norm_sq(z) > 0.81 + 1e-12:
        raise ValueError("divergence checks are restricted to |z| <= 0.9")
    a, b = divergence_components(z, step)
    return float(max(np.max(np.abs(a)), np.max(np.abs(b))))


def invariant_laplacian(f, z, n: int | None = None, step: float = 1e-3) -> complex:
    """(4/(n+1))(1-|z|^2) sum_jk (delta_jk - conj(z_j) z_k) d^2 f / dz_k dzbar_j.

    ``f`` is either a :class:`TestFunction` (differentiated exactly) or a
    vectorised callable (differentiated by fourth-order central differences).
    """
    z = as_point(z, n)
    n = z.shape[-1]
    if norm_sq(z) > 0.95**2 + 1e-12:
        raise ValueError("the Laplacian is only evaluated for |z| <= 0.95")
    if not (1e-6 <= step <= 1e-2):
        raise ValueError("finite-difference step outside [1e-6, 1e-2]")
    if isinstance(f, TestFunction):
        M = np.array([[f.d_zbar(j).d_z(k)(z) for j in range(n)] for k in range(n)])
    else:
        M = wirtinger.mixed_hessian(f, z, step)
    coef = np.eye(n) - np.conj(z)[:, None] * z[None, :]  # [j, k]
    total = np.sum(coef * M.T)
    return complex(4.0 / (n + 1) * (1.0 - norm_sq(z)) * total)


# -- the derivative table for P(z, e_1) in C^2 --------------------------------


@dataclass
class DerivativeTable:
    dP_dzb1: complex
    d2P_dzb1_dz1: complex
    d2P_dzb1_dz2: complex
    d2P_dz1_dzb2: complex
    dP_dz2: complex
    d2P_dz2_dzb2: complex

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)], dtype=complex)

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def hua_body(z) -> np.ndarray:
    """(1 - |z|^2)^2 / |1 - z_1|^4, i.e. P(z, e_1) without its constant."""
    z = np.asarray(z, dtype=complex)
    return (1.0 - norm_sq(z)) ** 2 / np.abs(1.0 - z[..., 0]) ** 4


def _table_closed_form(z) -> DerivativeTable:
    z1, z2 = complex(z[0]), complex(z[1])
    w1, w2 = z1.conjugate(), z2.conjugate()
    a1, a2 = abs(z1) ** 2, abs(z2) ** 2
    r = a1 + a2
    q = abs(1 - z1)
    d6, d4 = q**6, q**4
    dP_dzb1 = -2 * (1 - z1) * (1 - r) * (-1 + z1 + a2) / d6
    d2_11 = -2 / d6 * (-a1 - a1 * a2 + 3 * a2 - z1 * a2 - 2 * a2**2 - 1 + z1 + w1 - w1 * a2)
    d2_b1_2 = -2 * (1 - z1) / d6 * (2 * w2 - w2 * z1 - 2 * w2 * a2 - w2 * a1)
    d2_1_b2 = -2 * (1 - w1) / d6 * (2 * z2 - z2 * w1 - 2 * z2 * a2 - z2 * a1)
    # the printed line carries z2 where conj(z2) belongs; see misprinted_dP_dz2
    dP_dz2 = (-2 * w2 + 2 * a1 * w2 + 2 * a2 * w2) / d4
    d2_22 = (-2 + 2 * a1 + 4 * a2) / d4
    return DerivativeTable(dP_dzb1, d2_11, d2_b1_2, d2_1_b2, dP_dz2, d2_22)


def misprinted_dP_dz2(z) -> complex:
    """The commonly quoted fifth table entry for dP/dz2, verbatim; it equals dP/dzbar_2."""
    z1, z2 = complex(z[0]), complex(z[1])
    a1, a2 = abs(z1) ** 2, abs(z2) ** 2
    return (-2 * z2 + 2 * a1 * z2 + 2 * a2 * z2) / abs(1 - z1) ** 4


def _table_finite_difference(z, step: float) -> DerivativeTable:
    g_zb = wirtinger.d_zbar(hua_body, z, step / 10)
    g_z = wirtinger.d_z(hua_body, z, step / 10)
    M = wirtinger.mixed_hessian(hua_body, z, step)  # M[k, j] = d_zk d_zbar_j
    return DerivativeTable(
        dP_dzb1=complex(g_zb[0]),
        d2P_dzb1_dz1=complex(M[0, 0]),
        d2P_dzb1_dz2=complex(M[1, 0]),
        d2P_dz1_dzb2=complex(M[0, 1]),
        dP_dz2=complex(g_z[1]),
        d2P_dz2_dzb2=complex(M[1, 1]),
    )


def hua_partials(z, mode: str = "closed_form", step: float = 1e-3) -> DerivativeTable:
    """Six first/second Wirtinger partials of the Poisson-Szego body at ``z`` in C^2."""
    z = as_point(z, 2)
    if z[0] == 1:
        raise ZeroDivisionError("pole at z_1 = 1")
    if mode == "closed_form":
        return _table_closed_form(z)
    if mode == "finite_difference":
        return _table_finite_difference(z, step)
    raise ValueError(f"unknown mode {mode!r}")


def laplacian_from_table(z, table: DerivativeTable) -> complex:
    """The four-term combination (4/3)(1-|z|^2)[(1-|z1|^2)P_11 - conj(z1) z2 P_{z2 zb1} - conj(z2) z1 P_{z1 zb2} + (1-|z2|^2)P_22]."""
    z = as_point(z, 2)
    z1, z2 = complex(z[0]), complex(z[1])
    pre = 4.0 / 3.0 * (1.0 - abs(z1) ** 2 - abs(z2) ** 2)
    return complex(
        pre
        * (
            (1 - abs(z1) ** 2) * table.d2P_dzb1_dz1
            + (-z1.conjugate() * z2) * table.d2P_dzb1_dz2
            + (-z2.conjugate() * z1) * table.d2P_dz1_dzb2
            + (1 - abs(z2) ** 2) * table.d2P_dz2_dzb2
        )
    )


def table_relative_residual(a: DerivativeTable, b: DerivativeTable) -> np.ndarray:
    """Per-entry |a - b| scaled by max(|b_i|, 1e-3 * max_i |b_i|)."""
    x, y = a.as_array(), b.as_array()
    scale = np.maximum(np.abs(y), 1e-3 * np.max(np.abs(y)))
    return np.abs(x - y) / scale


def is_positive_definite(H: np.ndarray) -> bool:
    return bool(np.all(np.linalg.eigvalsh(H) > 0))
