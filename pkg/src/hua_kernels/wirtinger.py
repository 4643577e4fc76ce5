"""Fourth-order central differences for Wirtinger derivatives of non-holomorphic functions.

A function of z in C^n is treated as a function of 2n real coordinates
(x_1..x_n, y_1..y_n). ``f`` must accept an ``(m, n)`` complex array and
return an ``(m, ...)`` array.
"""

from __future__ import annotations

import numpy as np

_D1 = ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12))
_D2 = ((-2, -1 / 12), (-1, 16 / 12), (0, -30 / 12), (1, 16 / 12), (2, -1 / 12))


def _direction(n: int, a: int) -> np.ndarray:
    e = np.zeros(n, dtype=complex)
    if a < n:
        e[a] = 1.0
    else:
        e[a - n] = 1j
    return e


def real_gradient(f, z: np.ndarray, h: float) -> np.ndarray:
    """Array of shape (2n, ...) with the partials along x_1..x_n, y_1..y_n."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    pts = []
    for a in range(2 * n):
        e = _direction(n, a)
        pts.extend(z + p * h * e for p, _ in _D1)
    vals = np.asarray(f(np.array(pts)))
    vals = vals.reshape((2 * n, len(_D1)) + vals.shape[1:])
    c = np.array([w for _, w in _D1])
    return np.einsum("p,ap...->a...", c, vals) / h


def real_hessian(f, z: np.ndarray, h: float) -> np.ndarray:
    """Real Hessian of a scalar function, shape (2n, 2n, ...)."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    m = 2 * n
    pts = []
    index = {}
    for a in range(m):
        ea = _direction(n, a)
        index[(a, a)] = len(pts)
        pts.extend(z + p * h * ea for p, _ in _D2)
    for a in range(m):
        for b in range(a + 1, m):
            ea, eb = _direction(n, a), _direction(n, b)
            index[(a, b)] = len(pts)
            pts.extend(z + p * h * ea + q * h * eb for p, _ in _D1 for q, _ in _D1)
    vals = np.asarray(f(np.array(pts)))
    tail = vals.shape[1:]
    H = np.zeros((m, m) + tail, dtype=vals.dtype)
    c2 = np.array([w for _, w in _D2])
    c1 = np.array([w for _, w in _D1])
    c11 = np.outer(c1, c1).ravel()
    for a in range(m):
        s = index[(a, a)]
        H[a, a] = np.tensordot(c2, vals[s : s + 5], axes=(0, 0)) / h**2
        for b in range(a + 1, m):
            s = index[(a, b)]
            H[a, b] = H[b, a] = np.tensordot(c11, vals[s : s + 16], axes=(0, 0)) / h**2
    return H


def d_z(f, z, h: float = 1e-4) -> np.ndarray:
    """Vector of d f / d z_k (k = 1..n)."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    g = real_gradient(f, z, h)
    return 0.5 * (g[:n] - 1j * g[n:])


def d_zbar(f, z, h: float = 1e-4) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    g = real_gradient(f, z, h)
    return 0.5 * (g[:n] + 1j * g[n:])


def mixed_hessian(f, z, h: float = 1e-3) -> np.ndarray:
    """Matrix M[k, j] = d^2 f / (d z_k d conj(z_j)).

    d_{z_k} d_{zbar_j} = (1/4)[(d_xk d_xj + d_yk d_yj) + i (d_xk d_yj - d_yk d_xj)].
    """
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    R = real_hessian(f, z, h)
    xx = R[:n, :n]
    yy = R[n:, n:]
    xy = R[:n, n:]
    yx = R[n:, :n]
    return 0.25 * ((xx + yy) + 1j * (xy - yx))


def holomorphic_hessian(f, z, h: float = 1e-3) -> np.ndarray:
    """Matrix d^2 f / (d z_k d z_j) (used only for diagnostics)."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1]
    R = real_hessian(f, z, h)
    xx = R[:n, :n]
    yy = R[n:, n:]
    xy = R[:n, n:]
    yx = R[n:, :n]
    return 0.25 * ((xx - yy) - 1j * (xy + yx))
