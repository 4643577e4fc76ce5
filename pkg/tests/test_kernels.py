import math

import numpy as np
import pytest
from conftest import random_ball

from hua_kernels import geometry as G
from hua_kernels import kernels as K
from hua_kernels.quadrature import QuadratureSpec, integrate_sphere

DISC = G.DomainSpec.disc()
B2 = G.DomainSpec.ball(2)


def test_bergman_center_values():
    assert K.bergman_kernel(DISC, [0], [0]) == pytest.approx(1 / math.pi, rel=1e-15)
    assert K.bergman_kernel(B2, np.zeros(2), np.zeros(2)) == pytest.approx(2 / math.pi**2, rel=1e-15)


def test_bergman_disc_diagonal():
    assert K.bergman_kernel(DISC, [0.5], [0.5]) == pytest.approx(16 / (9 * math.pi), rel=1e-15)


def test_bergman_reproduces_monomials_disc():
    # K(z, .) = sum_k (k+1)/pi z^k conj(zeta)^k, so <z^m, K(., z)> = z^m
    z = 0.4 + 0.3j
    q = QuadratureSpec(radial_order=48, angular_points=(256,))
    from hua_kernels.quadrature import integrate_ball

    for m in range(4):
        v = integrate_ball(lambda p: K.bergman_kernel(DISC, [z], p) * p[:, 0] ** m, DISC, q)
        assert abs(v - z**m) <= 1e-12


def test_szego_normalisation_by_quadrature():
    assert integrate_sphere(lambda s: K.szego_kernel(DISC, [0], s), 1) == pytest.approx(1, abs=1e-14)
    assert integrate_sphere(lambda s: K.szego_kernel(B2, np.zeros(2), s), 2) == pytest.approx(1, abs=1e-14)
    assert K.szego_kernel(DISC, [0], [1j]) == pytest.approx(1 / (2 * math.pi))
    assert K.szego_kernel(B2, np.zeros(2), G.basis(2, 1)) == pytest.approx(1 / (2 * math.pi**2))


def test_hermitian_symmetry(rng):
    z, w = random_ball(rng, 2, 100, 0.95), random_ball(rng, 2, 100, 0.95)
    for fn in (K.bergman_kernel, K.szego_kernel):
        a, b = fn(B2, z, w), np.conj(fn(B2, w, z))
        assert np.max(np.abs(a - b) / np.abs(a)) <= 1e-14


def test_diagonal_positive(rng):
    z = random_ball(rng, 2, 50, 0.99)
    for fn in (K.bergman_kernel, K.szego_kernel):
        v = fn(B2, z, z)
        assert np.all(np.real(v) > 0) and np.max(np.abs(np.imag(v))) < 1e-10 * np.max(np.abs(v))


def test_poisson_szego_examples():
    assert K.poisson_szego(DISC, [0], [np.exp(0.7j)]) == pytest.approx(1 / (2 * math.pi))
    v = K.poisson_szego(B2, 0.5 * G.basis(2, 0), G.basis(2, 0))
    assert v == pytest.approx(9 / (2 * math.pi**2), rel=1e-14)
    assert K.poisson_szego_quotient(B2, 0.5 * G.basis(2, 0), G.basis(2, 0)) == pytest.approx(v, rel=1e-14)


def test_disc_poisson_szego_is_classical_poisson():
    r = np.linspace(0, 0.95, 64)
    t = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    z = (r[:, None] * np.exp(1j * 0.3) * np.ones_like(t)[None, :]).ravel()
    th = np.broadcast_to(t, (64, 64)).ravel()
    P = K.poisson_szego(DISC, z[:, None], np.exp(1j * th)[:, None])
    classical = (1 - np.abs(z) ** 2) / np.abs(1 - z * np.exp(-1j * th)) ** 2 / (2 * np.pi)
    assert np.max(np.abs(P - classical)) <= 1e-14


def test_poisson_bergman_center_constant(rng):
    zeta = random_ball(rng, 2, 20, 1.0)
    np.testing.assert_allclose(K.poisson_bergman(B2, np.zeros(2), zeta), 2 / math.pi**2, rtol=1e-15)
    np.testing.assert_allclose(K.poisson_bergman(DISC, [0.0], random_ball(rng, 1, 20, 1.0)), 1 / math.pi, rtol=1e-15)


def test_quotient_vs_closed_form(rng):
    z, w = random_ball(rng, 2, 1000, 0.95), random_ball(rng, 2, 1000, 0.95)
    a, b = K.poisson_bergman(B2, z, w), K.poisson_bergman_quotient(B2, z, w)
    assert np.max(np.abs(a / b - 1)) <= 1e-12
    s = G.sample_sphere(2, 1000, rng)
    a, b = K.poisson_szego(B2, z, s), K.poisson_szego_quotient(B2, z, s)
    assert np.max(np.abs(a / b - 1)) <= 1e-12


def test_pole_reported():
    e1 = G.basis(2, 0)
    with pytest.raises(K.KernelPoleError):
        K.bergman_kernel(B2, e1, e1)
    with pytest.raises(ZeroDivisionError):
        K.szego_kernel(DISC, [1.0], [1.0])


def test_log_space_near_pole_is_finite():
    z = np.array([1 - 5e-7, 0])
    v = K.bergman_kernel(B2, z, G.basis(2, 0))
    direct = (2 / math.pi**2) / (5e-7) ** 3
    assert abs(v / direct - 1) < 1e-9


def test_evaluate_dispatch():
    z = np.array([0.1, 0.2])
    assert K.evaluate("poisson-bergman", B2, z, z) == K.poisson_bergman(B2, z, z)
    with pytest.raises(ValueError):
        K.evaluate("cauchy", B2, z, z)


def test_law_residuals(rng):
    z, w = random_ball(rng, 2, 2, 0.7)
    assert K.bergman_law_residual(G.Identity(), z, w) == 0
    U = G.Unitary(G.random_unitary(2, rng))
    assert K.bergman_law_residual(U, z, w) <= 1e-12
    assert K.berezin_law_residual(U, z, w) <= 1e-12
    M = G.Moebius(0.4 * G.basis(2, 0))
    assert K.bergman_law_residual(M, z, w) <= 1e-6
    assert K.berezin_law_residual(M, z, w) <= 1e-6


def test_law_residual_detects_wrong_kernel(monkeypatch, rng):
    z, w = random_ball(rng, 2, 2, 0.7)
    M = G.Moebius(np.array([0.3, 0.2j]))
    orig = K.bergman_kernel
    monkeypatch.setattr(K, "bergman_kernel", lambda d, a, b: orig(d, a, b) * (1 - G.hermitian_dot(a, b)) ** 0.1)
    assert K.bergman_law_residual(M, z, w) > 1e-4
