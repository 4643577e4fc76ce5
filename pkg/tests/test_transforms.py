import math
import time

import numpy as np
import pytest
from conftest import random_ball

from hua_kernels import transforms as T
from hua_kernels.geometry import DomainSpec, basis
from hua_kernels.polynomial import TestFunction, parse_polynomial
from hua_kernels.quadrature import QuadratureSpec, integrate_ball

DISC = DomainSpec.disc()
B2 = DomainSpec.ball(2)
E1 = basis(2, 0)

# Dual masses from the series
#   (n!/pi^n) sum_k ((n+1)_k/k!)^2 |zeta|^(2k) pi^n k! (n+1)!/(2n+k+1)!
# evaluated in 30-digit arithmetic.
DUAL_DISC = {0.0: 1 / 3, 0.3: 0.36597473270489529586, 0.6: 0.510581631970507498, 0.9: 1.3407702308168341568}
DUAL_BALL2 = {0.0: 0.1, 0.3: 0.11503159818091597019, 0.6: 0.18917150992354451839, 0.9: 0.78415505598420734624}

# sigma(S^3) (1-r^2) 2F1(p/2, p/2; 2; r^2) at r = 1 - gap, p = 3 and p = 4
SHELL_P3 = {1e-1: 22.910905022832837563, 1e-2: 24.660382591896247062, 1e-3: 25.057361030332468812,
            1e-4: 25.122322048286834105}
SHELL_P4 = {1e-1: 103.8905726430458802, 1e-2: 991.9200403104883034, 1e-3: 9874.5416719253212795,
            1e-4: 98700.979059846578517}
# n = 1: 2 pi 2F1(1, 1; 1; r^2) = 2 pi / (1 - r^2); n = 3, p = 4: 2 pi^3 (1-r^2)^2 2F1(2, 2; 3; r^2)
SHELL_N1 = {1e-3: 3143.164235707647062}
SHELL_N3 = {1e-2: 1.1589671944542802193}


def test_berezin_reproduces_example():
    f = parse_polynomial("z1^2 * z2", 2)
    z = np.array([0.2 + 0.1j, -0.3j])
    assert abs(T.berezin_transform(f, z, B2) - f(z)) <= 1e-8


def test_berezin_constant_and_real_part(rng):
    one = TestFunction.constant(2, 1)
    re = TestFunction.coordinate(2, 0).real_part()
    for z in random_ball(rng, 2, 3, 0.6):
        v = T.berezin_transform([one, re], z, B2)
        assert abs(v[0] - 1) <= 1e-8 and abs(v[1] - z[0].real) <= 1e-8


def test_berezin_rejects_far_points():
    with pytest.raises(ValueError):
        T.berezin_transform(TestFunction.constant(1, 1), [0.96], DISC)


def test_berezin_forms_agree(rng):
    fs = [parse_polynomial(s, 2) for s in ("z1*w1", "z1^2*w2 + w1", "z1*z2*w1*w2")]
    for z in random_ball(rng, 2, 4, 0.6):
        a = T.berezin_transform(fs, z, B2)
        b = T.berezin_transform_mobius_form(fs, z)
        assert np.max(np.abs(a - b)) <= 1e-6


def test_berezin_of_non_harmonic_function_differs():
    f = parse_polynomial("z1*w1", 1)
    z = np.array([0.5])
    assert abs(T.berezin_transform(f, z, DISC) - f(z)) > 1e-2


def test_mobius_form_at_origin_is_volume_average():
    f = parse_polynomial("z1*w1*z2*w2 + z1", 2)
    avg = integrate_ball(f, B2) / B2.volume()
    assert abs(T.berezin_transform_mobius_form(f, np.zeros(2)) - avg) <= 1e-14
    assert abs(T.berezin_transform_mobius_form(TestFunction.constant(2, 1), np.array([0.9, 0.3])) - 1) <= 1e-13


def test_poisson_szego_integral_examples():
    z = np.array([0.3, 0.2j])
    assert abs(T.poisson_szego_integral(TestFunction.constant(2, 1), z, B2) - 1) <= 1e-12
    assert abs(T.poisson_szego_integral(TestFunction.coordinate(2, 0), z, B2) - 0.3) <= 1e-10
    re = TestFunction.coordinate(1, 0).real_part()
    assert abs(T.poisson_szego_integral(re, [0.4 - 0.5j], DISC) - 0.4) <= 1e-12


def test_spherical_mean_examples():
    assert abs(T.spherical_mean(TestFunction.constant(2, 1), 0.5, 2) - 2 * math.pi**2) <= 1e-12
    f = (TestFunction.coordinate(2, 0) * TestFunction.coordinate(2, 0)).real_part()
    assert abs(T.spherical_mean(f, 0.8, 2)) <= 1e-12
    g = TestFunction.constant(2, 1) + TestFunction.coordinate(2, 0).real_part()
    assert abs(T.spherical_mean(g, 0.7, 2) - 2 * math.pi**2) <= 1e-10
    with pytest.raises(ValueError):
        T.spherical_mean(g, 1.0, 2)


def test_maximal_function_constants():
    mc = QuadratureSpec(kind="monte_carlo", samples=20_000, seed=4)
    m = T.maximal_function(TestFunction.constant(2, 1), np.array([0.5, 0]), B2, mc=mc)
    assert m.value == pytest.approx(1, abs=1e-14)
    m = T.maximal_function(TestFunction.constant(2, 3 - 4j), np.array([0.5, 0]), B2, mc=mc)
    assert m.value == pytest.approx(5, abs=1e-13)


def test_maximal_function_at_least_whole_ball_average():
    f = parse_polynomial("z1*w1", 2)
    mc = QuadratureSpec(kind="monte_carlo", samples=200_000, seed=9)
    m = T.maximal_function(f, np.zeros(2), B2, mc=mc)
    # (int |z1|^2 dV) / V = (pi^2/6) / (pi^2/2)
    assert m.value >= 1 / 3 - 0.01


def test_maximal_function_skips_empty_radii():
    mc = QuadratureSpec(kind="monte_carlo", samples=5_000, seed=1)
    m = T.maximal_function(TestFunction.constant(2, 1), 0.999 * E1, B2, radii=[1e-3, 1.0], mc=mc)
    assert m.skipped == [1e-3] and m.radius == 1.0
    with pytest.raises(ValueError):
        T.maximal_function(TestFunction.constant(2, 1), 0.999 * E1, B2, radii=[1e-3], mc=mc)


def test_domination_report_constant_ratio():
    q = QuadratureSpec(radial_order=8, slice_order=8, angular_points=(16, 16))
    mc = QuadratureSpec(kind="monte_carlo", samples=20_000)
    rep = T.domination_report([TestFunction.constant(2, 1)], [0.2 * E1, 0.9 * E1], B2, q, mc, labels=["one"])
    assert rep.checks[0].residual == pytest.approx(1, abs=1e-12) and rep.passed


def test_domination_skips_vanishing_maximal_function():
    q = QuadratureSpec(radial_order=8, slice_order=8, angular_points=(16, 16))
    mc = QuadratureSpec(kind="monte_carlo", samples=20_000)
    rep = T.domination_report([TestFunction.constant(2, 0)], [0.5 * E1], B2, q, mc, labels=["zero"])
    assert rep.checks[0].detail["skipped"] == 1 and not rep.passed


def test_paths_are_admissible():
    radial = T.radial_path(E1, 4.0, range(1, 11))
    assert radial.kind == "radial" and len(radial.steps) == 10
    tan = T.tangential_path(E1, 4.0, range(1, 12))
    gaps = 1 - np.linalg.norm(tan.steps, axis=1)
    # the c*sqrt(d) offset dominates at k = 1; gaps shrink from k = 2 on
    assert np.all(np.diff(gaps[1:]) < 0) and gaps[-1] <= 1e-3
    with pytest.raises(ValueError):
        T.ApproachPath(E1, 1.01, "custom", np.array([0.99 * basis(2, 1)]))


def test_boundary_approach_constant_has_zero_deviation():
    rows = T.boundary_approach(TestFunction.constant(2, 1), T.radial_path(E1, 4.0, range(1, 4)))
    assert all(r.deviation <= 1e-13 for r in rows)


def test_boundary_approach_radial():
    f = TestFunction.coordinate(2, 0).real_part()
    rows = T.boundary_approach(f, T.radial_path(E1, 4.0, [8, 10]))
    assert rows[-1].deviation <= 0.01 and rows[-1].escalated and not rows[-1].precision_limited


def test_boundary_approach_flags_precision():
    f = parse_polynomial("z1^6*w1^6", 2)
    q = QuadratureSpec(radial_order=4, slice_order=4, angular_points=(8, 8))
    rows = T.boundary_approach(f, T.radial_path(E1, 4.0, [10]), q=q, precision_tol=1e-12)
    assert rows[0].precision_limited


def test_dual_mass_against_series():
    for r, v in DUAL_DISC.items():
        assert abs(T.dual_mass([r], DISC) - v) <= 1e-8
    for r, v in DUAL_BALL2.items():
        assert abs(T.dual_mass(r * E1, B2) - v) <= 1e-8


def test_dual_mass_rotation_invariance():
    zeta = np.array([0.3 + 0.4j, 0.5j])
    r = np.linalg.norm(zeta)
    assert abs(T.dual_mass(zeta, B2) - T.dual_mass(r * E1, B2)) <= 1e-15


def test_shell_integral_against_hypergeometric():
    for gap, v in SHELL_P3.items():
        assert abs(T.shell_integral((1 - gap) * E1, 2).value / v - 1) <= 1e-11
    for gap, v in SHELL_P4.items():
        assert abs(T.shell_integral((1 - gap) * E1, 2, exponent=4).value / v - 1) <= 1e-11
    for gap, v in SHELL_N1.items():
        assert abs(T.shell_integral([1 - gap], 1).value / v - 1) <= 1e-11
    for gap, v in SHELL_N3.items():
        z = np.zeros(3)
        z[0] = 1 - gap
        assert abs(T.shell_integral(z, 3).value / v - 1) <= 1e-11
    assert abs(T.shell_integral(np.zeros(2), 2).value - 2 * math.pi**2) <= 1e-12


def test_shell_integral_depends_on_modulus_only():
    z = np.array([0.6 + 0.3j, -0.5j])
    w = np.linalg.norm(z) * E1
    assert abs(T.shell_integral(z, 2).value / T.shell_integral(w, 2).value - 1) <= 1e-13


def test_psh_probe_examples():
    c, m = T.psh_probe(np.zeros(2), np.array([0.2, 0.1j]), np.array([1.0, 1.0]), 0.05)
    assert c == pytest.approx(m, abs=1e-15)
    c, m = T.psh_probe([0.5], [0.0], [1.0], 0.1)
    assert c <= m
    c, m = T.psh_probe(None, np.array([0.3, 0.1]), np.array([0.0, 1j]), 0.05, variant="diagonal")
    assert c <= m
    with pytest.raises(ValueError):
        T.psh_probe([0.5], [0.95], [1.0], 0.1)
    with pytest.raises(ValueError):
        T.psh_probe([0.5], [0.0], [1.0], 0.1, variant="edge")


def test_reproducing_example_runtime():
    f = parse_polynomial("z1^2 * z2", 2)
    z = np.array([0.2 + 0.1j, -0.3j])
    T.berezin_transform(f, z, B2)  # warm rule cache
    t = time.perf_counter()
    T.berezin_transform(f, z, B2)
    assert time.perf_counter() - t < 1.0
