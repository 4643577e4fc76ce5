"""Acceptance criteria 1 to 15, each at its stated tolerance.

Every test prints one ``criterion NN PASS|FAIL`` line to the terminal. The
full harness is run twice per session; criteria 2 to 14 read the first run's
reports and criterion 15 compares both runs' bytes.
"""

import math
import time

import numpy as np
import pytest

from hua_kernels import kernels, transforms
from hua_kernels.geometry import DomainSpec
from hua_kernels.harness.config import load_config
from hua_kernels.harness.suites import run_all
from hua_kernels.polynomial import parse_polynomial
from hua_kernels.report import reports_to_json

DISC = DomainSpec.disc()
B2 = DomainSpec.ball(2)


@pytest.fixture(scope="module")
def harness():
    runs = []
    for _ in range(2):
        t = time.perf_counter()
        reports, summary = run_all(load_config())
        elapsed = time.perf_counter() - t
        summary.pop("wall_time")
        runs.append((reports, summary, elapsed, reports_to_json(reports, summary)))
    return runs


@pytest.fixture(scope="module")
def checks(harness):
    reports = harness[0][0]
    table = {}
    for r in reports:
        assert r.error is None, f"{r.suite} crashed: {r.error}"
        for c in r.checks:
            table[(r.suite, c.name)] = float(c.residual)
    return table


def verdict(request, number, ok, text):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {text}"
    with request.config.pluginmanager.getplugin("capturemanager").global_and_fixture_disabled():
        print("\n" + line, flush=True)
    assert ok, line


def test_criterion_01_bergman_reproduction(request, checks):
    f = parse_polynomial("z1^2 * z2", 2)
    z = np.array([0.2 + 0.1j, -0.3j])
    transforms.berezin_transform(f, z, B2)
    t = time.perf_counter()
    err = abs(transforms.berezin_transform(f, z, B2) - f(z))
    elapsed = time.perf_counter() - t
    rand = checks[("reproduce_bergman", "ball2_random_holomorphic")]
    ok = err <= 1e-8 and elapsed < 1.0 and rand <= 1e-8
    verdict(request, 1, ok, f"example err={err:.2e} time={elapsed:.3f}s; 20 random f max err={rand:.2e}")


def test_criterion_02_szego_reproduction(request, checks):
    names = ["disc_monomials", "disc_real_part", "ball2_constant", "ball2_coordinate", "ball2_random_holomorphic"]
    worst = max(checks[("reproduce_szego", n)] for n in names)
    verdict(request, 2, worst <= 1e-10, f"max err={worst:.2e} (tol 1e-10)")


def test_criterion_03_normalization(request, checks):
    worst = max(checks[("normalization", "disc1_unit_mass")], checks[("normalization", "ball2_unit_mass")])
    verdict(request, 3, worst <= 1e-8, f"max |mass-1|={worst:.2e} (tol 1e-8)")


def test_criterion_04_disc_poisson(request):
    r = np.linspace(0.0, 0.95, 64)
    z = r * np.exp(2j * math.pi * 0.6180339887498949 * np.arange(64))
    t = np.linspace(0, 2 * math.pi, 64, endpoint=False)
    Z, E = z[:, None], np.exp(1j * t)[None, :]
    ours = kernels.poisson_szego(DISC, Z[..., None], E[..., None])
    classical = (1 - abs(Z) ** 2) / (2 * math.pi * abs(E - Z) ** 2)
    dev = float(np.max(np.abs(ours - classical)))
    verdict(request, 4, dev <= 1e-14, f"max abs deviation={dev:.2e} over 64x64 grid (tol 1e-14)")


def test_criterion_05_transformation_laws(request, checks):
    moeb = max(checks[(s, n)] for s in ("law_bergman", "law_berezin") for n in ("moebius_random", "moebius_fixed", "composite"))
    unit = max(checks[(s, n)] for s in ("law_bergman", "law_berezin") for n in ("unitary", "identity"))
    verdict(request, 5, moeb <= 1e-6 and unit <= 1e-12, f"moebius={moeb:.2e} (tol 1e-6) unitary={unit:.2e} (tol 1e-12)")


def test_criterion_06_annihilation(request, checks):
    cf = checks[("annihilation", "laplacian_closed_form")]
    fd = checks[("annihilation", "laplacian_finite_difference")]
    agree = checks[("annihilation", "table_fd_agreement")]
    ok = cf <= 1e-6 and fd <= 1e-6 and agree <= 1e-6
    verdict(request, 6, ok, f"closed form={cf:.2e} finite difference={fd:.2e} agreement={agree:.2e} (tol 1e-6)")


def test_criterion_07_metric_identities(request, checks):
    inv = checks[("metric_identities", "inverse_product")]
    det = max(checks[("metric_identities", "determinant_closed_form")], checks[("metric_identities", "determinant_numeric")])
    hess = checks[("metric_identities", "potential_hessian")]
    div = max(checks[("divergence", "n2_random")], checks[("divergence", "n2_center")], checks[("divergence", "n1_random")])
    ok = inv <= 1e-12 and det <= 1e-12 and hess <= 1e-6 and div <= 1e-6
    verdict(request, 7, ok, f"g*ginv={inv:.1e} det={det:.1e} hessian={hess:.1e} divergence={div:.1e}")


def test_criterion_08_mean_value_and_fixed_point(request, checks):
    mean = max(checks[("mean_value", "disc1_pluriharmonic_means")], checks[("mean_value", "ball2_pluriharmonic_means")])
    fixed = max(checks[("fixed_point", "disc1_berezin_fixed")], checks[("fixed_point", "ball2_berezin_fixed")])
    verdict(request, 8, mean <= 1e-8 and fixed <= 1e-8, f"means={mean:.2e} fixed point={fixed:.2e} (tol 1e-8)")


def test_criterion_09_pseudometric(request, checks):
    viol = checks[("pseudometric", "sphere_triangle_violations")]
    quasi = checks[("pseudometric", "interior_quasi_constant")]
    doubling = checks[("pseudometric", "doubling_ratio")]
    ok = viol == 0 and math.isfinite(quasi) and math.isfinite(doubling) and checks[("pseudometric", "doubling_empty_balls")] == 0
    verdict(request, 9, ok, f"violations={viol:g} quasi constant={quasi:.3f} doubling ratio={doubling:.1f}")


def test_criterion_10_domination(request, checks):
    ratios = {n: v for (s, n), v in checks.items() if s == "maximal_domination" and n.startswith("ratio_max")}
    C = checks[("maximal_domination", "empirical_C")]
    ok = bool(ratios) and all(math.isfinite(v) for v in ratios.values()) and C <= 100
    verdict(request, 10, ok, f"empirical C={C:.4f} over {len(ratios)} functions (bound 100)")


def test_criterion_11_boundary_behaviour(request, checks):
    dev = {n: checks[("admissible_limits", f"{n}_deviation_near_boundary")] for n in ("radial", "tangential")}
    ok = all(v <= 0.01 for v in dev.values())
    verdict(request, 11, ok, f"radial={dev['radial']:.2e} tangential={dev['tangential']:.2e} once 1-|z|<=1e-3 (tol 0.01)")


def test_criterion_12_mass_bounds(request, checks):
    rows = {n: v for (s, n), v in checks.items() if s == "mass_bounds" and "_dual_mass[" in n}
    over = {n: v for n, v in rows.items() if v > 1 + 1e-8}
    center = abs(transforms.dual_mass([0.0], DISC) - 1 / 3)
    ok = not over and center <= 1e-8 and len(rows) == 8
    text = ", ".join(f"{n}={v:.6f}" for n, v in over.items()) or "all rows <= 1"
    verdict(request, 12, ok, f"{text}; disc centre |m-1/3|={center:.1e}")


def test_criterion_13_shell_estimate(request, checks):
    ratio = checks[("shell_estimate", "uniform_bound_ratio")]
    growth = checks[("shell_estimate", "contrast_growth")]
    verdict(request, 13, ratio <= 4 and growth >= 10, f"max/min={ratio:.3f} (<=4) contrast growth={growth:.1f} (>=10)")


def test_criterion_14_plurisubharmonicity(request, checks):
    slot = checks[("psh", "slot_violations")]
    diag = checks[("psh", "diagonal_violations")]
    verdict(request, 14, slot == 0 and diag == 0, f"slot violations={slot:g} diagonal violations={diag:g} (slack 1e-10)")


def test_criterion_15_harness(request, harness):
    times = [h[2] for h in harness]
    same = harness[0][3] == harness[1][3]
    ok = max(times) <= 300 and same
    verdict(request, 15, ok, f"run_all times={times[0]:.1f}s,{times[1]:.1f}s (<=300) byte-identical JSON={same}")
