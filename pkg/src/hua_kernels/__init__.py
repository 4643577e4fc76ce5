"""Reproducing kernels of the unit disc and ball, Hua's positive kernels and the Berezin transform."""

from .geometry import (
    Composite,
    DomainSpec,
    Identity,
    Moebius,
    Unitary,
    admissible_contains,
    apply_automorphism,
    complex_jacobian_det,
    contains,
    hermitian_dot,
    quasi_ball_volume,
    rho,
)
from .kernels import (
    berezin_law_residual,
    bergman_kernel,
    bergman_law_residual,
    poisson_bergman,
    poisson_szego,
    szego_kernel,
)
from .metric import (
    bergman_metric,
    divergence_residual,
    hua_partials,
    invariant_laplacian,
    inverse_metric,
    metric_determinant,
)
from .polynomial import TestFunction, parse_polynomial
from .quadrature import QuadratureSpec, convergence_table, integrate_ball, integrate_sphere
from .report import CheckRecord, Report
from .transforms import (
    ApproachPath,
    berezin_transform,
    berezin_transform_mobius_form,
    boundary_approach,
    domination_report,
    dual_mass,
    maximal_function,
    poisson_szego_integral,
    psh_probe,
    radial_path,
    shell_integral,
    spherical_mean,
    tangential_path,
)

__version__ = "0.1.0"
