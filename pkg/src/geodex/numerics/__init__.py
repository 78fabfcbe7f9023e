"""Complex special functions and quadrature engines used by every module."""

from .bessel import bessel_j, bessel_j_err, bessel_j_imag_pair
from .hyp2f1 import gauss_2f1
from .quadrature import (ContourSpec, adaptive_integrate,
                         damped_oscillatory_quadrature, mellin_barnes)
from .series import SeriesValue, kahan_add
from .special import (EULER_GAMMA, complex_gamma, digamma, dirichlet_l_real,
                      gammaquot_exp, hurwitz_zeta, kronecker_character,
                      log_gamma, log_sin, riemann_zeta)

__all__ = [
    "EULER_GAMMA",
    "ContourSpec",
    "SeriesValue",
    "adaptive_integrate",
    "bessel_j",
    "bessel_j_err",
    "bessel_j_imag_pair",
    "complex_gamma",
    "damped_oscillatory_quadrature",
    "digamma",
    "dirichlet_l_real",
    "gammaquot_exp",
    "gauss_2f1",
    "hurwitz_zeta",
    "kahan_add",
    "kronecker_character",
    "log_gamma",
    "log_sin",
    "mellin_barnes",
    "riemann_zeta",
]
