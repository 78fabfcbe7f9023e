"""Closed transform forms against their defining integrals.

The test function phi(x) = (sinh beta/pi) x e^{i x cosh beta} has closed
transforms phi_hat(t) = sinh(pi t + 2 i beta t)/sinh(pi t) and
phi_0 = -cosh beta/(2 pi^2 sinh^2 beta).  This script recomputes both from
the defining Bessel-kernel integrals along a rotated ray and prints the
agreement, then tabulates how fast phi_hat approaches X^{it} e^{-t/T}.
"""

import cmath
import math

import numpy as np

from geodex.moment import make_params, phi_hat, phi_zero
from geodex.numerics import bessel_j_err, damped_oscillatory_quadrature


def rotated(p, order, weight_power, target=1e-9, alpha=1.1):
    ch = cmath.cosh(p.beta)

    def f(z):
        z = np.atleast_1d(z)
        jv = np.array([bessel_j_err(order, zz)[0] for zz in z])
        return jv * z**weight_power * (cmath.sinh(p.beta) / math.pi) * np.exp(1j * z * ch)

    damp = p.a * math.cos(alpha) + (p.b - 1.0) * math.sin(alpha)
    return damped_oscillatory_quadrature(f, damp, growth_c=5.0,
                                         growth_p=weight_power + 0.5,
                                         target=target,
                                         osc_rate=abs(ch) + abs(order),
                                         rotation=alpha)


def main():
    for (X, T) in ((10.0, 5.0), (100.0, 10.0)):
        p = make_params(X, T)
        print(f"\n(X, T) = ({X}, {T}):  beta = {p.beta:.6f},  c = {p.c:.6f}")
        print(f"  phi_0 closed  = {phi_zero(p):.12g}")
        quad = rotated(p, 0, 1.0, target=1e-10).value / (2 * math.pi)
        print(f"  phi_0 quad    = {quad:.12g}   |diff| = {abs(quad - phi_zero(p)):.2e}")
        for t in (0.5, 1.0, 5.0):
            up = rotated(p, 2j * t, 0.0)
            dn = rotated(p, -2j * t, 0.0)
            q = math.pi * 1j / (2 * cmath.sinh(math.pi * t)) * (up.value - dn.value)
            closed = phi_hat(t, p)
            main_term = cmath.exp(1j * t * math.log(X)) * math.exp(-t / T)
            print(f"  t = {t}: |quad - closed| = {abs(q - closed):.2e},  "
                  f"|closed - X^it e^(-t/T)| = {abs(closed - main_term):.2e} "
                  f"(<= 3 e^(-pi t) = {3 * math.exp(-math.pi * t):.1e})")


if __name__ == "__main__":
    main()
