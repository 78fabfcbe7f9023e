"""The phi transform family: closed forms against quadrature oracles and
Mellin-Barnes twins."""

import cmath
import math

import numpy as np
import pytest

from geodex.errors import BranchDegeneracyError, DomainError
from geodex.moment import (i_b_closed, i_b_mb, i_closed, i_mb, i_series,
                           make_params, phi, phi_b, phi_hat, phi_k_fn,
                           phi_k_mb, phi_lambda, phi_tilde, phi_zero,
                           psi_k_fn, psi_k_mb)
from geodex.numerics import (ContourSpec, bessel_j_err,
                             damped_oscillatory_quadrature)

P10 = make_params(10.0, 5.0)


def rotated_bessel_integral(p, t, order_factor=2j, weight=lambda z: 1.0,
                            alpha=1.1, target=1e-9, growth_p=0.5):
    """int_0^inf J_{2it}(x) w(x) e^{i x cosh beta} dx along a rotated ray."""
    ch = cmath.cosh(p.beta)

    def f(z):
        z = np.atleast_1d(z)
        jv = np.array([bessel_j_err(order_factor * t, zz)[0] for zz in z])
        return jv * weight(z) * np.exp(1j * z * ch)

    damp = p.a * math.cos(alpha) + (p.b - 1.0) * math.sin(alpha)
    sv = damped_oscillatory_quadrature(f, damp, growth_c=5.0, growth_p=growth_p,
                                       target=target,
                                       osc_rate=abs(ch) + 2 * abs(t),
                                       rotation=alpha)
    return sv


class TestParams:
    def test_spec_example(self):
        p = make_params(math.e**2, 1.0)
        assert abs(p.a - math.sinh(1.0) * math.sin(0.5)) < 1e-15

    def test_c_definition(self):
        assert abs(1j * P10.c - cmath.cosh(P10.beta)) < 1e-15

    def test_gamma_range(self):
        for X in (10.0, 1000.0):
            for T in (5.0, 50.0):
                p = make_params(X, T)
                assert 0.0 < p.gamma < 1.0 / T

    def test_domain(self):
        with pytest.raises(DomainError):
            make_params(0.5, 5.0)


class TestPhi:
    def test_vanishes_at_zero(self):
        assert phi(0.0, P10) == 0.0

    def test_modulus_structure(self):
        vals = [abs(phi(x, P10)) * math.exp(P10.a * x) / x for x in (0.5, 1.0, 7.0)]
        assert max(vals) - min(vals) < 1e-12 * vals[0]

    def test_direct_reevaluation(self):
        x = 1.0
        target = cmath.sinh(P10.beta) / math.pi * cmath.exp(1j * cmath.cosh(P10.beta))
        assert abs(phi(x, P10) - target) < 1e-15


class TestPhiHat:
    def test_zero_limit(self):
        assert abs(phi_hat(0.0, P10) - (1.0 + 2j * P10.beta / math.pi)) == 0.0
        assert abs(phi_hat(1e-10, P10) - phi_hat(0.0, P10)) < 1e-9

    def test_exponential_approximation(self):
        # |phi_hat(t) - X^{it} e^{-t/T}| <= 3 e^{-pi t}
        for t in (2.0, 5.0, 8.0):
            main = cmath.exp(1j * t * math.log(P10.X)) * math.exp(-t / P10.T)
            assert abs(phi_hat(t, P10) - main) <= 3.0 * math.exp(-math.pi * t)

    def test_quadrature_oracle(self):
        # (pi i / 2 sinh(pi t)) int (J_{2it} - J_{-2it}) phi(x) dx/x
        t = 1.0
        up = rotated_bessel_integral(P10, t, weight=lambda z: cmath.sinh(P10.beta) / math.pi)
        dn = rotated_bessel_integral(P10, -t, weight=lambda z: cmath.sinh(P10.beta) / math.pi)
        quad = math.pi * 1j / (2 * cmath.sinh(math.pi * t)) * (up.value - dn.value)
        assert abs(quad - phi_hat(t, P10)) < 1e-7

    def test_large_t_stable(self):
        v = phi_hat(200.0, P10)
        assert np.isfinite(v.real) and np.isfinite(v.imag)


class TestPhiZero:
    def test_real_beta_limit(self):
        # T -> infinity surrogate: cosh(log 2) = 5/4, sinh(log 2) = 3/4
        p = make_params(4.0, 1e8)
        assert abs(phi_zero(p) - (-10.0 / (9.0 * math.pi**2))) < 1e-7

    def test_quadrature_oracle(self):
        sv = rotated_bessel_integral(P10, 0.0, order_factor=0j,
                                     weight=lambda z: cmath.sinh(P10.beta) / math.pi * z,
                                     growth_p=1.5, target=1e-10)
        assert abs(sv.value / (2 * math.pi) - phi_zero(P10)) < 1e-8

    def test_continuity_in_x(self):
        vals = [phi_zero(make_params(10.0 + h, 5.0)) for h in (0.0, 1e-6, 2e-6)]
        assert abs(vals[1] - vals[0]) < 1e-6
        assert abs(vals[2] - vals[1]) < 1e-6


class TestPhiB:
    def test_vanishes_at_zero(self):
        assert phi_b(0.0, P10).value == 0j

    def test_coefficient_check_against_phicheck(self):
        # 2 (2k-1) phicheck(2k-1) = (2/pi) (-1)^k (2k-1) e^{-(2k-1) beta}
        # with phicheck(l) = int J_l(y) phi(y) dy/y from quadrature
        for k in (1, 2):
            ell = 2 * k - 1
            sv = rotated_bessel_integral(
                P10, ell, order_factor=1,
                weight=lambda z: cmath.sinh(P10.beta) / math.pi)
            lhs = 2 * ell * sv.value
            rhs = (2.0 / math.pi) * (-1) ** k * ell * cmath.exp(-ell * P10.beta)
            assert abs(lhs - rhs) < 1e-7, k

    def test_envelope(self):
        # |phi_B(x)| <= 5 X^{-1/2} min(x, sqrt(x)) on the grid
        for X in (10.0, 100.0):
            p = make_params(X, 5.0)
            for x in np.linspace(0.1, 50.0, 25):
                v = phi_b(float(x), p)
                env = 5.0 * X ** (-0.5) * min(x, math.sqrt(x))
                assert abs(v.value) <= env, (X, x)

    def test_tail_consistency(self):
        a = phi_b(3.0, P10, K=4)
        b = phi_b(3.0, P10, K=8)
        assert abs(a.value - b.value) <= a.err_bound


class TestI:
    def test_closed_vs_series(self):
        for (lam, s, x) in [(2.0, 1.8, 0.7), (3.0, 1.8, 0.5), (1.0, 0.5 + 0.3j, 0.5)]:
            ic = i_closed(lam, s, x, P10)
            sr = i_series(lam, s, x, P10)
            assert abs(sr.value - ic) < 1e-12 + sr.err_bound

    def test_closed_vs_mb(self):
        lam, s, x = 2.0, 1.8, 0.7
        ic = i_closed(lam, s, x, P10)
        mb = i_mb(lam, s, x, P10, ContourSpec(-1.9, 700.0, 4000))
        assert abs(mb.value - ic) < 1e-8

    def test_contour_independence(self):
        lam, s, x = 2.5, 1.8, 0.9
        vals = []
        for delta in (-2.4, -2.1, -1.9):
            vals.append(i_mb(lam, s, x, P10, ContourSpec(delta, 700.0, 4000)).value)
        assert abs(vals[0] - vals[1]) < 1e-8
        assert abs(vals[1] - vals[2]) < 1e-8

    def test_contour_strip_enforced(self):
        with pytest.raises(DomainError):
            i_mb(2.0, 1.8, 0.7, P10, ContourSpec(-0.5, 100.0, 800))

    def test_branch_cross_check(self):
        # principal sqrt(-x^2/c^2) must equal (x/|c|) e^{-i gamma}
        for x in (0.5, 2.0, 7.0):
            R = cmath.sqrt(-(x * x) / (P10.c * P10.c))
            target = (x / abs(P10.c)) * cmath.exp(-1j * P10.gamma)
            assert abs(R - target) < 1e-13

    def test_specialization_lam1(self):
        # (integralI(1,x)): lam = 1 closed form with the explicit Gammas
        from geodex.numerics import complex_gamma
        s = 0.5 + 0.3j
        x = 0.5
        R = cmath.sqrt(-(x * x) / (P10.c * P10.c))
        direct = (cmath.sinh(P10.beta) / (math.pi * P10.c)) * 2.0 ** (1 - s) \
            * (x / P10.c) ** (1 - s) \
            * complex_gamma(1 - s / 2) * complex_gamma(1.5 - s / 2) / complex_gamma(0.5) \
            * ((1 + R) ** (s - 2) + (1 - R) ** (s - 2)) / 2.0
        assert abs(i_closed(1.0, s, x, P10) - direct) < 1e-13


class TestIB:
    def test_closed_vs_mb_grid(self):
        for lam in (2.0, 3.0):
            for x in (2.5, 4.0):
                c = i_b_closed(lam, 1.8, x)
                m = i_b_mb(lam, 1.8, x)
                assert abs(c.value - m.value) < 1e-8, (lam, x)

    def test_domain(self):
        with pytest.raises(DomainError):
            i_b_closed(2.0, 1.8, 1.0)


class TestPhiKPsiK:
    def test_psi_mb_matches_series(self):
        sv = psi_k_mb(2, 0.5 + 0.6j, 0.2, ContourSpec(-0.875, 40.0, 2000))
        assert abs(sv.value - psi_k_fn(2, 0.5 + 0.6j, 0.2)) < 1e-8

    def test_phi_mb_matches_series(self):
        sv = phi_k_mb(2, 0.5 + 0.6j, ContourSpec(-0.12, 40.0, 2000))
        assert abs(sv.value - phi_k_fn(2, 0.5 + 0.6j)) < 1e-8

    def test_domains(self):
        with pytest.raises(DomainError):
            psi_k_fn(0, 0.5, 0.2)
        with pytest.raises(DomainError):
            psi_k_fn(2, 0.5, 1.5)
