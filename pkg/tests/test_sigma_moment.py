"""Kloosterman-series representations and the moment identity pieces that
need no spectral data."""

import cmath
import math

import numpy as np
import pytest

from geodex.errors import DomainError, PoleError, TruncationInfeasibleError
from geodex.moment import make_params
from geodex.moment.m1 import (continuous_spectrum, cosh_sum_identity_residual,
                              m1_center, m1_geometric)
from geodex.moment.sigma import (sigma_b_continued, sigma_b_critical,
                                 sigma_b_direct, sigma_critical,
                                 sigma_lambda_continued, sigma_lambda_direct)
from geodex.numerics import riemann_zeta

P = make_params(10.0, 5.0)


class TestSigmaDual:
    def test_lambda_direct_definition_chain(self):
        # zeta(2s) * (lam = 1 double sum) is Sigma(s): spot agreement of the
        # direct sum computed at two truncations within declared tails
        a = sigma_lambda_direct(1.0, 2.0, P, q_terms=3000, n_terms=32)
        b = sigma_lambda_direct(1.0, 2.0, P, q_terms=6000, n_terms=48)
        assert abs(a.value - b.value) <= a.err_bound + b.err_bound

    def test_dual_representation_lam3(self):
        s = 1.8
        d = sigma_lambda_direct(3.0, s, P, q_terms=8000, n_terms=56)
        c = sigma_lambda_continued(3.0, s, P, n_terms=420)
        z2s = complex(riemann_zeta(2 * s))
        dev = abs(z2s * d.value - c.value)
        assert dev <= abs(z2s) * d.err_bound + c.err_bound
        # the zeta(2s) placement is unambiguous at this accuracy
        assert dev < 0.2 * abs(c.value - d.value) or dev < 1e-3 * abs(c.value)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            sigma_lambda_direct(1.0, 1.2, P)
        with pytest.raises(DomainError):
            sigma_lambda_direct(0.5, 2.0, P)

    def test_tail_consistency_doubling(self):
        a = sigma_lambda_direct(3.0, 1.8, P, q_terms=4000, n_terms=32)
        b = sigma_lambda_direct(3.0, 1.8, P, q_terms=8000, n_terms=64)
        assert abs(a.value - b.value) <= a.err_bound + b.err_bound


class TestSigmaBDual:
    def test_k3_tight(self):
        d = sigma_b_direct(3, 1.8, P, q_terms=8000, n_terms=56)
        c = sigma_b_continued(3, 1.8, n_terms=420)
        assert abs(d.value - c.value) <= max(d.err_bound + c.err_bound, 1e-6)
        assert abs(d.value - c.value) < 1e-4

    def test_k2_within_tails(self):
        d = sigma_b_direct(2, 1.8, P, q_terms=8000, n_terms=56)
        c = sigma_b_continued(2, 1.8, n_terms=420)
        assert abs(d.value - c.value) <= d.err_bound + c.err_bound

    def test_k1_needs_hecke_trick(self):
        # the direct-vs-continued comparison is refused at k = 1: the psi_k
        # tail exponent Re s + 2 theta - 2k is not summable there
        with pytest.raises(TruncationInfeasibleError):
            sigma_b_continued(1, 1.8, n_terms=50)

    def test_direct_domain(self):
        with pytest.raises(DomainError):
            sigma_b_direct(2, 1.2, P)


class TestSigmaCritical:
    def test_finite_at_center(self):
        sv = sigma_critical(0.5 + 0j, P)
        assert np.isfinite(abs(sv.value))

    def test_truncation_must_cover_resonance(self):
        with pytest.raises(TruncationInfeasibleError):
            sigma_critical(0.5 + 0.3j, P, n_terms=2)

    def test_doubling_stability(self):
        a = sigma_critical(0.5 + 0.3j, P)
        b = sigma_critical(0.5 + 0.3j, P, n_terms=2 * (a.terms_used))
        assert abs(a.value - b.value) <= a.err_bound

    def test_real_part_pinned(self):
        with pytest.raises(DomainError):
            sigma_critical(0.7 + 0.3j, P)


class TestSigmaBCritical:
    def test_pole_guard(self):
        with pytest.raises(DomainError):
            sigma_b_critical(0.5 + 0j, P)

    def test_excluded_term_finite(self):
        sv = sigma_b_critical(0.5 + 0j, P, exclude_zeta_term=True)
        assert np.isfinite(abs(sv.value))

    def test_k_stability(self):
        a = sigma_b_critical(0.5 + 0.3j, P, k_terms=8)
        b = sigma_b_critical(0.5 + 0.3j, P, k_terms=10)
        assert abs(a.value - b.value) <= a.err_bound + 1e-10

    def test_envelope_x100(self):
        # |Sigma_B(s)| <= C (1+|r|) X^{-1/2} with a modest observed C
        p = make_params(100.0, 5.0)
        sv = sigma_b_critical(0.5 + 0.3j, p)
        assert abs(sv.value) <= 40.0 * 1.3 * 100.0 ** (-0.5)


class TestContinuous:
    def test_finite_small_tail(self):
        p = make_params(10.0, 1.0)
        sv = continuous_spectrum(2.0, p)
        assert sv.err_bound < 1e-10
        assert np.isfinite(abs(sv.value))

    def test_smooth_near_zero(self):
        # integrand -> 0 like t^2: halving the lower start must not move it
        p = make_params(10.0, 1.0)
        a = continuous_spectrum(2.0, p)
        b = continuous_spectrum(2.0 + 1e-9, p)
        assert abs(a.value - b.value) < 1e-7

    def test_pole_proximity(self):
        with pytest.raises(PoleError):
            continuous_spectrum(1.0 + 1e-9, P)

    def test_continuity_along_line(self):
        p = make_params(10.0, 1.0)
        vals = [continuous_spectrum(2.0 + 0.05 * k, p).value for k in range(3)]
        assert abs(vals[1] - vals[0]) < 0.1
        assert abs(vals[2] - vals[1]) < 0.1


class TestM1:
    def test_cosh_sum_identity(self):
        assert cosh_sum_identity_residual(P) < 1e-12

    def test_geometric_assembly_collapses(self):
        # at s = 2, X = 10, T = 1 the geometric side must be tiny (it equals
        # a spectral side whose largest weight is e^{-t_1} ~ 7e-5)
        p = make_params(10.0, 1.0)
        rep = m1_geometric(2.0, p, q_terms=8000, n_terms=64)
        assert abs(rep.geometric) < 0.02
        assert abs(rep.geometric) < rep.budget + 1e-3

    def test_pole_term_finite_critical(self):
        p = make_params(10.0, 5.0)
        rep = m1_geometric(0.5 + 0.3j, p)
        assert np.isfinite(abs(rep.pole_term))
        z = complex(riemann_zeta(2 * (0.5 + 0.3j) - 1.0)) \
            / complex(riemann_zeta(2.0 - (0.5 + 0.3j)))
        from geodex.moment import phi_hat
        target = 2.0 * z * phi_hat((1.0 - (0.5 + 0.3j)) / 2j, p)
        assert abs(rep.pole_term - target) < 1e-12

    def test_center_requires_x_gt_5(self):
        with pytest.raises(DomainError):
            m1_center(make_params(4.0, 2.0))

    def test_center_pole_guard(self):
        with pytest.raises(PoleError):
            m1_geometric(0.5 + 0j, P)

    def test_digamma_head_weight(self):
        # k = 1 weight is (2*1-1) e^{-beta} (psi(3/4) + psi(5/4))
        from geodex.numerics import digamma
        p = make_params(100.0, 2.0)
        head = -(1.0 / (2 * math.pi**2)) * cmath.exp(-p.beta) \
            * (digamma(0.75) + digamma(1.25))
        assert np.isfinite(abs(head))

    @pytest.mark.slow
    def test_center_matches_epsilon_limit(self):
        p = make_params(100.0, 2.0)
        c = m1_center(p)
        eps = [0.02, 0.01, 0.005]
        vals = [m1_geometric(0.5 + 1j * e, p).geometric for e in eps]
        xs = np.array(eps)
        ys = np.array(vals)
        for lev in range(1, len(xs)):
            for i in range(len(xs) - lev):
                ys[i] = (ys[i] * (0 - xs[i + lev]) - ys[i + 1] * (0 - xs[i])) \
                    / (xs[i] - xs[i + lev])
        assert abs(c.value - ys[0]) < 1e-4
