"""Integer-arithmetic objects: divisor sums, Kloosterman sums, rho/lambda
counts, Zagier L-functions, Lerch functional equation."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import geodex.arith as A
from geodex.errors import DomainError
from geodex.numerics import dirichlet_l_real, riemann_zeta


class TestTau:
    def test_divisor_count(self):
        assert A.tau_v(0, 6) == 4
        assert A.tau_v(0, 1) == 1

    def test_sigma_identity_spec_point(self):
        v, n = 0.3j, 12
        assert abs(A.tau_v(v, n) - n ** (-v) * A.sigma_v(2 * v, n)) < 1e-14

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 400), st.floats(-1, 1), st.floats(-1, 1))
    def test_sigma_identity_property(self, n, re, im):
        v = complex(re, im)
        assert abs(A.tau_v(v, n) - n ** (-v) * A.sigma_v(2 * v, n)) \
            < 1e-11 * max(1.0, abs(A.tau_v(v, n)))

    def test_tau_dirichlet_series(self):
        # sum tau_{ir}(n^2)/n^s -> zeta(s) zeta(s+2ir) zeta(s-2ir)/zeta(2s)
        s, r = 3.0, 0.7
        total = sum(A.tau_v(1j * r, n * n) * n ** (-s) for n in range(1, 4001))
        target = riemann_zeta(s) * riemann_zeta(s + 2j * r) * riemann_zeta(s - 2j * r) \
            / riemann_zeta(2 * s)
        # tail: |tau_ir(n^2)| <= tau_0(n^2) <= 12 n^0.45
        tail = 12.0 * 4000 ** (1.45 - s) / (s - 1.45)
        assert abs(total - target) < tail


class TestKloosterman:
    def test_trivial_modulus(self):
        assert A.kloosterman(1, 1, 1) == 1.0 + 0j

    def test_enumeration_oracle_c3(self):
        # a in {1, 2}: e(2/3) + e(1/3) = -1
        oracle = np.exp(2j * np.pi * 2 / 3) + np.exp(2j * np.pi * 1 / 3)
        assert abs(A.kloosterman(1, 1, 3) - oracle) < 1e-14
        assert abs(A.kloosterman(1, 1, 3) + 1.0) < 1e-13

    def test_symmetry(self):
        assert abs(A.kloosterman(3, 5, 7) - A.kloosterman(5, 3, 7)) < 1e-13

    def test_weil_bound_c_to_1000(self):
        for c in range(1, 1001):
            wb = A.weil_bound(1, 1, c) + 1e-9
            assert abs(A.kloosterman(1, 1, c)) <= wb, c

    def test_twisted_multiplicativity(self):
        # S(m, n; c1 c2) = S(m c2*^2, n; c1) S(m c1*^2, n; c2), gcd(c1,c2)=1
        rng = np.random.default_rng(5)
        for _ in range(12):
            c1 = int(rng.integers(2, 40))
            c2 = int(rng.integers(2, 40))
            if math.gcd(c1, c2) != 1:
                continue
            m = int(rng.integers(1, 20))
            n = int(rng.integers(1, 20))
            c2s = pow(c2, -1, c1)
            c1s = pow(c1, -1, c2)
            lhs = A.kloosterman(m, n, c1 * c2)
            rhs = A.kloosterman(m * c2s * c2s, n, c1) * A.kloosterman(m * c1s * c1s, n, c2)
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))

    def test_row_matches_exact(self):
        for q in (2, 7, 12, 97, 360, 601):
            res = np.arange(min(q, 8))
            row = A.kloosterman_row(q, res)
            exact = np.array([A.kloosterman(1, int(r), q) for r in res])
            assert np.max(np.abs(row - exact)) < 1e-9 * max(1.0, q)

    def test_cap(self):
        with pytest.raises(DomainError):
            A.kloosterman(1, 1, 10**6 + 1)


class TestRhoLambda:
    def test_rho_examples(self):
        assert A.rho_q(1, 1) == 1
        assert A.rho_q(1, 2) == 0
        assert A.rho_q(2, 1) == 2

    def test_lambda_q1(self):
        assert A.lambda_q(1, 5) == A.rho_q(1, 5)

    def test_lambda_q4_decomposition(self):
        assert A.lambda_q(4, 1) == A.rho_q(4, 1) - A.rho_q(2, 1) + A.rho_q(1, 1)

    def test_lambda_tables_match_pointwise(self):
        tab = A.lambda_table(-4, 60)
        for q in range(1, 61):
            assert tab[q] == A.lambda_q(q, -4), q

    def test_lambda_dirichlet_series(self):
        # sum lambda_q(-4)/q^2 -> L(2, chi_-4), residual < 1e-4 at Q = 10^4
        tab = A.lambda_table(-4, 10**4)
        qs = np.arange(1, 10**4 + 1, dtype=float)
        total = float(np.sum(tab[1:] / qs**2))
        assert abs(total - dirichlet_l_real(-4, 2.0).real) < 1e-4

    def test_lbyk_two_expressions(self):
        # zeta(2s)/zeta(s) sum rho_q(n)/q^s = sum lambda_q(n)/q^s at s = 2.5
        s = 2.5
        for n in (-4, 0, 5, 12):
            Q = 3000
            rho_sum = sum(A.rho_q(q, n) * q ** (-s) for q in range(1, Q + 1))
            lam = A.lambda_table(n, Q)
            lam_sum = float(np.sum(lam[1:] / np.arange(1, Q + 1, dtype=float) ** s))
            lhs = complex(riemann_zeta(2 * s) / riemann_zeta(s)) * rho_sum
            assert abs(lhs - lam_sum) < 5e-4, n


class TestZagier:
    def test_vanishing_3_mod_4(self):
        assert A.zagier_l(7, 2.0).value == 0j
        assert A.zagier_l(-2, 1.3 + 1j).value == 0j

    def test_n0_is_zeta(self):
        assert abs(A.zagier_l(0, 2.0).value - riemann_zeta(3.0)) < 1e-12

    def test_minus4_catalan(self):
        lv = A.zagier_l(-4, 2.0).value
        assert abs(lv - 0.915965594177219) < 1e-9

    def test_modes_agree_within_tails(self):
        for n in (5, 12, 21, -3, 45):
            zf = A.zagier_l(n, 1.7 + 0.3j, mode="factored")
            zd = A.zagier_l(n, 1.7 + 0.3j, mode="direct-series", q_terms=3000)
            assert abs(zf.value - zd.value) <= zd.err_bound + zf.err_bound, n

    def test_direct_mode_domain(self):
        with pytest.raises(DomainError):
            A.zagier_l(5, 0.9, mode="direct-series")

    def test_decomposition(self):
        dec = A.ZagierDecomposition.of(48)
        assert dec.d0 == 12 and dec.f == 2
        dec = A.ZagierDecomposition.of(-4)
        assert dec.d0 == -4 and dec.f == 1
        with pytest.raises(DomainError):
            A.ZagierDecomposition.of(7)


class TestLerch:
    def test_reduction_to_zeta(self):
        assert abs(A.lerch_zeta(1.0, 2.0) - riemann_zeta(2.0)) < 1e-12

    def test_hurwitz_value(self):
        assert abs(A.lerch_zeta(0.5, 2.0) - math.pi**2 / 2) < 1e-12

    def test_fe_residual_spec_point(self):
        assert A.lerch_fe_residual(Fraction(1, 3), -0.7) < 1e-8

    def test_fe_residual_five_samples(self):
        samples = [(Fraction(1, 2), -0.7), (Fraction(1, 3), -0.7),
                   (Fraction(1, 4), -1.3), (Fraction(1, 5), -0.4),
                   (Fraction(2, 3), -2.2)]
        for alpha, s in samples:
            assert A.lerch_fe_residual(alpha, s) < 1e-8, (alpha, s)

    def test_fe_domain(self):
        with pytest.raises(DomainError):
            A.lerch_fe_residual(Fraction(1, 3), 0.5)
