"""Prime-geodesic exactness: Pell units, reduction cycles, psi counts."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import geodex.geodesic as G
from geodex.errors import DomainError


def scan_pell(d, vmax):
    for v in range(1, vmax + 1):
        u2 = 4 + d * v * v
        u = math.isqrt(u2)
        if u * u == u2:
            return (u, v)
    return None


def valid_discriminants(limit):
    for d in range(5, limit + 1):
        if d % 4 in (0, 1) and math.isqrt(d) ** 2 != d:
            yield d


class TestPell:
    def test_d5(self):
        assert G.pell_fundamental(5) == (3, 1)
        assert abs(G.pell_eps(5) - (3 + math.sqrt(5)) / 2) < 1e-15

    def test_d8(self):
        assert G.pell_fundamental(8) == (6, 2)
        assert abs(G.pell_eps(8) - (3 + 2 * math.sqrt(2))) < 1e-14

    def test_square_rejected(self):
        with pytest.raises(DomainError):
            G.pell_fundamental(9)

    def test_malformed_rejected(self):
        with pytest.raises(DomainError):
            G.pell_fundamental(7)

    def test_solutions_exact(self):
        for d in valid_discriminants(800):
            u, v = G.pell_fundamental(d)
            assert u * u - d * v * v == 4

    def test_minimality_against_scan(self):
        # scan oracle wherever the fundamental v0 is small enough to scan
        for d in valid_discriminants(600):
            u, v = G.pell_fundamental(d)
            if v <= 2000:
                assert scan_pell(d, v) == (u, v), d

    def test_big_unit(self):
        # d = 4*61: classical monster (1766319049, 226153980) doubled
        u, v = G.pell_fundamental(244)
        assert (u, v) == (2 * 1766319049, 226153980)


class TestClassNumbers:
    def test_h5_h8(self):
        assert G.class_number_indefinite(5) == 1
        assert G.class_number_indefinite(8) == 1

    def test_at_least_one(self):
        for d in valid_discriminants(500):
            assert G.class_number_indefinite(d) >= 1

    def test_brute_force_oracle_to_500(self):
        # independent classification: reduce every primitive form with
        # |a| <= sqrt(d) by the normalization step, then identify classes
        # with rho-cycles; the class count must match the cycle count
        for d in valid_discriminants(500):
            assert brute_force_h(d) == G.class_number_indefinite(d), d


def reduce_form(a, b, c, d):
    """Carry (a,b,c) into the reduced set by the standard normalize/rho walk."""
    for _ in range(600):
        rd = math.isqrt(d)
        reduced = (0 < b <= rd) and G._strictly_between(d, b, abs(a)) \
            and b * b - 4 * a * c == d
        if reduced and math.isqrt(d) ** 2 != d:
            return (a, b, c)
        # normalization: b' = -b + 2 s c with b' chosen in the window
        twoc = 2 * abs(c)
        r = (-b) % twoc
        if abs(c) > rd:
            # -|c| < b' <= |c|
            bp = r if r <= abs(c) else r - twoc
        else:
            k = (rd - r) // twoc
            bp = r + k * twoc
            if bp <= 0:
                bp += twoc
        cp = (bp * bp - d) // (4 * c)
        a, b, c = c, bp, cp
    raise RuntimeError((a, b, c, d))


def brute_force_h(d):
    reps = set()
    rd = math.isqrt(d)
    for a in range(-rd, rd + 1):
        if a == 0:
            continue
        for b in range(-2 * rd - 2, 2 * rd + 3):
            if (b * b - d) % (4 * a) != 0:
                continue
            c = (b * b - d) // (4 * a)
            if math.gcd(math.gcd(abs(a), abs(b)), abs(c)) != 1:
                continue
            f = reduce_form(a, b, c, d)
            cyc = [f]
            g = G._neighbor(f, d)
            while g != f:
                cyc.append(g)
                g = G._neighbor(g, d)
            reps.add(min(cyc))
    return len(reps)


class TestNorms:
    def test_z3(self):
        assert abs(G.trace_norm(3) - (7 + 3 * math.sqrt(5)) / 2) < 1e-12

    def test_z4(self):
        assert abs(G.trace_norm(4) - (7 + 4 * math.sqrt(3))) < 1e-12

    def test_monotone(self):
        for t in range(4, 101):
            assert G.trace_norm(t) > G.trace_norm(t - 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            G.trace_norm(2)

    def test_norm_unit_consistency(self):
        # Z_t = eps_{t^2-4}^2: the trace-t unit is (t + sqrt(t^2-4))/2
        for t in range(3, 61):
            zt = G.trace_norm(t)
            e2 = math.exp(2.0 * G.log_eps(t * t - 4))
            assert abs(e2 - zt) < 1e-12 * zt, t


class TestKappa:
    def test_vanishes_at_norms(self):
        for n in range(3, 11):
            assert G.kappa(G.trace_norm(n)) < 1e-9

    def test_kappa_4(self):
        assert abs(G.kappa(4.0) - 0.5) < 1e-14

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1.0001, 1e6))
    def test_range(self, x):
        assert 0.0 <= G.kappa(x) <= 0.5


class TestPsi:
    def test_empty_below_first_norm(self):
        assert G.psi_gamma(6.0).psi == 0.0

    def test_first_contribution(self):
        got = G.psi_gamma(10.0)
        assert abs(got.psi - 2 * math.log((3 + math.sqrt(5)) / 2)) < 1e-12
        assert got.pi_count == 1

    def test_second_power_of_d5(self):
        got = G.psi_gamma(50.0)
        pairs = [(d, k) for (d, k, _) in got.contributions]
        assert (5, 2) in pairs
        w = [w for (d, k, w) in got.contributions if (d, k) == (5, 2)][0]
        assert abs(w - 2 * math.log((3 + math.sqrt(5)) / 2)) < 1e-12

    def test_psi_equals_contribution_sum(self):
        got = G.psi_gamma(300.0)
        assert abs(got.psi - sum(w for (_, _, w) in got.contributions)) < 1e-9

    def test_monotone_grid(self):
        xs = [10, 25, 60, 150, 400, 1000, 2500]
        vals = [G.psi_gamma(float(x)).psi for x in xs]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_pi_jumps_at_norms(self):
        # pi_gamma jumps exactly at the Z_t values
        for t in (3, 4, 5):
            zt = G.trace_norm(t)
            before = G.psi_gamma(zt * (1 - 1e-9)).pi_count
            after = G.psi_gamma(zt * (1 + 1e-9)).pi_count
            assert after > before, t
