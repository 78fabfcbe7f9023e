"""Integer-arithmetic objects: divisor sums, Kloosterman sums, quadratic
congruence counts rho_q / lambda_q, the generalized Dirichlet L-function
built from them, and the Lerch zeta function with its functional equation.

Conventions
-----------
* e(x) = exp(2 pi i x).
* S(m, n; c) = sum over a mod c, gcd(a, c) = 1 of e((a m + a* n)/c).
* rho_q(n) = #{x mod 2q : x^2 = n mod 4q},
  lambda_q(n) = sum over q1^2 q2 q3 = q of mu(q2) rho_{q3}(n).
* L_n(s) = zeta(2s)/zeta(s) * sum_q rho_q(n)/q^s = sum_q lambda_q(n)/q^s;
  it vanishes identically for n = 2, 3 mod 4, equals zeta(2s-1) at n = 0,
  and factors through L(s, chi_D0) for n = D0 f^2 otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._intutil import (divisors, factorize, fundamental_decomposition,
                       is_square, mobius, tau0)
from .errors import DomainError
from .numerics import SeriesValue, dirichlet_l_real, hurwitz_zeta, riemann_zeta
from .numerics.series import kahan_add

_TWO_PI = 2.0 * math.pi
_KLOOSTERMAN_CAP = 1_000_000


@dataclass(frozen=True)
class Factorization:
    """n = sign * prod p^e with primes strictly increasing."""

    n: int
    prime_powers: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, n: int) -> "Factorization":
        return cls(n, factorize(n))


@dataclass(frozen=True)
class ZagierDecomposition:
    """Discriminant splitting n = D0 * f^2 (D0 fundamental or 1)."""

    n: int
    d0: int
    f: int

    @classmethod
    def of(cls, n: int) -> "ZagierDecomposition":
        d0, f = fundamental_decomposition(n)
        return cls(n, d0, f)


def sigma_v(v, n: int) -> complex:
    """sum over d | n of d^v (complex exponent allowed)."""
    if n < 1:
        raise DomainError("sigma_v expects n >= 1")
    return complex(sum(complex(d) ** v for d in divisors(n)))


def tau_v(v, n: int) -> complex:
    """tau_v(n) = sum over n1*n2 = n of (n1/n2)^v = n^-v sigma_{2v}(n)."""
    if n < 1:
        raise DomainError("tau_v expects n >= 1")
    v = complex(v)
    total = 0j
    for d in divisors(n):
        total += complex(d / (n // d)) ** v
    return total


def kloosterman(m: int, n: int, c: int) -> complex:
    """Exact Kloosterman sum S(m, n; c) by direct enumeration.

    Phases are exact rationals (a m + a* n mod c)/c accumulated with
    compensated summation; c is capped at 10^6.
    """
    if c < 1:
        raise DomainError("kloosterman requires c >= 1")
    if c > _KLOOSTERMAN_CAP:
        raise DomainError(f"kloosterman cap exceeded (c <= {_KLOOSTERMAN_CAP})")
    if c == 1:
        return 1.0 + 0j
    total = 0j
    comp = 0j
    for a in range(1, c):
        if math.gcd(a, c) != 1:
            continue
        astar = pow(a, -1, c)
        phase = ((a * m + astar * n) % c) / c
        term = complex(math.cos(_TWO_PI * phase), math.sin(_TWO_PI * phase))
        total, comp = kahan_add(total, comp, term)
    return total


def weil_bound(m: int, n: int, c: int) -> float:
    """tau_0(c) * sqrt(gcd(m, n, c)) * sqrt(c)."""
    g = math.gcd(math.gcd(abs(m), abs(n)), c)
    if g == 0:
        g = c
    return tau0(c) * math.sqrt(g) * math.sqrt(c)


# ---------------------------------------------------------------------------
# batched Kloosterman rows S(1, * ; q) via unit-circle DFT
# ---------------------------------------------------------------------------

def _inverse_table(q: int) -> np.ndarray:
    """a -> a^{-1} mod q for units, 0 elsewhere; vectorized binary powering."""
    a = np.arange(q, dtype=np.int64)
    units = np.gcd(a, q) == 1
    # Euler: a^{phi(q)-1} = a^{-1} for units
    phi = q
    for p, _ in factorize(q):
        phi -= phi // p
    e = phi - 1
    base = a.copy()
    result = np.ones(q, dtype=np.int64)
    while e:
        if e & 1:
            result = (result * base) % q
        base = (base * base) % q
        e >>= 1
    result[~units] = 0
    result[0] = 0
    return result


def kloosterman_row(q: int, residues: np.ndarray) -> np.ndarray:
    """S(1, r; q) for an array of residues r, via one length-q DFT.

    S(1, r; q) = sum over units b of e(b*/q) e(b r / q), which is q times
    the inverse DFT of f[b] = e(b*/q) on units.  Cost O(q log q) once per q.
    """
    if q == 1:
        return np.ones(len(residues), dtype=complex)
    inv = _inverse_table(q)
    f = np.zeros(q, dtype=complex)
    units = inv > 0
    f[units] = np.exp(2j * math.pi * inv[units] / q)
    row = np.fft.ifft(f) * q
    return row[np.asarray(residues) % q]


def kloosterman_block(n_values: np.ndarray, q_max: int, q_min: int = 1) -> np.ndarray:
    """Matrix S(1, n^2; q) for n in n_values, q in [q_min, q_max].

    Column j is q = q_min + j; every column comes from one DFT row, so the
    total cost is O(sum q log q) independent of len(n_values).
    """
    n_values = np.asarray(n_values, dtype=np.int64)
    out = np.empty((len(n_values), q_max - q_min + 1), dtype=complex)
    for j, q in enumerate(range(q_min, q_max + 1)):
        res = (n_values * n_values) % q
        out[:, j] = kloosterman_row(q, res)
    return out


def divisor_sum_tail(q_from: int, u: float) -> float:
    """Upper bound for sum_{q > Q} tau_0(q) q^-u, u > 1.

    Partial summation against sum_{q<=x} tau_0(q) <= x (log x + 1).
    """
    if u <= 1.0:
        raise DomainError("divisor_sum_tail needs u > 1")
    lq = math.log(q_from)
    return u * q_from ** (1.0 - u) * ((lq + 1.0) / (u - 1.0) + 1.0 / (u - 1.0) ** 2)


# ---------------------------------------------------------------------------
# quadratic congruence counts and the generalized Dirichlet L-function
# ---------------------------------------------------------------------------

def rho_q(q: int, n: int) -> int:
    """#{x mod 2q : x^2 = n mod 4q}, by direct enumeration."""
    if q < 1:
        raise DomainError("rho_q requires q >= 1")
    if q > _KLOOSTERMAN_CAP:
        raise DomainError("rho_q cap exceeded (q <= 10^6)")
    x = np.arange(2 * q, dtype=np.int64)
    m = 4 * q
    return int(np.count_nonzero((x * x - n) % m == 0))


def lambda_q(q: int, n: int) -> int:
    """sum over q1^2 q2 q3 = q of mu(q2) rho_{q3}(n)."""
    if q < 1:
        raise DomainError("lambda_q requires q >= 1")
    total = 0
    q1 = 1
    while q1 * q1 <= q:
        if q % (q1 * q1) == 0:
            rest = q // (q1 * q1)
            for q2 in divisors(rest):
                mu = mobius(q2)
                if mu:
                    total += mu * rho_q(rest // q2, n)
        q1 += 1
    return total


def rho_table(n: int, q_max: int) -> np.ndarray:
    """rho_q(n) for q = 1..q_max in one sieve pass (index 0 unused)."""
    out = np.zeros(q_max + 1, dtype=np.int64)
    x = np.arange(2 * q_max, dtype=np.int64)
    sq = x * x - n
    for q in range(1, q_max + 1):
        out[q] = int(np.count_nonzero(sq[: 2 * q] % (4 * q) == 0))
    return out


def lambda_table(n: int, q_max: int) -> np.ndarray:
    """lambda_q(n) for q = 1..q_max, convolved from one rho table."""
    rho = rho_table(n, q_max)
    out = np.zeros(q_max + 1, dtype=np.int64)
    for q1 in range(1, int(math.isqrt(q_max)) + 1):
        s1 = q1 * q1
        for q2 in range(1, q_max // s1 + 1):
            mu = mobius(q2)
            if mu == 0:
                continue
            step = s1 * q2
            top = q_max // step
            out[step::step] += mu * rho[1: top + 1]
    return out


def _conductor_polynomial(d0: int, f: int, s: complex) -> complex:
    """T_f(s) = sum over d | f of mu(d) chi_D0(d) d^-s sigma_{1-2s}(f/d)."""
    from ._intutil import kronecker
    total = 0j
    for d in divisors(f):
        mu = mobius(d)
        if mu == 0:
            continue
        chi = kronecker(d0, d)
        if chi == 0 and d > 1:
            continue
        total += mu * chi * d ** (-s) * complex(sigma_v(1.0 - 2.0 * s, f // d))
    return total


def zagier_l(n: int, s, mode: str = "factored", q_terms: int = 4000) -> SeriesValue:
    """Generalized Dirichlet L-function L_n(s).

    mode="direct-series": zeta(2s)/zeta(s) * sum_{q<=Q} rho_q(n)/q^s, valid
    for Re s > 1, with the rho tail bounded through rho_q(n) <= d(4q)*2.

    mode="factored": exact finite formula L(s, chi_D0) * T_f(s) for
    n = D0 f^2 != 0, usable on 0 < Re s < 2.  n = 0 returns zeta(2s-1);
    n = 2, 3 mod 4 returns exactly 0.
    """
    s = complex(s)
    if n % 4 in (2, 3):
        return SeriesValue(0j, 0.0, 0)
    if n == 0:
        return SeriesValue(complex(riemann_zeta(2.0 * s - 1.0)), 1e-12, 1)
    if mode == "direct-series":
        if s.real <= 1.0:
            raise DomainError("direct-series mode requires Re s > 1")
        total = 0j
        comp = 0j
        for q in range(1, q_terms + 1):
            total, comp = kahan_add(total, comp, rho_q(q, n) * q ** (-s))
        pref = complex(riemann_zeta(2.0 * s) / riemann_zeta(s))
        # rho_q(n) <= 2 sqrt(|n|) d(4q) <= 6 sqrt(|n|) d(q)
        tail = abs(pref) * 6.0 * math.sqrt(abs(n)) * divisor_sum_tail(q_terms, s.real)
        return SeriesValue(pref * total, tail, q_terms)
    if mode == "factored":
        if not (0.0 < s.real <= 2.5):
            raise DomainError("factored mode validated for 0 < Re s <= 2.5")
        dec = ZagierDecomposition.of(n)
        lval = dirichlet_l_real(dec.d0, s)
        tf = _conductor_polynomial(dec.d0, dec.f, s)
        val = complex(lval) * tf
        return SeriesValue(val, 1e-9 * (abs(val) + 1.0), tau0(dec.f))
    raise DomainError(f"unknown zagier_l mode {mode!r}")


# ---------------------------------------------------------------------------
# Lerch zeta and its functional equation
# ---------------------------------------------------------------------------

def _as_fraction(x, max_den: int = 4096) -> Fraction:
    fr = Fraction(x).limit_denominator(max_den)
    if abs(float(fr) - float(x)) > 1e-12:
        raise DomainError(
            "lerch_zeta supports rational parameters p/q with q <= 4096")
    return fr


def lerch_zeta(alpha, s) -> complex:
    """zeta(alpha, 0, s) = sum_{n >= 0} (n + alpha)^-s for alpha in (0, 1].

    Continued in s through the Euler-Maclaurin Hurwitz engine (s != 1).
    """
    a = _as_fraction(alpha)
    if not (0 < a <= 1):
        raise DomainError("alpha must lie in (0, 1]")
    return complex(hurwitz_zeta(complex(s), float(a)))


def lerch_beta_series(beta, w) -> complex:
    """zeta(0, beta, w) = sum_{n >= 1} e(n beta) n^-w for rational beta.

    Reduced to q^-w sum_{r=1..q} e(r beta) zeta(w, r/q), which converges for
    every w != 1 through the Hurwitz continuation.
    """
    w = complex(w)
    b = _as_fraction(beta)
    q = b.denominator
    total = 0j
    for r in range(1, q + 1):
        phase = complex(math.cos(_TWO_PI * float(b) * r),
                        math.sin(_TWO_PI * float(b) * r))
        total += phase * complex(hurwitz_zeta(w, r / q))
    return q ** (-w) * total


def lerch_fe_residual(alpha, s) -> float:
    """|LHS - RHS| of the Lerch functional equation at (alpha, 0, s).

    zeta(alpha,0,s) = Gamma(1-s)/(2 pi)^(1-s) * ( i e(-s/4) zeta(0,-alpha,1-s)
                                                - i e(s/4) zeta(0,alpha,1-s) ).
    Both sides must converge after the implemented continuation, which means
    Re s < 0 (right side then has Re(1-s) > 1).
    """
    from .numerics import complex_gamma
    s = complex(s)
    if s.real >= 0:
        raise DomainError("lerch_fe_residual implemented for Re s < 0")
    a = _as_fraction(alpha)
    lhs = lerch_zeta(alpha, s)
    gam = complex_gamma(1.0 - s)
    om = gam / (2.0 * math.pi) ** (1.0 - s)
    e_plus = np.exp(2j * math.pi * (s / 4.0))
    e_minus = np.exp(-2j * math.pi * (s / 4.0))
    minus_alpha = Fraction(1, 1) - a  # e(-n alpha) = e(n (1 - alpha))
    rhs = om * (1j * e_minus * lerch_beta_series(minus_alpha, 1.0 - s)
                - 1j * e_plus * lerch_beta_series(a, 1.0 - s))
    return abs(lhs - complex(rhs))
