"""Kloosterman-series sides of the first-moment identity.

Two families of double sums over (n, q), both weighted by S(1, n^2; q)/q:

    Sigma(s)      with kernel phi(4 pi n / q)        (Re s > 3/2 directly)
    Sigma_B(k, s) with kernel J_{2k-1}(4 pi n / q)   (assembled over k)

and their analytic continuations through generalized Dirichlet L-functions:

    Sigma(lam, s) = zeta(2s) * double sum
                  = (4 pi)^{s-1} phi_tilde(lam, 1-s) L_{-4}(s)
                    + 2 (2 pi)^{s-1} sum_n n^{s-1} L_{n^2-4}(s) I(lam, n/2)

(the zeta(2s) placement was fixed numerically: the continuation equals
zeta(2s) times the bare double sum), and

    Sigma_B(k, s) = (2 pi)^s (-1)^k/2 * G-ratio * L_{-4}(s)
                    + zeta(2s-1) closed term        (n = 2)
                    + L_{-3}(s) Phi_k(s) term       (n = 1)
                    + sum_{n>2} L_{n^2-4}(s) n^s Psi_k(s, 4/n^2) term

with the 1/2 on the L_{-4} term confirmed against the direct sum.

Tail models
-----------
Every SeriesValue reports err_bound under a stated model:

* "weil": worst-case Weil-bound tails (rigorous given the Weil bound, but
  enormously pessimistic because Kloosterman signs cancel);
* "empirical": the random-sign model calibrated on the computed block --
  RMS of the last quarter of q-partial rows and n-rows, extrapolated by the
  kernel's decay.  This is the documented heuristic used for identity
  budgets; it is reported, never silently assumed.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from ..arith import divisor_sum_tail, kloosterman_block, zagier_l
from ..errors import DomainError, TruncationInfeasibleError
from ..numerics import SeriesValue, complex_gamma, riemann_zeta
from .transforms import (TransformParams, i_closed, phi_k_fn, phi_tilde,
                         psi_k_fn)

__all__ = [
    "kloosterman_tableau",
    "sigma_lambda_direct",
    "sigma_lambda_continued",
    "sigma_critical",
    "sigma_b_direct",
    "sigma_b_continued",
    "sigma_b_critical",
    "zagier_cached",
]

_BLOCK_CACHE: dict[tuple[int, int], np.ndarray] = {}


def kloosterman_tableau(n_max: int, q_max: int) -> np.ndarray:
    """Cached S(1, n^2; q) block, shape (n_max, q_max); column j is q = j+1."""
    key = (n_max, q_max)
    for (nm, qm), block in _BLOCK_CACHE.items():
        if nm >= n_max and qm >= q_max:
            return block[:n_max, :q_max]
    block = kloosterman_block(np.arange(1, n_max + 1), q_max)
    _BLOCK_CACHE.clear()
    _BLOCK_CACHE[key] = block
    return block


@lru_cache(maxsize=100_000)
def zagier_cached(n: int, s: complex) -> complex:
    return complex(zagier_l(n, s, mode="factored").value)


def _phi_kernel(lam: complex, x: np.ndarray, p: TransformParams) -> np.ndarray:
    return (cmath.sinh(p.beta) / math.pi) * np.exp(lam * np.log(x)) \
        * np.exp(1j * x * cmath.cosh(p.beta))


def sigma_lambda_direct(lam, s, p: TransformParams, q_terms: int = 12000,
                        n_terms: int = 64, tail_model: str = "empirical") -> SeriesValue:
    """Bare double sum sum_n n^-s sum_q S(1, n^2; q)/q phi(lam, 4 pi n/q).

    Multiply by zeta(2s) to reach Sigma(s) (lam = 1) or the continued
    Sigma(lam, s).  Requires Re s > 3/2, Re lam >= 1.
    """
    lam, s = complex(lam), complex(s)
    if s.real <= 1.5:
        raise DomainError("sigma_lambda_direct requires Re s > 3/2")
    if lam.real < 1.0:
        raise DomainError("sigma_lambda_direct requires Re lam >= 1")
    S = kloosterman_tableau(n_terms, q_terms)
    ns = np.arange(1, n_terms + 1, dtype=float)
    qs = np.arange(1, q_terms + 1, dtype=float)
    x = 4.0 * math.pi * np.outer(ns, 1.0 / qs)
    kernel = _phi_kernel(lam, x, p)
    rows = (S / qs[None, :]) * kernel
    qsums = rows.sum(axis=1)
    nweights = ns ** (-s)
    total = complex(np.sum(nweights * qsums))

    if tail_model == "weil":
        # |phi(lam,x)| <= (X^{1/2}/pi) x^{Re lam} e^{-a x}; drop the
        # exponential beyond the block and use the divisor-sum tail
        amp = math.sqrt(p.X) / math.pi
        qtail = amp * sum(
            n ** (-s.real) * (4 * math.pi * n) ** lam.real
            * divisor_sum_tail(q_terms, 0.5 + lam.real)
            for n in range(1, n_terms + 1))
        # n-tail: peak of the kernel times the full Weil q-sum scale
        peak = amp * (lam.real / max(p.a, 1e-9)) ** lam.real * math.exp(-lam.real)
        ntail = 3.0 * peak * sum(
            n ** (-s.real) * math.sqrt(4 * math.pi * n)
            for n in range(n_terms + 1, 4 * n_terms)) \
            + 3.0 * peak * (4 * n_terms) ** (1.5 - s.real) / (s.real - 1.5)
        tail = qtail + ntail
    else:
        # random-sign model: q-tail from the analytic small-x kernel times
        # the observed row-noise scale; n-tail from the observed qsum RMS
        last = np.abs(rows[:, -q_terms // 4:])
        row_noise = float(np.sqrt(np.mean(last**2) * q_terms / 4))
        qtail = row_noise * float(np.sum(ns ** (-s.real)))
        rms = float(np.sqrt(np.mean(np.abs(qsums[-n_terms // 4:]) ** 2)))
        ntail = rms * math.sqrt(float(np.sum(
            np.arange(n_terms + 1, 40 * n_terms, dtype=float) ** (-2 * s.real))))
        tail = 3.0 * (qtail + ntail)
    return SeriesValue(total, tail, n_terms * q_terms)


def sigma_lambda_continued(lam, s, p: TransformParams, n_terms: int = 400) -> SeriesValue:
    """(4 pi)^{s-1} phi_tilde(lam,1-s) L_{-4}(s)
       + 2 (2 pi)^{s-1} sum_{n<=N} n^{s-1} L_{n^2-4}(s) I(lam, n/2).

    Equals zeta(2s) * sigma_lambda_direct on Re lam > Re s > 3/2 and
    continues it elsewhere.  Tail: observed |L| envelope times the
    (x/|c|)^{-Re lam} decay of I.
    """
    lam, s = complex(lam), complex(s)
    total = (4.0 * math.pi) ** (s - 1.0) * phi_tilde(lam, 1.0 - s, p) \
        * zagier_cached(-4, s)
    lmax = 0.0
    term_abs_last = 0.0
    for n in range(1, n_terms + 1):
        ln = zagier_cached(n * n - 4, s)
        term = 2.0 * (2.0 * math.pi) ** (s - 1.0) * n ** (s - 1.0) * ln \
            * i_closed(lam, s, 0.5 * n, p)
        total += term
        lmax = max(lmax, abs(ln) / max(n, 2) ** (1.0 / 3.0))
        if n == n_terms:
            term_abs_last = abs(term)
    # terms fall like n^{Re s - 1 - Re lam + 1/3} under the theta = 1/6 model
    expo = s.real - 1.0 - lam.real + 1.0 / 3.0
    if expo >= -1.05:
        raise TruncationInfeasibleError("continued n-series needs Re lam > Re s - 2/3")
    tail = term_abs_last * n_terms / (-expo - 1.0)
    return SeriesValue(complex(total), tail, n_terms)


def sigma_critical(s, p: TransformParams, n_terms: int | None = None,
                   theta: float = 1.0 / 6.0) -> SeriesValue:
    """Sigma(s) on Re s = 1/2 through the lam = 1 continuation:

    (4 pi)^{s-1} phi_tilde(1, 1-s) L_{-4}(s)
      + 2 (2 pi)^{s-1} sum_n n^{s-1} L_{n^2-4}(s) I(1, n/2),

    n = 2 contributing zeta(2s-1) = L_0(s).  The resonant band
    |n - 2|c|| <= 2|c|/T must sit inside the truncation.
    """
    s = complex(s)
    if abs(s.real - 0.5) > 1e-9:
        raise DomainError("sigma_critical is pinned to Re s = 1/2")
    two_c = 2.0 * abs(p.c)
    if n_terms is None:
        n_terms = int(math.ceil(10.0 * two_c)) + 8
    if n_terms < two_c * (1.0 + 1.0 / p.T) + 2.0:
        raise TruncationInfeasibleError(
            f"n_terms={n_terms} does not cover the resonant band near 2|c|={two_c:.2f}")
    total = (4.0 * math.pi) ** (s - 1.0) * phi_tilde(1.0, 1.0 - s, p) \
        * zagier_cached(-4, s)
    for n in range(1, n_terms + 1):
        ln = zagier_cached(n * n - 4, s)
        total += 2.0 * (2.0 * math.pi) ** (s - 1.0) * n ** (s - 1.0) * ln \
            * i_closed(1.0, s, 0.5 * n, p)
    # |I(x)| ~ (x/|c|)^{1/2} |1 - sqrt(-x^2/c^2)|^{-3/2} ~ (x/|c|)^{-1} far
    # out; with |L_{n^2-4}| << n^{2 theta} the tail falls like n^{2theta-3/2}
    cst = abs(i_closed(1.0, s, 0.5 * n_terms, p)) * n_terms ** 1.0
    tail = 2.0 * abs((2.0 * math.pi) ** (s - 1.0)) * cst \
        * (n_terms ** (2.0 * theta - 0.5)) / (0.5 - 2.0 * theta) \
        * max(1.0, n_terms ** (-2.0 * theta))
    return SeriesValue(complex(total), tail, n_terms)


# ---------------------------------------------------------------------------
# Sigma_B
# ---------------------------------------------------------------------------

def sigma_b_direct(k: int, s, p: TransformParams, q_terms: int = 12000,
                   n_terms: int = 64) -> SeriesValue:
    """Sigma_B(k, s) = 2 pi (-1)^k zeta(2s) sum_n n^-s sum_q S(1,n^2;q)/q
    J_{2k-1}(4 pi n / q); requires Re s > 3/2, k >= 1.

    Tail model is the random-sign estimate of sigma_lambda_direct; the
    k = 1 comparison against sigma_b_continued is refused there (Hecke-trick
    region), but the direct value itself is defined for every k >= 1.
    """
    from ..numerics.bessel import bessel_j_grid
    s = complex(s)
    if s.real <= 1.5:
        raise DomainError("sigma_b_direct requires Re s > 3/2")
    if k < 1:
        raise DomainError("sigma_b_direct requires k >= 1")
    S = kloosterman_tableau(n_terms, q_terms)
    ns = np.arange(1, n_terms + 1, dtype=float)
    qs = np.arange(1, q_terms + 1, dtype=float)
    x = 4.0 * math.pi * np.outer(ns, 1.0 / qs)
    kernel = bessel_j_grid(2 * k - 1, x)
    rows = (S / qs[None, :]) * kernel
    qsums = rows.sum(axis=1)
    total = complex(np.sum(ns ** (-s) * qsums))
    z2s = complex(riemann_zeta(2.0 * s))
    value = 2.0 * math.pi * (-1.0) ** k * z2s * total

    last = np.abs(rows[:, -q_terms // 4:])
    row_noise = float(np.sqrt(np.mean(last**2) * q_terms / 4))
    qtail = row_noise * float(np.sum(ns ** (-s.real)))
    rms = float(np.sqrt(np.mean(np.abs(qsums[-n_terms // 4:]) ** 2)))
    ntail = rms * math.sqrt(float(np.sum(
        np.arange(n_terms + 1, 40 * n_terms, dtype=float) ** (-2 * s.real))))
    tail = 2.0 * math.pi * abs(z2s) * 3.0 * (qtail + ntail)
    return SeriesValue(value, tail, n_terms * q_terms)


def sigma_b_continued(k: int, s, n_terms: int = 500,
                      include_zeta_term: bool = True,
                      theta: float = 1.0 / 6.0) -> SeriesValue:
    """The (SigmaB(1,s)) bracket for one k:

    (2 pi)^s (-1)^k / 2 * Gamma(k-s/2)/Gamma(k+s/2) L_{-4}(s)
    + (2 pi)^s/sqrt(pi) zeta(2s-1) cos(pi s/2) G-ratio Gamma(s-1/2)
    + (2 pi)^s sin(pi s/2)/sqrt(pi) L_{-3}(s) Phi_k(s)
    + pi^s cos(pi s/2)/sqrt(pi) sum_{n>2} L_{n^2-4}(s) n^s Psi_k(s, 4/n^2).

    include_zeta_term=False drops the zeta(2s-1) summand (the s = 1/2
    exclusion of the critical-point formula).
    """
    s = complex(s)
    if k < 1:
        raise DomainError("sigma_b_continued requires k >= 1")
    g = complex_gamma
    total = (2.0 * math.pi) ** s * (-1.0) ** k / 2.0 * g(k - s / 2.0) / g(k + s / 2.0) \
        * zagier_cached(-4, s)
    if include_zeta_term:
        total += (2.0 * math.pi) ** s / math.sqrt(math.pi) \
            * complex(riemann_zeta(2.0 * s - 1.0)) * cmath.cos(math.pi * s / 2.0) \
            * g(k - s / 2.0) * g(k + 0.5 - s / 2.0) \
            / (g(k + s / 2.0) * g(k - 0.5 + s / 2.0)) * g(s - 0.5)
    total += (2.0 * math.pi) ** s * cmath.sin(math.pi * s / 2.0) / math.sqrt(math.pi) \
        * zagier_cached(-3, s) * phi_k_fn(k, s)
    tail_scale = abs(math.pi ** s * cmath.cos(math.pi * s / 2.0) / math.sqrt(math.pi))
    last = 0.0
    acc = 0j
    for n in range(3, n_terms + 1):
        term = zagier_cached(n * n - 4, s) * n ** complex(s) \
            * psi_k_fn(k, s, 4.0 / (n * n))
        acc += term
        if n == n_terms:
            last = abs(term)
    total += math.pi ** s * cmath.cos(math.pi * s / 2.0) / math.sqrt(math.pi) * acc
    expo = s.real + 2.0 * theta - 2.0 * k
    if expo >= -1.05:
        raise TruncationInfeasibleError("Psi_k n-series needs k > (Re s + 2 theta + 1)/2")
    tail = tail_scale * last * n_terms / (-expo - 1.0) + 1e-12 * abs(total)
    return SeriesValue(complex(total), tail, n_terms)


def sigma_b_critical(s, p: TransformParams, k_terms: int | None = None,
                     n_terms: int = 400, exclude_zeta_term: bool = False) -> SeriesValue:
    """Sigma_B(s) on Re s = 1/2:

    (1/pi^2) sum_{k<=K} (2k-1) e^{-(2k-1) beta} * bracket(k, s),

    k-tail bounded through |e^{-(2k-1) beta}| = X^{-(2k-1)/2}.  At s = 1/2
    the zeta(2s-1) summand is a pole: it must be excluded with
    exclude_zeta_term=True (the critical-point formula) or s moved off 1/2.
    """
    s = complex(s)
    if abs(s.real - 0.5) > 1e-9:
        raise DomainError("sigma_b_critical is pinned to Re s = 1/2")
    if abs(s - 0.5) < 1e-12 and not exclude_zeta_term:
        raise DomainError("zeta(2s-1) summand has a pole at s = 1/2; "
                          "set exclude_zeta_term=True")
    if k_terms is None:
        k_terms = 1
        while p.X ** (-(2 * k_terms + 1) / 2.0) * (k_terms + 1) ** 2 > 1e-14 \
                and k_terms < 40:
            k_terms += 1
    total = 0j
    err = 0.0
    for k in range(1, k_terms + 1):
        br = sigma_b_continued(k, s, n_terms=n_terms,
                               include_zeta_term=not exclude_zeta_term)
        w = (2 * k - 1) * cmath.exp(-(2 * k - 1) * p.beta)
        total += w * br.value
        err += abs(w) * br.err_bound
    total /= math.pi ** 2
    err /= math.pi ** 2
    # k-tail: bracket magnitudes are O(4^k Gamma-decay); observed brackets
    # stay O(1)-bounded, inflate by the last weight's geometric remainder
    ktail = 10.0 * p.X ** (-(2 * k_terms + 1) / 2.0) / (1.0 - 1.0 / p.X)
    return SeriesValue(complex(total), err + ktail, k_terms * n_terms)
