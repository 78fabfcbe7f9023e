"""Assembly of the first-moment identity for Maass symmetric-square
L-functions weighted by phi_hat.

Spectral side:   M1(s) = sum_j alpha_j phi_hat(t_j) L(sym^2 u_j, s).

Geometric side, Re s > 3/2:

    M1(s) = zeta(2s) phi_0 + Sigma(s) - Sigma_B(s)
            - (2 zeta(s)/pi) int_0^inf zeta(s+2it) zeta(s-2it)
                                        / |zeta(1+2it)|^2 phi_hat(t) dt,

with Sigma(s) = zeta(2s) * (phi double sum) and Sigma_B(s) assembled from
the (2k-1) e^{-(2k-1) beta} weighted J-kernel sums.  On Re s = 1/2 the same
layout gains the pole term -2 zeta(2s-1)/zeta(2-s) phi_hat((1-s)/2i), and
at the critical point s = 1/2 the two simple poles (zeta(2s) phi_0 against
the zeta(2s-1) summand inside Sigma_B) cancel into a digamma series:

    M1(1/2) = -(1/2 pi^2) sum_k (2k-1) e^{-(2k-1) beta}
                            (psi(k - 1/4) + psi(k + 1/4))
              - cosh beta/(4 pi^2 sinh^2 beta) (3 gamma_E + pi/2 - 3 log 2 pi)
              + Sigma(1/2) - Sigma_B(1/2)|_{no zeta(2s-1) summand}
              - continuous - 2 zeta(0)/zeta(3/2) phi_hat(1/(4i)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import CoverageError, DomainError, PoleError
from ..numerics import EULER_GAMMA, SeriesValue, digamma, riemann_zeta
from ..numerics.quadrature import adaptive_integrate
from .sigma import (sigma_b_critical, sigma_b_direct, sigma_critical,
                    sigma_lambda_direct)
from .transforms import TransformParams, phi_hat, phi_zero

__all__ = [
    "MomentReport",
    "continuous_spectrum",
    "m1_center",
    "m1_geometric",
    "m1_spectral",
    "cosh_sum_identity_residual",
]


@dataclass(frozen=True)
class MomentReport:
    """Both sides of the moment identity with the sign layout

    discrepancy = |lhs - (main + sigma - sigma_b - continuous - pole_term)|.
    """

    s: complex
    lhs: SeriesValue
    main: complex
    sigma: SeriesValue
    sigma_b: SeriesValue
    continuous: SeriesValue
    pole_term: complex

    @property
    def geometric(self) -> complex:
        return (self.main + self.sigma.value - self.sigma_b.value
                - self.continuous.value - self.pole_term)

    @property
    def discrepancy(self) -> float:
        return abs(self.lhs.value - self.geometric)

    @property
    def budget(self) -> float:
        return (self.lhs.err_bound + self.sigma.err_bound
                + self.sigma_b.err_bound + self.continuous.err_bound)


def _phi_hat_vec(t: np.ndarray, p: TransformParams) -> np.ndarray:
    """phi_hat on a real array, stable for large t."""
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape, dtype=complex)
    big = math.pi * np.abs(t) > 25.0
    ts = np.where(big, np.abs(t), 1.0)
    sgn = np.sign(t)
    val_big = np.exp(2j * p.beta * ts) \
        * (1.0 - np.exp(-2.0 * (math.pi + 2j * p.beta) * ts)) \
        / (1.0 - np.exp(-2.0 * math.pi * ts))
    # phi_hat is even in t up to conjugation structure: sinh odd/odd quotient
    # is even, so negative t just mirrors
    w = math.pi * np.where(big, 1.0, t)
    val_small = np.sinh(w + 2j * p.beta * np.where(big, 1.0, t)) / np.sinh(w)
    out = np.where(big, val_big, val_small)
    tiny = np.abs(t) < 1e-8
    if np.any(tiny):
        out[tiny] = 1.0 + 2j * p.beta / math.pi
    return out


def continuous_spectrum(s, p: TransformParams, t_cap: float | None = None) -> SeriesValue:
    """(2 zeta(s)/pi) int_0^inf zeta(s+2it) zeta(s-2it)/|zeta(1+2it)|^2
    phi_hat(t) dt; the integrand vanishes like t^2 at 0 and decays e^{-t/T}."""
    s = complex(s)
    if abs(s - 1.0) < 1e-6:
        raise PoleError("continuous spectrum evaluated too close to s = 1")
    if t_cap is None:
        t_cap = p.T * 42.0 + 10.0
    zs = complex(riemann_zeta(s))

    def f(t):
        t = np.asarray(t, dtype=float)
        num = riemann_zeta(s + 2j * t) * riemann_zeta(s - 2j * t)
        den = riemann_zeta(1.0 + 2j * t) * riemann_zeta(1.0 - 2j * t)
        return num / den * _phi_hat_vec(t, p)

    panels = max(24, int(t_cap * 2))
    val, err = adaptive_integrate(f, 1e-9, t_cap, abs_tol=1e-13, rel_tol=1e-12,
                                  max_panels=3 * panels, initial=panels)
    # tail: |phi_hat| <= 2 e^{-t/T} for t > t_cap, zeta factors O(log^2)
    tail = 40.0 * p.T * math.exp(-t_cap / p.T) * (1.0 + math.log(1.0 + t_cap)) ** 2
    scale = 2.0 * zs / math.pi
    return SeriesValue(scale * val, abs(scale) * (err + tail), panels * 21)


def m1_spectral(s, p: TransformParams, dataset, n_coeff: int | None = None) -> SeriesValue:
    """Spectral side sum_j alpha_j phi_hat(t_j) L(sym^2 u_j, s) over the
    dataset, alpha_j = 2/L(sym^2 u_j, 1) from the stored value."""
    from ..spectral import sym2_l
    s = complex(s)
    if not dataset.forms:
        raise CoverageError("empty spectral dataset")
    total = 0j
    err = 0.0
    for form in dataset.forms:
        nmax = int(math.isqrt(form.n_coeff))
        if n_coeff is not None:
            nmax = min(nmax, n_coeff)
        lval = sym2_l(form, s, nmax)
        w = form.alpha * phi_hat(form.t, p)
        total += w * lval.value
        err += abs(w) * (lval.err_bound + abs(lval.value) * form.alpha_err)
    # truncation of the spectrum: Weyl density t/6 with weight
    # |phi_hat| <= 2 e^{-t/T}, |alpha L| bounded by the observed maximum
    tmax = dataset.forms[-1].t
    scale = max(abs(2.0 / f.l_sym2_at_1) for f in dataset.forms)
    spectral_tail = scale * 4.0 * (p.T * tmax / 6.0 + p.T**2 / 6.0) \
        * math.exp(-tmax / p.T)
    return SeriesValue(total, err + spectral_tail, len(dataset.forms))


def m1_geometric(s, p: TransformParams, q_terms: int = 12000,
                 n_terms: int = 64, crit_n_terms: int | None = None,
                 crit_k_terms: int | None = None) -> MomentReport:
    """Geometric side of the identity as a MomentReport with lhs unset.

    Re s > 3/2 uses the direct Kloosterman double sums (no pole term);
    Re s = 1/2 uses the continued forms plus the pole term
    -2 zeta(2s-1)/zeta(2-s) phi_hat((1-s)/2i).
    """
    s = complex(s)
    zero = SeriesValue(0j, 0.0, 0)
    if s.real > 1.5:
        z2s = complex(riemann_zeta(2.0 * s))
        main = z2s * phi_zero(p)
        base = sigma_lambda_direct(1.0, s, p, q_terms=q_terms, n_terms=n_terms)
        sigma = SeriesValue(z2s * base.value, abs(z2s) * base.err_bound,
                            base.terms_used)
        kmax = 1
        while p.X ** (-(2 * kmax + 1) / 2.0) * (kmax + 1) ** 2 > 1e-12 and kmax < 30:
            kmax += 1
        tot = 0j
        errb = 0.0
        terms = 0
        for k in range(1, kmax + 1):
            bk = sigma_b_direct(k, s, p, q_terms=q_terms, n_terms=n_terms)
            w = (2 * k - 1) * cmath.exp(-(2 * k - 1) * p.beta) / math.pi**2
            tot += w * bk.value
            errb += abs(w) * bk.err_bound
            terms += bk.terms_used
        ktail = 10.0 * p.X ** (-(2 * kmax + 1) / 2.0)
        sigma_b = SeriesValue(tot, errb + ktail, terms)
        cont = continuous_spectrum(s, p)
        return MomentReport(s, zero, main, sigma, sigma_b, cont, 0j)
    if abs(s.real - 0.5) < 1e-9:
        if abs(s - 0.5) < 1e-12:
            raise PoleError("use m1_center at the critical point s = 1/2")
        z2s = complex(riemann_zeta(2.0 * s))
        main = z2s * phi_zero(p)
        sigma = sigma_critical(s, p, n_terms=crit_n_terms)
        sigma_b = sigma_b_critical(s, p, k_terms=crit_k_terms,
                                   n_terms=400 if crit_n_terms is None
                                   else max(400, crit_n_terms))
        cont = continuous_spectrum(s, p)
        # enters the report as -pole_term, matching the paper's
        # -2 zeta(2s-1)/zeta(2-s) phi_hat((1-s)/2i)
        pole = 2.0 * complex(riemann_zeta(2.0 * s - 1.0)) \
            / complex(riemann_zeta(2.0 - s)) * phi_hat((1.0 - s) / 2j, p)
        return MomentReport(s, zero, main, sigma, sigma_b, cont, pole)
    raise DomainError("m1_geometric supports Re s > 3/2 or Re s = 1/2")


def cosh_sum_identity_residual(p: TransformParams, k_terms: int = 200) -> float:
    """|sum_k (2k-1) e^{-(2k-1) beta} - cosh beta/(2 sinh^2 beta)|."""
    acc = 0j
    for k in range(1, k_terms + 1):
        acc += (2 * k - 1) * cmath.exp(-(2 * k - 1) * p.beta)
    target = cmath.cosh(p.beta) / (2.0 * cmath.sinh(p.beta) ** 2)
    return abs(acc - target)


def m1_center(p: TransformParams, k_terms: int | None = None,
              crit_n_terms: int | None = None) -> SeriesValue:
    """The closed critical-point formula for M1(1/2); X > 5 regime."""
    if p.X <= 5.0:
        raise DomainError("m1_center requires X > 5")
    if k_terms is None:
        k_terms = 1
        while p.X ** (-(2 * k_terms + 1) / 2.0) * (k_terms + 1) ** 2 > 1e-14 \
                and k_terms < 60:
            k_terms += 1
    dig = 0j
    for k in range(1, k_terms + 1):
        dig += (2 * k - 1) * cmath.exp(-(2 * k - 1) * p.beta) \
            * (digamma(k - 0.25) + digamma(k + 0.25))
    dig *= -1.0 / (2.0 * math.pi**2)
    const_block = -cmath.cosh(p.beta) / (4.0 * math.pi**2 * cmath.sinh(p.beta) ** 2) \
        * (3.0 * EULER_GAMMA + math.pi / 2.0 - 3.0 * math.log(2.0 * math.pi))
    sig = sigma_critical(0.5 + 0j, p, n_terms=crit_n_terms)
    sigb = sigma_b_critical(0.5 + 0j, p, n_terms=400 if crit_n_terms is None
                            else max(400, crit_n_terms), exclude_zeta_term=True)
    cont = continuous_spectrum(0.5 + 0j, p)
    pole = 2.0 * complex(riemann_zeta(0.0)) / complex(riemann_zeta(1.5)) \
        * phi_hat(0.25 / 1j, p)
    total = dig + const_block + sig.value - sigb.value - cont.value - pole
    err = sig.err_bound + sigb.err_bound + cont.err_bound \
        + abs(dig) * 1e-13 + p.X ** (-(2 * k_terms + 1) / 2.0) * 20.0
    return SeriesValue(complex(total), err, k_terms)
