"""The oscillating test function phi and its transform family.

Everything is driven by one parameter bundle (X, T):

    beta = (1/2) log X + i/(2T),
    phi(x) = (sinh beta / pi) x exp(i x cosh beta),
    c = -i cosh beta = a - i b,  a, b > 0,  arg c = -pi/2 + gamma.

Closed forms implemented here:

    phi_hat(t)  = sinh(pi t + 2 i beta t)/sinh(pi t)      (t = 0 by limit)
    phi_zero    = -cosh beta / (2 pi^2 sinh^2 beta)
    phi_b(x)    = (2/pi) sum_k (-1)^k (2k-1) e^{-(2k-1) beta} J_{2k-1}(x)
    phi_tilde(lam, w) = (sinh beta/pi) Gamma(w + lam) / c^{w + lam}

plus the special functions of the geometric side:

    I(lam, x)   closed rational form, power series, and the Mellin-Barnes
                contour with -Re lam < Delta < -Re s;
    I_B(lam, x) closed 2F1 form for x >= 2 and its contour twin;
    Phi_k(s), Psi_k(s, x) hypergeometric forms with Mellin-Barnes twins.

Branches: sqrt(-x^2/c^2) always means the principal square root of the
computed complex number -x^2/c^2 (which lands at (x/|c|) e^{-i gamma}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import BranchDegeneracyError, DomainError
from ..numerics import (ContourSpec, SeriesValue, bessel_j_err, complex_gamma,
                        gauss_2f1, log_gamma, log_sin, mellin_barnes)

__all__ = [
    "TransformParams",
    "make_params",
    "phi",
    "phi_lambda",
    "phi_hat",
    "phi_zero",
    "phi_b",
    "phi_tilde",
    "i_closed",
    "i_series",
    "i_mb",
    "i_b_closed",
    "i_b_mb",
    "phi_k_fn",
    "phi_k_mb",
    "psi_k_fn",
    "psi_k_mb",
]


@dataclass(frozen=True)
class TransformParams:
    """(X, T) with the derived beta, c = a - ib and gamma = arg c + pi/2."""

    X: float
    T: float
    beta: complex
    c: complex
    a: float
    b: float
    gamma: float


def make_params(X: float, T: float) -> TransformParams:
    if not (X > 1.0):
        raise DomainError("make_params requires X > 1")
    if not (T >= 1.0):
        raise DomainError("make_params requires T >= 1")
    beta = 0.5 * math.log(X) + 0.5j / T
    ch = cmath.cosh(beta)
    c = -1j * ch
    a = math.sinh(0.5 * math.log(X)) * math.sin(0.5 / T)
    b = math.cosh(0.5 * math.log(X)) * math.cos(0.5 / T)
    gamma = cmath.phase(c) + 0.5 * math.pi
    p = TransformParams(X, T, beta, c, a, b, gamma)
    if abs(c - (a - 1j * b)) > 1e-14 * abs(c):
        raise DomainError("internal inconsistency in c = a - ib")
    if not (a > 0 and b > 0 and 0 < gamma < 1.0):
        raise DomainError("parameters leave the a, b > 0, gamma in (0,1) regime")
    return p


def phi(x, p: TransformParams):
    """phi(x) = (sinh beta / pi) x exp(i x cosh beta)."""
    x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    return (cmath.sinh(p.beta) / math.pi) * x * np.exp(1j * x * cmath.cosh(p.beta))


def phi_lambda(lam, x, p: TransformParams):
    """phi(lam, x) = (sinh beta / pi) x^lam exp(i x cosh beta), x > 0."""
    lam = complex(lam)
    xa = np.asarray(x, dtype=float)
    out = (cmath.sinh(p.beta) / math.pi) * np.exp(lam * np.log(xa)) \
        * np.exp(1j * xa * cmath.cosh(p.beta))
    return out if np.ndim(x) else complex(out)


def phi_hat(t, p: TransformParams):
    """sinh(pi t + 2 i beta t)/sinh(pi t); entire in t, t = 0 by limit.

    For Re(pi t) > 25 the quotient is evaluated in shifted form
    e^{2 i beta t} (1 - e^{-2(pi + 2 i beta) t}) / (1 - e^{-2 pi t}),
    which never overflows.
    """
    t = complex(t)
    w = math.pi * t
    if t == 0:
        return 1.0 + 2j * p.beta / math.pi
    if abs(t) < 1e-8:
        return _phi_hat_small(t, p)
    if abs(w.real) > 25.0:
        sgn = 1.0 if w.real > 0 else -1.0
        ts = sgn * t
        val = cmath.exp(2j * p.beta * ts) \
            * (1.0 - cmath.exp(-2.0 * (math.pi + 2j * p.beta) * ts)) \
            / (1.0 - cmath.exp(-2.0 * math.pi * ts))
        return val
    return cmath.sinh(w + 2j * p.beta * t) / cmath.sinh(w)


def _phi_hat_small(t: complex, p: TransformParams) -> complex:
    # sinh((pi + 2 i beta) t)/sinh(pi t) via the series in t
    u = (math.pi + 2j * p.beta) * t
    v = math.pi * t
    num = u * (1.0 + u * u / 6.0 + u**4 / 120.0)
    den = v * (1.0 + v * v / 6.0 + v**4 / 120.0)
    return num / den


def phi_zero(p: TransformParams) -> complex:
    """phi_0 = -cosh beta / (2 pi^2 sinh^2 beta)."""
    return -cmath.cosh(p.beta) / (2.0 * math.pi**2 * cmath.sinh(p.beta) ** 2)


def phi_b_kmax(p: TransformParams, tol: float = 1e-15) -> int:
    """Smallest K with X^{-(2K+1)/2} (K+1)^2 below tol (series truncation)."""
    K = 1
    while p.X ** (-(2 * K + 1) / 2.0) * (K + 1) ** 2 > tol and K < 60:
        K += 1
    return K


def phi_b(x: float, p: TransformParams, K: int | None = None) -> SeriesValue:
    """phi_B(x) = (2/pi) sum_{k<=K} (-1)^k (2k-1) e^{-(2k-1) beta} J_{2k-1}(x).

    Tail bound: |J_{2k-1}(x)| <= (x/2)^{2k-1}/(2k-1)! and
    |e^{-(2k-1) beta}| = X^{-(2k-1)/2}.
    """
    if x < 0:
        raise DomainError("phi_b requires x >= 0")
    if K is None:
        K = phi_b_kmax(p)
    total = 0j
    err = 0.0
    for k in range(1, K + 1):
        o = 2 * k - 1
        jv, je = bessel_j_err(o, x)
        total += (-1) ** k * o * cmath.exp(-o * p.beta) * jv
        err += o * p.X ** (-o / 2.0) * je
    total *= 2.0 / math.pi
    # geometric-style tail from the Bessel smallness bound
    tail = 0.0
    for k in range(K + 1, K + 40):
        o = 2 * k - 1
        jb = min(1.0, (0.5 * x) ** o / math.factorial(min(o, 170)))
        tail += (2.0 / math.pi) * o * p.X ** (-o / 2.0) * jb
        if o > 170:
            break
    return SeriesValue(total, err * 2.0 / math.pi + tail, K)


def phi_tilde(lam, w, p: TransformParams):
    """Mellin transform (sinh beta/pi) Gamma(w + lam) / c^{w + lam}."""
    lam = complex(lam)
    w = np.asarray(w, dtype=complex)
    logc = cmath.log(p.c)  # principal: arg c = -pi/2 + gamma
    val = (cmath.sinh(p.beta) / math.pi) \
        * np.exp(log_gamma(w + lam) - (w + lam) * logc)
    return val if np.ndim(w) else complex(val)


# ---------------------------------------------------------------------------
# I(lam, x): closed form, series, contour
# ---------------------------------------------------------------------------

def _root_term(x: float, p: TransformParams) -> complex:
    """Principal sqrt(-x^2/c^2) = (x/|c|) e^{-i gamma}."""
    z = -(x * x) / (p.c * p.c)
    return cmath.sqrt(z)


def i_closed(lam, s, x: float, p: TransformParams) -> complex:
    """Closed rational form of I(lam, x) (valid after continuation):

    (sinh beta / (pi c^lam)) 2^{lam-s} (x/c)^{1-s}
      * Gamma((1+lam-s)/2) Gamma(1+(lam-s)/2) / (2 Gamma(1/2))
      * ((1 + R)^{s-lam-1} + (1 - R)^{s-lam-1}),  R = sqrt(-x^2/c^2).
    """
    lam, s = complex(lam), complex(s)
    R = _root_term(x, p)
    for base in (1.0 + R, 1.0 - R):
        if abs(base) < 1e-12:
            raise BranchDegeneracyError("1 +/- sqrt(-x^2/c^2) degenerates")
    pref = (cmath.sinh(p.beta) / math.pi) * cmath.exp(-lam * cmath.log(p.c))
    pref *= 2.0 ** (lam - s) * cmath.exp((1.0 - s) * cmath.log(x / p.c))
    pref *= complex_gamma((1.0 + lam - s) / 2.0) * complex_gamma(1.0 + (lam - s) / 2.0) \
        / (2.0 * complex_gamma(0.5))
    body = (1.0 + R) ** (s - lam - 1.0) + (1.0 - R) ** (s - lam - 1.0)
    return pref * body


def i_series(lam, s, x: float, p: TransformParams, terms: int = 80) -> SeriesValue:
    """Pole-sum series (sinh beta/(pi c^lam)) (x/c)^{1-s}
    sum_j (-1)^j Gamma(1+lam-s+2j)/(2j)! (x/c)^{2j}; converges for |x| < |c|."""
    lam, s = complex(lam), complex(s)
    z = x / p.c
    pref = (cmath.sinh(p.beta) / math.pi) * cmath.exp(-lam * cmath.log(p.c)) \
        * cmath.exp((1.0 - s) * cmath.log(z))
    total = 0j
    term_gamma = complex_gamma(1.0 + lam - s)
    fact = 1.0
    zz = z * z
    zpow = 1.0 + 0j
    last = 0.0
    for j in range(terms):
        if j > 0:
            term_gamma *= (lam - s + 2.0 * j) * (lam - s + 2.0 * j - 1.0)
            fact *= (2.0 * j) * (2.0 * j - 1.0)
            zpow *= zz
        term = (-1) ** j * term_gamma / fact * zpow
        total += term
        last = abs(term)
    ratio = abs(zz) * (abs(lam - s) + 2.0 * terms) ** 2 / ((2.0 * terms) * (2.0 * terms - 1.0))
    tail = last * ratio / (1.0 - ratio) if ratio < 1 else math.inf
    return SeriesValue(pref * total, abs(pref) * tail, terms)


def i_mb(lam, s, x: float, p: TransformParams, contour: ContourSpec) -> SeriesValue:
    """Mellin-Barnes form: (1/2 pi i) int phi_tilde(lam, w) Gamma(1-s-w)
    sin(pi (s+w)/2) x^w dw on -Re lam < Delta < -Re s."""
    lam, s = complex(lam), complex(s)
    if not (-lam.real < contour.delta < -s.real):
        raise DomainError("contour must satisfy -Re lam < Delta < -Re s")
    logc = cmath.log(p.c)
    logx = math.log(x)
    pref = cmath.sinh(p.beta) / math.pi

    def f(w):
        # fused exp of log-gamma sums; sin folded in log form for stability
        return pref * np.exp(log_gamma(w + lam) - (w + lam) * logc
                             + log_gamma(1.0 - s - w)
                             + log_sin(0.5 * math.pi * (s + w))
                             + w * logx)

    # slow side decays like e^{-gamma |v|} (gamma = arg c + pi/2)
    return mellin_barnes(f, contour, decay_hint=("exp", p.gamma))


# ---------------------------------------------------------------------------
# I_B(lam, x), Phi_k, Psi_k
# ---------------------------------------------------------------------------

def i_b_closed(lam, s, x: float) -> SeriesValue:
    """Closed form of I_B(lam, x) for x >= 2:

    (2^{2 lam} / (2^s sqrt(pi))) cos(pi lam - pi s/2)
      * Gamma(lam - s/2) Gamma(lam + 1/2 - s/2)/Gamma(2 lam)
      * x^{1-2 lam} 2F1(lam - s/2, lam + 1/2 - s/2; 2 lam; 4/x^2).
    """
    lam, s = complex(lam), complex(s)
    if x < 2.0:
        raise DomainError("closed I_B form requires x >= 2")
    hyp = gauss_2f1(lam - s / 2.0, lam + 0.5 - s / 2.0, 2.0 * lam, 4.0 / (x * x))
    pref = 2.0 ** (2.0 * lam) / (2.0 ** s * math.sqrt(math.pi)) \
        * cmath.cos(math.pi * lam - math.pi * s / 2.0) \
        * complex_gamma(lam - s / 2.0) * complex_gamma(lam + 0.5 - s / 2.0) \
        / complex_gamma(2.0 * lam) * x ** (1.0 - 2.0 * lam)
    return SeriesValue(pref * hyp.value, abs(pref) * hyp.err_bound, hyp.terms_used)


def i_b_mb(lam, s, x: float, contour: ContourSpec | None = None,
           target: float = 2e-9) -> SeriesValue:
    """Contour form of I_B: (1/2 pi i) int [Gamma(lam - 1/2 + w/2) /
    Gamma(lam + 1/2 - w/2)] Gamma(1-s-w) sin(pi (s+w)/2) x^w dw,
    on 1 - 2 Re lam < Delta < 1 - Re s.

    Along the line the exponential Stirling factors cancel, leaving the
    envelope |v|^{-(Re s + 1/2)} times an oscillation of asymptotically
    constant frequency log(x/2); the tail beyond the truncation height is
    bounded by integration by parts (the "osc" tail model).  The default
    height grows until the sampled envelope meets the target.
    """
    lam, s = complex(lam), complex(s)
    if x < 2.0 + 1e-12:
        raise DomainError("i_b_mb requires x > 2 (strip of (integralIBgeq2))")
    logx = math.log(x)
    omega = math.log(x / 2.0)

    def f(w):
        return np.exp(log_gamma(lam - 0.5 + 0.5 * w) - log_gamma(lam + 0.5 - 0.5 * w)
                      + log_gamma(1.0 - s - w)
                      + log_sin(0.5 * math.pi * (s + w))
                      + w * logx)

    if contour is None:
        delta = 1.0 - 2.0 * lam.real + 0.5
        if delta >= 1.0 - s.real:
            delta = 0.5 * ((1.0 - 2.0 * lam.real) + (1.0 - s.real))
        H = 150.0
        while H < 12000.0:
            vv = H * (1.0 + np.linspace(0.0, 0.06, 9))
            env = float(np.max(np.abs(f(delta + 1j * vv))
                               + np.abs(f(delta - 1j * vv))))
            if 3.0 * env / omega < target:
                break
            H *= 1.5
        contour = ContourSpec(delta, H, max(4000, int(H * 8)))
    if not (1.0 - 2.0 * lam.real < contour.delta < 1.0 - s.real):
        raise DomainError("contour must satisfy 1 - 2 Re lam < Delta < 1 - Re s")
    return mellin_barnes(f, contour, decay_hint=("osc", omega))


def phi_k_fn(k: int, s) -> complex:
    """Phi_k(s) = Gamma(k - s/2) Gamma(1 - k - s/2)/Gamma(1/2)
    * 2F1(k - s/2, 1 - k - s/2; 1/2; 1/4)."""
    if k < 1:
        raise DomainError("phi_k_fn requires k >= 1")
    s = complex(s)
    hyp = gauss_2f1(k - s / 2.0, 1.0 - k - s / 2.0, 0.5, 0.25)
    pref = complex_gamma(k - s / 2.0) * complex_gamma(1.0 - k - s / 2.0) \
        / complex_gamma(0.5)
    return pref * hyp.value


def phi_k_mb(k: int, s, contour: ContourSpec) -> SeriesValue:
    """Mellin-Barnes twin of Phi_k, obtained by the Pfaff map 1/4 -> -1/3:

    Phi_k = (4/3)^{k - s/2} [Gamma(1-k-s/2)/Gamma(k-1/2+s/2)]
            (1/2 pi i) int Gamma(k-s/2+z) Gamma(k-1/2+s/2+z) Gamma(-z)
                           / Gamma(1/2+z) 3^{-z} dz.
    """
    s = complex(s)
    pref = (4.0 / 3.0) ** (k - s / 2.0) \
        * complex_gamma(1.0 - k - s / 2.0) / complex_gamma(k - 0.5 + s / 2.0)
    log3 = math.log(3.0)

    def f(z):
        return np.exp(log_gamma(k - s / 2.0 + z) + log_gamma(k - 0.5 + s / 2.0 + z)
                      + log_gamma(-z) - log_gamma(0.5 + z) - z * log3)

    # two decaying Gammas against one growing: net e^{-pi |v|} (times 3^{-z})
    sv = mellin_barnes(f, contour, decay_hint=("exp", math.pi * 0.5))
    return SeriesValue(pref * sv.value, abs(pref) * sv.err_bound, sv.terms_used)


def psi_k_fn(k: int, s, x: float) -> complex:
    """Psi_k(s, x) = x^k Gamma(k - s/2) Gamma(k + 1/2 - s/2)/Gamma(2k)
    * 2F1(k - s/2, k + (1-s)/2; 2k; x), 0 < x < 1."""
    if k < 1:
        raise DomainError("psi_k_fn requires k >= 1")
    if not (0.0 < x < 1.0):
        raise DomainError("psi_k_fn requires 0 < x < 1")
    s = complex(s)
    hyp = gauss_2f1(k - s / 2.0, k + (1.0 - s) / 2.0, 2.0 * k, x)
    pref = x**k * complex_gamma(k - s / 2.0) * complex_gamma(k + 0.5 - s / 2.0) \
        / complex_gamma(2 * k)
    return pref * hyp.value


def psi_k_mb(k: int, s, x: float, contour: ContourSpec) -> SeriesValue:
    """Mellin-Barnes twin of Psi_k on 1/4 - k < Delta < 0:

    Psi_k(s,x) = x^k (1-x)^{s/2-k} [Gamma(k+1/2-s/2)/Gamma(k-1/2+s/2)]
      (1/2 pi i) int Gamma(k-s/2+z) Gamma(k-1/2+s/2+z) Gamma(-z)/Gamma(2k+z)
                     (x/(1-x))^z dz.
    """
    s = complex(s)
    if not (0.25 - k < contour.delta < 0.0):
        raise DomainError("contour must satisfy 1/4 - k < Delta < 0")
    y = x / (1.0 - x)
    logy = math.log(y)
    pref = x**k * (1.0 - x) ** (s / 2.0 - k) \
        * complex_gamma(k + 0.5 - s / 2.0) / complex_gamma(k - 0.5 + s / 2.0)

    def f(z):
        return np.exp(log_gamma(k - s / 2.0 + z) + log_gamma(k - 0.5 + s / 2.0 + z)
                      + log_gamma(-z) - log_gamma(2.0 * k + z) + z * logy)

    sv = mellin_barnes(f, contour, decay_hint=("exp", math.pi * 0.5))
    return SeriesValue(pref * sv.value, abs(pref) * sv.err_bound, sv.terms_used)
