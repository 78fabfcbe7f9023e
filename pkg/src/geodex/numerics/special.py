"""Complex special functions in plain double precision.

Gamma and digamma come from a fixed-coefficient Lanczos approximation (g = 7,
9 terms, coefficients frozen below) with the reflection formula for
Re z < 1/2.  Riemann and Hurwitz zeta use Euler-Maclaurin summation whose
split point grows with |Im s|; real-character Dirichlet L-functions are
assembled from Hurwitz zeta values at rational offsets.

All functions accept scalars or numpy arrays and are pure: the summation
order is fixed, so identical inputs give bit-identical outputs.
"""

from __future__ import annotations

import math

import numpy as np

from .._intutil import is_fundamental_discriminant, kronecker
from ..errors import DomainError, PoleError, RangeOverflowError

EULER_GAMMA = 0.5772156649015328606065120900824024

# Lanczos g = 7, n = 9 (Godfrey/Pugh coefficients, frozen for reproducibility).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# B_{2k} for k = 1..15, used by the Euler-Maclaurin tails and digamma.
_BERN2K = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
)


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr


def _near_nonpositive_integer(z, tol=1e-12):
    zr = np.real(z)
    zi = np.imag(z)
    k = np.round(zr)
    return (np.abs(zi) < tol) & (np.abs(zr - k) < tol) & (k <= 0)


def complex_gamma(z):
    """Gamma(z) for complex z, relative error ~1e-13 on |z| <= 50.

    Raises PoleError at non-positive integers and RangeOverflowError when the
    result does not fit in a double.
    """
    zc = _as_complex(z)
    if np.any(_near_nonpositive_integer(zc)):
        raise PoleError("gamma pole at non-positive integer")
    scalar = zc.ndim == 0
    zc = np.atleast_1d(zc)

    out = np.empty_like(zc)
    refl = np.real(zc) < 0.5
    zz = np.where(refl, 1.0 - zc, zc)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        acc = np.full_like(zz, _LANCZOS[0])
        for k in range(1, 9):
            acc = acc + _LANCZOS[k] / (zz - 1.0 + k)
        t = zz - 1.0 + _LANCZOS_G + 0.5
        g = _SQRT_2PI * np.exp((zz - 0.5) * np.log(t) - t) * acc

        out[~refl] = g[~refl]
        if np.any(refl):
            zr = zc[refl]
            out[refl] = math.pi / (np.sin(math.pi * zr) * g[refl])
    if not np.all(np.isfinite(out)):
        raise RangeOverflowError("gamma overflow/underflow outside double range")
    return out[0] if scalar else out


def digamma(z):
    """psi(z) for complex z; recurrence into |z| >= 8 plus Bernoulli tail."""
    zc = _as_complex(z)
    if np.any(_near_nonpositive_integer(zc)):
        raise PoleError("digamma pole at non-positive integer")
    scalar = zc.ndim == 0
    zc = np.atleast_1d(zc).copy()

    out = np.zeros_like(zc)
    refl = np.real(zc) < 0.5
    if np.any(refl):
        # psi(z) = psi(1-z) - pi*cot(pi z)
        out[refl] -= math.pi / np.tan(math.pi * zc[refl])
        zc[refl] = 1.0 - zc[refl]

    # shift until |z| >= 9
    for _ in range(16):
        small = np.abs(zc) < 9.0
        if not np.any(small):
            break
        out[small] -= 1.0 / zc[small]
        zc[small] += 1.0

    inv2 = 1.0 / (zc * zc)
    tail = np.zeros_like(zc)
    term = np.ones_like(zc)
    for k, b in enumerate(_BERN2K[:8], start=1):
        term = term * inv2
        tail = tail + b / (2 * k) * term
    out += np.log(zc) - 0.5 / zc - tail
    if not np.all(np.isfinite(out)):
        raise RangeOverflowError("digamma overflow")
    return out[0] if scalar else out


def _zeta_em(s, a, nterms, order):
    """Euler-Maclaurin Hurwitz zeta core, vectorized over s (and matching a)."""
    s = np.atleast_1d(_as_complex(s))
    a = np.broadcast_to(np.asarray(a, dtype=float), s.shape)
    n = np.arange(nterms)[:, None]
    base = n + a[None, :]
    head = np.sum(base ** (-s[None, :]), axis=0)

    na = nterms + a
    tail = na ** (1.0 - s) / (s - 1.0) + 0.5 * na ** (-s)
    # Bernoulli correction sum_{k>=1} B_2k/(2k)! * (s)_{2k-1} * (N+a)^{-s-2k+1}
    poch = s.copy()  # (s)_1
    fact = 1.0
    power = na ** (-s - 1.0)
    corr = np.zeros_like(s)
    for k in range(1, order + 1):
        fact *= (2 * k - 1) * (2 * k)
        corr = corr + _BERN2K[k - 1] / fact * poch * power
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        power = power / (na * na)
    return head + tail + corr


def _em_params(s):
    t = float(np.max(np.abs(np.imag(np.atleast_1d(_as_complex(s))))))
    nterms = max(18, int(0.5 * t) + 14)
    return nterms, 12


def riemann_zeta(s):
    """zeta(s) by Euler-Maclaurin; relative error <~1e-12 for |Im s| <= 200."""
    sc = _as_complex(s)
    if np.any(np.abs(sc - 1.0) < 1e-12):
        raise PoleError("zeta pole at s = 1")
    scalar = sc.ndim == 0
    nterms, order = _em_params(sc)
    val = _zeta_em(np.atleast_1d(sc), 1.0, nterms, order)
    return val[0] if scalar else val.reshape(np.shape(s))


def hurwitz_zeta(s, a):
    """zeta(s, a) for 0 < a <= 1; same accuracy box as riemann_zeta."""
    if np.any(np.asarray(a, dtype=float) <= 0.0) or np.any(np.asarray(a, dtype=float) > 1.0):
        raise DomainError("hurwitz_zeta requires a in (0, 1]")
    sc = _as_complex(s)
    if np.any(np.abs(sc - 1.0) < 1e-12):
        raise PoleError("hurwitz zeta pole at s = 1")
    scalar = sc.ndim == 0 and np.ndim(a) == 0
    s1, a1 = np.broadcast_arrays(np.atleast_1d(sc), np.asarray(a, dtype=float))
    nterms, order = _em_params(s1)
    val = _zeta_em(s1.ravel(), a1.ravel(), nterms, order).reshape(s1.shape)
    return val[0] if scalar else val


def _hurwitz_row(s, a_vec, nterms=None, order=12):
    """Hurwitz zeta at one s and a vector of offsets a (internal, vectorized)."""
    s = complex(s)
    a_vec = np.asarray(a_vec, dtype=float)
    if nterms is None:
        nterms = max(18, int(0.5 * abs(s.imag)) + 14)
    svec = np.full(a_vec.shape, s, dtype=complex)
    return _zeta_em(svec, a_vec, nterms, order)


def log_sin(w):
    """log(sin w), stable for large |Im w|; defined modulo 2*pi*i.

    Consumers only ever exponentiate sums containing this, so the branch
    constant is irrelevant.
    """
    wc = np.asarray(w, dtype=complex)
    up = np.imag(wc) > 0
    out = np.empty_like(wc)
    # Im w > 0: sin w = e^{-iw} (e^{2iw} - 1) / (2i)
    wu = np.where(up, wc, 1j)
    out_u = -1j * wu + np.log(np.expm1(2j * wu) / 2j)
    # Im w <= 0: sin w = e^{iw} (1 - e^{-2iw}) / (2i)
    wd = np.where(up, -1j, wc)
    out_d = 1j * wd + np.log(-np.expm1(-2j * wd) / 2j)
    out = np.where(up, out_u, out_d)
    return out if out.ndim else complex(out)


def log_gamma(z):
    """log Gamma(z) modulo 2*pi*i (Lanczos + reflection), overflow-free.

    Suitable for gamma quotients and Mellin-Barnes integrands evaluated as
    exp of sums; do not use where the imaginary part itself matters.
    """
    zc = np.atleast_1d(_as_complex(z))
    if np.any(_near_nonpositive_integer(zc)):
        raise PoleError("log_gamma pole at non-positive integer")
    refl = np.real(zc) < 0.5
    zz = np.where(refl, 1.0 - zc, zc)
    acc = np.full_like(zz, _LANCZOS[0])
    for k in range(1, 9):
        acc = acc + _LANCZOS[k] / (zz - 1.0 + k)
    t = zz - 1.0 + _LANCZOS_G + 0.5
    lg = math.log(_SQRT_2PI) + (zz - 0.5) * np.log(t) - t + np.log(acc)
    if np.any(refl):
        lg_refl = math.log(math.pi) - log_sin(math.pi * zc[refl]) - lg[refl]
        lg[refl] = lg_refl
    return lg if np.ndim(z) else complex(lg[0])


def gammaquot_exp(numerators, denominators, extra=0.0):
    """exp(sum log Gamma(num) - sum log Gamma(den) + extra), stable at height."""
    total = np.asarray(extra, dtype=complex)
    for u in numerators:
        total = total + log_gamma(u)
    for u in denominators:
        total = total - log_gamma(u)
    return np.exp(total)


_PRIME_SIEVE_CAP = 0
_PRIMES = np.array([], dtype=np.int64)


def _primes_up_to(m: int) -> np.ndarray:
    global _PRIME_SIEVE_CAP, _PRIMES
    if m <= _PRIME_SIEVE_CAP:
        return _PRIMES[_PRIMES <= m]
    cap = max(m, 2 * _PRIME_SIEVE_CAP, 1 << 16)
    sieve = np.ones(cap + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(cap)) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    _PRIMES = np.nonzero(sieve)[0].astype(np.int64)
    _PRIME_SIEVE_CAP = cap
    return _PRIMES[_PRIMES <= m]


def kronecker_character(d0: int, m: int) -> np.ndarray:
    """chi_{d0}(a) for a = 1..m (Kronecker symbols (d0/a)).

    Built multiplicatively: one symbol per prime p <= m, spread by slice
    products chi[p^k * j] *= chi(p)^k, so the cost is O(m log log m).
    """
    chi = np.ones(m + 1, dtype=np.int64)
    chi[0] = 0
    for p in _primes_up_to(m):
        v = kronecker(d0, int(p))
        if v == 1:
            continue
        pk = int(p)
        while pk <= m:
            chi[pk::pk] *= v
            pk *= int(p)
    return chi[1:]


def dirichlet_l_real(d0: int, s):
    """L(s, chi_{d0}) for a fundamental discriminant d0 (d0 = 1 gives zeta).

    Evaluated as |d0|^{-s} * sum_{a=1}^{|d0|} chi(a) zeta(s, a/|d0|); at s = 1
    (nontrivial chi) the zeta poles cancel and the digamma limit formula
    -|d0|^{-1} sum chi(a) psi(a/|d0|) is used instead.
    """
    if not is_fundamental_discriminant(d0) and d0 != 1:
        raise DomainError(f"{d0} is not a fundamental discriminant")
    if d0 == 1:
        return riemann_zeta(s)
    q = abs(d0)
    chi = kronecker_character(d0, q)
    sc = complex(np.asarray(s, dtype=complex))
    at_one = abs(sc - 1.0) < 1e-12
    total = 0j
    for lo in range(0, q, 200_000):
        hi = min(lo + 200_000, q)
        a_over_q = np.arange(lo + 1, hi + 1) / q
        if at_one:
            vals = digamma(a_over_q.astype(complex))
            total += -(chi[lo:hi] @ vals) / q
        else:
            vals = _hurwitz_row(sc, a_over_q)
            total += chi[lo:hi] @ vals
    if at_one:
        return complex(total)
    return complex(q ** (-sc) * total)
