"""Exact prime-geodesic quantities for the modular group.

Primitive hyperbolic classes of PSL(2, Z) correspond to classes of primitive
indefinite binary quadratic forms: for each non-square discriminant d > 0
(d = 0, 1 mod 4) with fundamental Pell-4 unit eps_d = (u0 + v0 sqrt(d))/2 and
class number h(d), there are h(d) primitive classes of norm NP0 = eps_d^2 and
weight Lambda = 2 log eps_d.  Everything structural here is exact integer
arithmetic:

* reduced forms (a, b, c), b^2 - 4ac = d, 0 < b < sqrt(d),
  sqrt(d) - b < 2|a| < sqrt(d) + b, gcd(a, b, c) = 1;
* the neighbor map rho(a, b, c) = (c, b', (b'^2 - d)/(4c)) with
  b' = -b (mod 2|c|), sqrt(d) - 2|c| < b' < sqrt(d);
* h(d) = number of rho-cycles;
* (u0, v0) from the continued fraction of sqrt(d) followed by an exact
  Chebyshev-trace root extraction (the +4 unit group can contain a cube or
  square root of the Z[sqrt(d)] fundamental unit when d = 1 mod 4).

Norms Z_t = ((t + sqrt(t^2 - 4))/2)^2 and kappa(X) = ||sqrt(X) + 1/sqrt(X)||
tie the table to the spectral side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "DiscriminantClass",
    "GeodesicCount",
    "class_number_indefinite",
    "discriminant_class",
    "discriminant_table",
    "explicit_formula_residual",
    "kappa",
    "pell_fundamental",
    "psi_gamma",
    "reduced_forms",
    "trace_norm",
]


def _check_discriminant(d: int) -> None:
    if d <= 0:
        raise DomainError("discriminant must be positive")
    if d % 4 not in (0, 1):
        raise DomainError(f"malformed discriminant {d}: d mod 4 must be 0 or 1")
    r = math.isqrt(d)
    if r * r == d:
        raise DomainError(f"square discriminant {d} has no hyperbolic classes")


# ---------------------------------------------------------------------------
# reduced forms and cycles
# ---------------------------------------------------------------------------

def _strictly_between(d: int, b: int, abs_a: int) -> bool:
    """Exact check sqrt(d) - b < 2|a| < sqrt(d) + b (d non-square)."""
    t = 2 * abs_a
    upper = (t - b) < 0 or (t - b) ** 2 < d
    lower = d < (t + b) ** 2
    return lower and upper


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """All reduced primitive indefinite forms (a, b, c) of discriminant d."""
    _check_discriminant(d)
    rd = math.isqrt(d)
    out = []
    for b in range(1, rd + 1):
        if (d - b * b) % 4 != 0:
            continue
        ac = (b * b - d) // 4  # negative
        for abs_a in range(1, rd + 1):
            if not _strictly_between(d, b, abs_a):
                continue
            if ac % abs_a != 0:
                continue
            for a in (abs_a, -abs_a):
                c = ac // a
                if math.gcd(math.gcd(abs(a), b), abs(c)) == 1:
                    out.append((a, b, c))
    return out


def _neighbor(form: tuple[int, int, int], d: int) -> tuple[int, int, int]:
    """One reduction-cycle step rho(a,b,c) = (c, b', (b'^2 - d)/(4c))."""
    _, b, c = form
    rd = math.isqrt(d)
    twoc = 2 * abs(c)
    r = (-b) % twoc
    k = (rd - r) // twoc
    bp = r + k * twoc
    if bp <= 0:
        bp += twoc
    cp = (bp * bp - d) // (4 * c)
    return (c, bp, cp)


@lru_cache(maxsize=200_000)
def class_number_indefinite(d: int) -> int:
    """Number of rho-cycles of reduced primitive forms of discriminant d."""
    forms = reduced_forms(d)
    seen: set[tuple[int, int, int]] = set()
    cycles = 0
    for f in forms:
        if f in seen:
            continue
        cycles += 1
        g = f
        for _ in range(10 * len(forms) + 64):
            seen.add(g)
            g = _neighbor(g, d)
            if g == f:
                break
        else:
            raise RuntimeError(f"reduction cycle did not close for d={d}")
    return cycles


# ---------------------------------------------------------------------------
# Pell units
# ---------------------------------------------------------------------------

def _cf_fundamental_unit(d: int) -> tuple[int, int]:
    """Fundamental (x, y) with x^2 - d y^2 = +1, via the sqrt(d) expansion."""
    a0 = math.isqrt(d)
    P, Q, a = 0, 1, a0
    h1, h2 = a0, 1
    k1, k2 = 1, 0
    for _ in range(10_000_000):
        P = a * Q - P
        Q = (d - P * P) // Q
        if Q == 1:
            x, y = h1, k1
            if x * x - d * y * y == 1:
                return x, y
            # norm -1: square it
            return x * x + d * y * y, 2 * x * y
        a = (P + a0) // Q
        h1, h2 = a * h1 + h2, h1
        k1, k2 = a * k1 + k2, k1
    raise RuntimeError(f"continued fraction of sqrt({d}) did not close")


def _trace_root(big: int, j: int) -> int | None:
    """Integer u >= 3 with trace_j(u) = big, where trace_2(u) = u^2 - 2,
    trace_3(u) = u^3 - 3u, trace_6 = trace_2 o trace_3; None if no root."""
    if j == 2:
        r = math.isqrt(big + 2)
        return r if r >= 3 and r * r - 2 == big else None
    if j == 3:
        r = _icbrt(big)
        for u in (r - 1, r, r + 1, r + 2):
            if u >= 3 and u * u * u - 3 * u == big:
                return u
        return None
    if j == 6:
        mid = _trace_root(big, 2)
        if mid is None:
            return None
        return _trace_root(mid, 3)
    raise ValueError(j)


def _icbrt(n: int) -> int:
    """Floor cube root by integer Newton iteration (exact for big ints)."""
    if n < 8:
        return 1 if n >= 1 else 0
    r = 1 << ((n.bit_length() + 2) // 3)
    while True:
        nr = (2 * r + n // (r * r)) // 3
        if nr >= r:
            break
        r = nr
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


@lru_cache(maxsize=200_000)
def _pell4(d: int) -> tuple[int, int]:
    x, y = _cf_fundamental_unit(d)
    u, v = 2 * x, 2 * y  # trace and v-part of (2x + 2y sqrt d)/2
    # eps_cand = eps_d^j for j in {1,2,3,6}: detect the largest exact root
    for j in (6, 3, 2):
        u_root = _trace_root(u, j)
        if u_root is None:
            continue
        w = u_root * u_root - 4
        if w % d == 0 and math.isqrt(w // d) ** 2 == w // d:
            v_root = math.isqrt(w // d)
            if v_root >= 1:
                return u_root, v_root
    return u, v


def pell_fundamental(d: int) -> tuple[int, int]:
    """Minimal (u0, v0) with u0^2 - d v0^2 = 4, u0, v0 >= 1 (exact)."""
    _check_discriminant(d)
    u, v = _pell4(d)
    assert u * u - d * v * v == 4
    return u, v


def pell_eps(d: int) -> float:
    """eps_d = (u0 + v0 sqrt d)/2 > 1 in double precision."""
    u, v = pell_fundamental(d)
    return 0.5 * (u + v * math.sqrt(d))


def log_eps(d: int) -> float:
    """log eps_d, stable also when the unit is astronomically large."""
    u, v = pell_fundamental(d)
    # eps = (u + sqrt(u^2 - 4))/2; for u >= 1e15 the -4 shifts log eps by
    # less than 1e-30, so log(u) is exact to double precision
    if u < 10**15:
        return math.log(0.5 * (u + math.sqrt(float(u * u - 4))))
    return math.log(u)


# ---------------------------------------------------------------------------
# classes, norms, counts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantClass:
    """One discriminant's class data: h(d), Pell unit, weight 2 log eps."""

    d: int
    h: int
    u0: int
    v0: int
    eps: float
    log_eps: float


@lru_cache(maxsize=100_000)
def discriminant_class(d: int) -> DiscriminantClass:
    u, v = pell_fundamental(d)
    le = log_eps(d)
    return DiscriminantClass(d, class_number_indefinite(d), u, v,
                             math.exp(le), le)


@dataclass(frozen=True)
class GeodesicCount:
    """Psi_Gamma(X) with its contribution list (d, k, weight)."""

    X: float
    psi: float
    pi_count: int
    contributions: tuple[tuple[int, int, float], ...]


def trace_norm(t: int) -> float:
    """Z_t = ((t + sqrt(t^2 - 4))/2)^2 for integer trace t >= 3."""
    if t < 3:
        raise DomainError("trace_norm requires t >= 3")
    r = 0.5 * (t + math.sqrt(t * t - 4.0))
    return r * r


def kappa(X: float) -> float:
    """kappa(X) = distance from sqrt(X) + 1/sqrt(X) to the nearest integer."""
    if X <= 1.0:
        raise DomainError("kappa requires X > 1")
    y = math.sqrt(X) + 1.0 / math.sqrt(X)
    return abs(y - round(y))


def discriminant_table(x_max: float) -> list[DiscriminantClass]:
    """All valid d with eps_d^2 <= x_max, i.e. every class of norm <= x_max.

    Enumeration bound: eps_d >= (sqrt(d-4) + sqrt(d))/2, so eps_d^2 > x_max
    once d > (sqrt(x_max) + 1/sqrt(x_max))^2 + 4.
    """
    if x_max <= 1.0:
        return []
    d_cap = int((math.sqrt(x_max) + 1.0 / math.sqrt(x_max)) ** 2 + 4.0) + 1
    out = []
    for d in range(5, d_cap + 1):
        if d % 4 not in (0, 1):
            continue
        r = math.isqrt(d)
        if r * r == d:
            continue
        # Pell filter first: class numbers are only computed for survivors
        if 2.0 * log_eps(d) <= math.log(x_max) + 1e-12:
            out.append(discriminant_class(d))
    return out


def psi_gamma(X: float) -> GeodesicCount:
    """Psi_Gamma(X) = sum over classes and powers with norm <= X of 2 log eps.

    Contributions are listed in increasing eps_d^(2k); power boundaries
    within 1e-9 of X get an exact integer-arithmetic tie check.
    """
    if X <= 1.0:
        raise DomainError("psi_gamma requires X > 1")
    logX = math.log(X)
    contribs: list[tuple[float, int, int, float]] = []
    psi = 0.0
    pi_count = 0
    for cls in discriminant_table(X):
        pi_count += cls.h
        # largest k with 2k log eps <= log X, with exact tie checks at
        # boundaries closer than 1e-9 in log scale
        k_max = int(logX / (2.0 * cls.log_eps) + 1e-12)
        if k_max >= 1 and abs(2.0 * k_max * cls.log_eps - logX) < 1e-9:
            if not _power_norm_leq(cls, k_max, X):
                k_max -= 1
        while 2.0 * (k_max + 1) * cls.log_eps <= logX + 1e-9:
            if _power_norm_leq(cls, k_max + 1, X):
                k_max += 1
            else:
                break
        for k in range(1, k_max + 1):
            w = 2.0 * cls.log_eps
            contribs.append((2.0 * k * cls.log_eps, cls.d, k, w * cls.h))
    contribs.sort()
    total = 0.0
    out = []
    for _, d, k, w in contribs:
        total += w
        out.append((d, k, w))
    return GeodesicCount(X, total, pi_count, tuple(out))


def _power_norm_leq(cls: DiscriminantClass, k: int, X: float) -> bool:
    """Exact check eps_d^(2k) <= X for k small enough to matter."""
    if 2.0 * k * cls.log_eps > math.log(X) + 1e-6:
        return False
    # eps^2 = ((u^2 - 2) + u v sqrt d)/2: iterate the integer pair
    u, v, d = cls.u0, cls.v0, cls.d
    a, b = u, v  # eps^1 coefficients over /2
    for _ in range(2 * k - 1):
        a, b = (a * u + b * v * d) // 2, (a * v + b * u) // 2
    # eps^(2k) = (a + b sqrt d)/2 <= X  <=>  a + b sqrt d <= 2X
    lhs_floor = a + math.isqrt(b * b * d)
    if lhs_floor + 1 <= 2.0 * X:
        return True
    return a + b * math.sqrt(d) <= 2.0 * X


def explicit_formula_residual(X: float, T: float, dataset) -> float:
    """Psi(X) - X - sqrt(X) * sum_{|t_j| <= T} X^{i t_j}/(1/2 + i t_j).

    The spectral sum runs over +/- t_j pairs, so it equals twice the real
    part of the positive-t sum.  The proven error-term range is
    1 <= T <= sqrt(X)/log^2 X; evaluation is allowed in the wider window
    1 <= T <= sqrt(X), where the residual is still well defined and the
    empirical envelope checks remain meaningful.
    """
    if not (1.0 <= T <= math.sqrt(X)):
        raise DomainError("explicit formula requires 1 <= T <= sqrt(X)")
    if not dataset.forms:
        raise DomainError("empty spectral dataset")
    forms = [f for f in dataset.forms if f.t <= T]
    logX = math.log(X)
    acc = 0.0 + 0.0j
    for f in forms:
        acc += complex(math.cos(f.t * logX), math.sin(f.t * logX)) / (0.5 + 1j * f.t)
    spectral = 2.0 * acc.real
    return psi_gamma(X).psi - X - math.sqrt(X) * spectral
