"""Gauss hypergeometric series with the single Pfaff fallback.

Every 2F1 this project meets has |z| <= 1 after at most one Pfaff map
z -> z/(z-1), so only that transformation is implemented; anything else
raises loudly rather than silently extrapolating.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, PoleError
from .series import SeriesValue

_MAX_TERMS = 400_000


def _near_nonpositive_int(c) -> bool:
    c = complex(c)
    return abs(c.imag) < 1e-13 and abs(c.real - round(c.real)) < 1e-13 and round(c.real) <= 0


def _series_2f1(a, b, c, z, rel_target=1e-14):
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    term = 1.0 + 0j
    total = 1.0 + 0j
    comp = 0.0 + 0j
    max_abs = 1.0
    k = 0
    while k < _MAX_TERMS:
        term = term * ((a + k) * (b + k)) / ((c + k) * (k + 1.0)) * z
        t = abs(term)
        if t > max_abs:
            max_abs = t
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        k += 1
        if t < rel_target * abs(total) * 0.01 and k > 6:
            break
    ratio = abs(z) * (1.0 + (abs(a) + abs(b)) / (k + 1.0))
    if ratio >= 1.0:
        # fall back to the crude geometric majorant of the remaining decay
        ratio = abs(z)
    tail = abs(term) * ratio / (1.0 - ratio) if ratio < 1.0 else abs(term) * k
    err = tail + 2e-16 * max_abs * np.sqrt(k + 1.0)
    return total, err, k


def gauss_2f1(a, b, c, z) -> SeriesValue:
    """2F1(a, b; c; z) as a SeriesValue with a relative error bound.

    Direct series for |z| < 1; for |z| >= 1 the Pfaff map z -> z/(z-1) is
    applied when it lands inside the unit disc, otherwise the region is
    declared unreachable.
    """
    if _near_nonpositive_int(c):
        raise PoleError("2F1 parameter pole: c is a non-positive integer")
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if abs(z) < 1.0 - 1e-12:
        val, err, k = _series_2f1(a, b, c, z)
        return SeriesValue(val, err, k)
    w = z / (z - 1.0)
    if abs(w) < 1.0 - 1e-12:
        # Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
        val, err, k = _series_2f1(a, c - b, c, w)
        pref = (1.0 - z) ** (-a)
        return SeriesValue(pref * val, abs(pref) * err, k)
    raise DomainError(f"2F1 argument z = {z} unreachable by direct series or Pfaff")
