"""Empirical envelope reports for the proven inequalities.

Each checker evaluates its quantity on a declared grid and tabulates the
maximal observed ratio (quantity / bound expression).  Nothing here asserts
an inequality: the asymptotic constants are unknowable at desk scale, so
the artifact reports observed constants and their stability under grid
refinement instead.

Implemented envelopes:

  * I(x)            <<  (1+|r|)^{3/2} (x/|c|)^{1/2} |1 - sqrt(-x^2/c^2)|^{-3/2}
  * Sigma(s)        <<  (1+|r|)^A X^{theta - 1/4} (X^{1/2} T^{1/2} + T^{3/2})
  * Sigma(s), big T <<  same with min(T, X^{1/2}/kappa(X)) in place of T
  * Sigma_B(s)      <<  (1+|r|)^A X^{-1/2}
  * exp(pi|r|) Psi_k(s,x) <<  (1-x)^{1/4} (1+|r|)^{2b} k^{-2b+1/2} (x/(1-x))^b
  * exp(pi|r|) Phi_k(s)   <<  4^k/(k+|r|)
  * M1(s)           <<  (1+|r|)^A T log^3 T + theta-envelope
  * smoothed sum    <<  S(X, T, kappa(X)) log^2 T   (four-regime table)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..geodesic import kappa
from .m1 import m1_geometric
from .sigma import sigma_b_critical, sigma_critical
from .transforms import i_closed, make_params, phi_k_fn, psi_k_fn

__all__ = ["BoundReport", "bound_suite", "regime_envelope"]


@dataclass(frozen=True)
class BoundReport:
    name: str
    grid_points: int
    observed_constant: float
    argmax: tuple

    def row(self) -> tuple:
        return (self.name, self.grid_points, self.observed_constant,
                repr(self.argmax))


def regime_envelope(X: float, T: float, theta: float = 1.0 / 6.0) -> float:
    """The four-regime bound S(X, T, kappa(X)) of the sharp-sum theorem."""
    k = kappa(X)
    if T <= math.sqrt(X):
        return X ** (0.25 + theta / 2.0) * math.sqrt(T)
    if k == 0.0:
        return X ** (theta / 2.0) * T
    if T <= math.sqrt(X) / k:
        return X ** (theta / 2.0) * T
    if T <= X ** (0.5 + 2.0 * theta / 3.0) / k:
        return X ** (theta / 2.0) * T ** 0.25 * (math.sqrt(X) / k) ** 0.75
    return T


def _i_ratio(X: float, T: float, r_values, x_over_c) -> BoundReport:
    p = make_params(X, T)
    best = 0.0
    arg = ()
    npts = 0
    for r in r_values:
        s = 0.5 + 1j * r
        for u in x_over_c:
            x = u * abs(p.c)
            R = np.sqrt(-(x * x) / (p.c * p.c) + 0j)
            env = (1.0 + abs(r)) ** 1.5 * math.sqrt(u) * abs(1.0 - R) ** (-1.5)
            val = abs(i_closed(1.0, s, x, p))
            npts += 1
            if val / env > best:
                best = val / env
                arg = (X, T, r, round(u, 3))
    return BoundReport("I(x) critical-line envelope", npts, best, arg)


def _sigma_ratio(grid, r_values, theta, refined: bool) -> BoundReport:
    best = 0.0
    arg = ()
    npts = 0
    for (X, T) in grid:
        p = make_params(X, T)
        for r in r_values:
            s = 0.5 + 1j * r
            val = abs(sigma_critical(s, p).value)
            teff = min(T, math.sqrt(X) / max(kappa(X), 1e-12)) if refined else T
            env = (1.0 + abs(r)) * X ** (theta - 0.25) \
                * (math.sqrt(X) * math.sqrt(teff) + teff ** 1.5)
            npts += 1
            if val / env > best:
                best = val / env
                arg = (X, T, r)
    name = "Sigma(s) kappa-refined envelope" if refined else "Sigma(s) envelope"
    return BoundReport(name, npts, best, arg)


def _sigma_b_ratio(grid, r_values) -> BoundReport:
    best = 0.0
    arg = ()
    npts = 0
    for (X, T) in grid:
        p = make_params(X, T)
        for r in r_values:
            s = 0.5 + 1j * r
            if abs(s - 0.5) < 1e-12:
                val = abs(sigma_b_critical(s, p, exclude_zeta_term=True).value)
            else:
                val = abs(sigma_b_critical(s, p).value)
            env = (1.0 + abs(r)) * X ** (-0.5)
            npts += 1
            if val / env > best:
                best = val / env
                arg = (X, T, r)
    return BoundReport("Sigma_B(s) envelope", npts, best, arg)


def _psi_k_ratio(k_values, r_values, x_values, b: float = 1.0) -> BoundReport:
    best = 0.0
    arg = ()
    npts = 0
    for k in k_values:
        if not (0.25 < b < k):
            continue
        for r in r_values:
            s = 0.5 + 2j * r
            for x in x_values:
                val = math.exp(math.pi * abs(r)) * abs(psi_k_fn(k, s, x))
                env = (1.0 - x) ** 0.25 * (1.0 + abs(r)) ** (2 * b) \
                    * k ** (-2 * b + 0.5) * (x / (1.0 - x)) ** b
                npts += 1
                if val / env > best:
                    best = val / env
                    arg = (k, r, x)
    return BoundReport(f"Psi_k envelope (b={b})", npts, best, arg)


def _phi_k_ratio(k_values, r_values) -> BoundReport:
    best = 0.0
    arg = ()
    npts = 0
    for k in k_values:
        for r in r_values:
            s = 0.5 + 2j * r
            val = math.exp(math.pi * abs(r)) * abs(phi_k_fn(k, s))
            env = 4.0**k / (k + abs(r))
            npts += 1
            if val / env > best:
                best = val / env
                arg = (k, r)
    return BoundReport("Phi_k envelope", npts, best, arg)


def _m1_ratio(grid, r: float, theta: float) -> BoundReport:
    best = 0.0
    arg = ()
    npts = 0
    s = 0.5 + 1j * r
    for (X, T) in grid:
        p = make_params(X, T)
        rep = m1_geometric(s, p)
        teff = min(T, math.sqrt(X) / max(kappa(X), 1e-12))
        env = (1.0 + abs(r)) * T * max(math.log(T), 1.2) ** 3 \
            + (1.0 + abs(r)) * X ** (theta - 0.25) \
            * (math.sqrt(X) * math.sqrt(teff) + teff ** 1.5)
        val = abs(rep.geometric)
        npts += 1
        if val / env > best:
            best = val / env
            arg = (X, T)
    return BoundReport("M1(s) envelope at s=1/2+ir", npts, best, arg)


def _sharp_sum_ratio(dataset, T: float, x_grid, theta: float) -> BoundReport:
    from ..spectral import spectral_exponential_sum
    best = 0.0
    arg = ()
    npts = 0
    for X in x_grid:
        val = abs(spectral_exponential_sum(dataset, T, X))
        env = regime_envelope(X, T, theta) * max(math.log(T), 1.2) ** 2
        npts += 1
        if val / env > best:
            best = val / env
            arg = (round(X, 3), T)
    return BoundReport("S(T,X) four-regime envelope", npts, best, arg)


def bound_suite(dataset=None, refine: int = 1, theta: float = 1.0 / 6.0) -> list[BoundReport]:
    """Run every envelope check; refine > 1 doubles the grids (stability)."""
    rs = [0.0, 0.5, 2.0]
    xs_over_c = list(np.linspace(0.1, 3.0, 12 * refine))
    grid = [(20.0, 3.0), (50.0, 5.0), (100.0, 8.0), (200.0, 12.0)]
    if refine > 1:
        grid = grid + [(35.0, 4.0), (75.0, 6.0), (150.0, 10.0), (280.0, 14.0)]
    reports = [
        _i_ratio(10.0, 5.0, rs, xs_over_c),
        _sigma_ratio(grid, [0.0, 0.3], theta, refined=False),
        _sigma_ratio(grid, [0.3], theta, refined=True),
        _sigma_b_ratio(grid, [0.0, 0.3]),
        _psi_k_ratio(range(2, 9, 1 if refine > 1 else 2), [0.0, 0.5, 2.0],
                     [0.1, 0.25, 0.4]),
        _phi_k_ratio(range(1, 9), [0.0, 1.0, 3.0]),
        _m1_ratio(grid[:3], 0.3, theta),
    ]
    if dataset is not None:
        xg = list(np.linspace(30.0, 400.0, 25 * refine))
        reports.append(_sharp_sum_ratio(dataset, 25.0, xg, theta))
    return reports
