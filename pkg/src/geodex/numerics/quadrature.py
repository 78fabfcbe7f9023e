"""Deterministic adaptive quadrature, damped-oscillatory integrals and
vertical-line Mellin-Barnes integration.

The panel rule is a Gauss-Legendre 10/21 pair (nodes computed once at import
from numpy's Legendre machinery -- no typed-in constants); the error estimate
per panel is |GL21 - GL10|.  Subdivision always splits the currently worst
panel and ties break on creation order, so runs are bit-identical.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, NonDecayingIntegrandError, TailBudgetError
from .series import SeriesValue

_X10, _W10 = np.polynomial.legendre.leggauss(10)
_X21, _W21 = np.polynomial.legendre.leggauss(21)


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line Re w = delta, truncated at |Im w| <= half_height."""

    delta: float
    half_height: float
    nodes: int

    def __post_init__(self):
        if not (self.half_height > 0):
            raise DomainError("half_height must be > 0")
        if self.nodes <= 0:
            raise DomainError("nodes must be > 0")


def _panel(f, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y21 = f(mid + half * _X21)
    v21 = half * np.dot(_W21, y21)
    y10 = f(mid + half * _X10)
    v10 = half * np.dot(_W10, y10)
    return v21, abs(v21 - v10)


def adaptive_integrate(f, a: float, b: float, abs_tol: float = 1e-12,
                       rel_tol: float = 1e-12, max_panels: int = 4000,
                       initial: int = 1):
    """Integrate vectorized f over [a, b]; returns (value, error_estimate)."""
    if not b > a:
        raise DomainError("adaptive_integrate requires b > a")
    edges = np.linspace(a, b, initial + 1)
    heap = []
    counter = 0
    running = 0.0 + 0j
    running_err = 0.0
    panels = {}
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = _panel(f, lo, hi)
        panels[counter] = (lo, hi, v, e)
        heapq.heappush(heap, (-e, counter))
        running += v
        running_err += e
        counter += 1
    n = initial
    while n < max_panels and heap:
        if running_err <= max(abs_tol, rel_tol * abs(running)):
            break
        _, idx = heapq.heappop(heap)
        if idx not in panels:
            continue
        lo, hi, v_old, e_old = panels.pop(idx)
        running -= v_old
        running_err -= e_old
        mid = 0.5 * (lo + hi)
        for seg in ((lo, mid), (mid, hi)):
            v, e = _panel(f, *seg)
            panels[counter] = (*seg, v, e)
            heapq.heappush(heap, (-e, counter))
            running += v
            running_err += e
            counter += 1
        n += 1
    # final deterministic re-summation in interval order
    ordered = sorted(panels.values(), key=lambda t: t[0])
    total = sum(v for _, _, v, _ in ordered)
    total_err = sum(e for _, _, _, e in ordered)
    return total, total_err


def damped_oscillatory_quadrature(f, damping: float, *, growth_c: float = 1.0,
                                  growth_p: float = 1.0, target: float = 1e-10,
                                  osc_rate: float = 1.0, rotation: float = 0.0,
                                  max_panels: int = 4000) -> SeriesValue:
    """Integral of f over [0, oo) given |f(x)| <= C (1+x)^p e^{-a x}.

    The cutoff x_max is chosen so the declared-envelope tail is below
    target/2; the finite part runs through the adaptive pair rule with
    panels sized to the caller's oscillation rate.

    With rotation = alpha != 0 the path is the ray x = r e^{i alpha}
    (caller asserts analyticity in the enclosed sector and that the decay
    envelope holds along the ray); the returned value is the original
    real-axis integral by Cauchy's theorem.
    """
    a = float(damping)
    if a <= 0:
        raise TailBudgetError("damping must be positive")
    x_max = 1.0
    for _ in range(80):
        margin = a * (1.0 + x_max)
        if margin > 2.0 * growth_p:
            tail = growth_c * (1.0 + x_max) ** growth_p * math.exp(-a * x_max) / a
            tail *= 1.0 / (1.0 - growth_p / margin)
            if tail <= 0.5 * target:
                break
        x_max *= 1.4
    else:
        raise TailBudgetError("declared damping too weak for the precision target")

    if rotation:
        rot = complex(math.cos(rotation), math.sin(rotation))
        g = lambda r: rot * f(r * rot)
    else:
        g = f
    initial = max(8, min(2000, int(x_max * max(osc_rate, 1e-3) / 3.0) + 1))
    val, err = adaptive_integrate(g, 0.0, x_max, abs_tol=0.25 * target,
                                  rel_tol=0.0, max_panels=max_panels,
                                  initial=initial)
    return SeriesValue(val, err + tail, initial * 21)


def mellin_barnes(integrand, contour: ContourSpec, decay_hint=None) -> SeriesValue:
    """(1/2 pi i) * integral of integrand(w) dw along Re w = delta.

    The integrand must decay along the contour; magnitudes sampled beyond
    half_height must fall, otherwise NonDecayingIntegrandError is raised.
    The tail entering err_bound comes from the sampled decay: a fitted
    exponential/power model by default, or the caller-declared decay_hint
    ("power", p) / ("exp", rate) when the analytic decay is known (still
    cross-checked against the samples).
    """
    d = contour.delta
    H = contour.half_height

    def g(v):
        return integrand(d + 1j * np.asarray(v))

    def probe(v):
        # envelope over a short window to dodge oscillation zeros
        w = v * (1.0 + np.linspace(0.0, 0.06, 9))
        return float(np.max(np.abs(g(w)) + np.abs(g(-w))))

    m0 = probe(H)
    m1 = probe(1.35 * H)
    m2 = probe(1.8225 * H)
    slack = 1.05 if decay_hint is not None else 1.0000001
    if m0 == 0.0:
        m0 = m1 = m2 = 1e-300
    elif not (m1 <= m0 * slack and m2 <= max(m1, m0) * slack):
        raise NonDecayingIntegrandError(
            f"sampled contour magnitude not decreasing beyond half_height={H}")
    tails = []
    if decay_hint is not None:
        kind, val = decay_hint
        if kind == "power":
            if val <= 1.05:
                raise NonDecayingIntegrandError("power decay hint needs p > 1.05")
            tails.append(max(m1, m2) * (1.35 * H) / (val - 1.0))
        elif kind == "exp":
            if val * H <= 1.0:
                raise NonDecayingIntegrandError("exp decay hint too weak")
            tails.append(max(m1, m2) / val)
        elif kind == "osc":
            # integrand = smooth decaying envelope times e^{i omega v}:
            # integration by parts bounds the tail by ~2 envelope(H)/omega
            if val <= 0:
                raise NonDecayingIntegrandError("osc decay hint needs omega > 0")
            tails.append(3.0 * max(m1, m2) / val)
        else:
            raise NonDecayingIntegrandError(f"unknown decay hint {kind!r}")
    else:
        if m1 > 0 and m0 > m1:
            rate = math.log(m0 / m1) / (0.35 * H)
            if rate * H > 1.0:
                tails.append(m1 / rate)
        if m2 > 0 and m1 > m2:
            p = math.log(m1 / m2) / math.log(1.35)
            if p > 1.2:
                tails.append(m2 * (1.8225 * H) / (p - 1.0))
        if not tails:
            raise NonDecayingIntegrandError("cannot certify a decaying tail model")
    tail = 3.0 * min(tails) / (2.0 * math.pi)

    initial = max(8, contour.nodes // 21)
    val, err = adaptive_integrate(g, -H, H, abs_tol=1e-14, rel_tol=5e-13,
                                  max_panels=max(200, 3 * initial),
                                  initial=initial)
    return SeriesValue(val / (2.0 * math.pi), err / (2.0 * math.pi) + tail,
                       initial * 21)
