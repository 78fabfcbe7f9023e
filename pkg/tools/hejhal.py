"""Hejhal-style solver for Maass cusp forms on the modular group.

Used offline to produce the bundled dataset; not part of the library.

Method (level 1, separate even/odd parities):

    u(x+iy) = sum_{n>=1} a_n sqrt(y) K~_{iR}(2 pi n y) cs(2 pi n x),

K~ the e^{pi R/2}-scaled K-Bessel, cs = cos (even) / sin (odd).  Collocation
on the horocycle y = Y < sqrt(3)/2 at x_j = (2j-1)/(4Q); automorphy pulls
each z_j back into the fundamental domain where only n <= M(sqrt(3)/2, R)
coefficients matter.  Discrete cos/sin orthogonality turns automorphy into
the square system

    sum_n V[m,n] a_n = 0,
    V[m,n] = (2/Q) sum_j sqrt(y*_j) K~(2 pi n y*_j) cs(2 pi n x*_j)
             cs(2 pi m x_j)  -  delta_{mn} sqrt(Y) K~(2 pi m Y).

With a_1 = 1 the solved coefficient vectors from two different heights
agree exactly at eigenvalues; the scan detector is that difference, roots
refined by the secant method and certified by Hecke multiplicativity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from kbessel import KBesselTable


def pullback(x: float, y: float) -> tuple[float, float]:
    """Reduce x+iy into the standard fundamental domain of PSL(2, Z)."""
    for _ in range(200):
        x -= round(x)
        r2 = x * x + y * y
        if r2 < 1.0 - 1e-15:
            x, y = -x / r2, y / r2
        else:
            return x, y
    raise RuntimeError("pullback did not converge")


@dataclass
class Horocycle:
    Y: float
    Q: int
    xj: np.ndarray
    xstar: np.ndarray
    ystar: np.ndarray


def horocycle(Y: float, Q: int) -> Horocycle:
    xj = (2.0 * np.arange(1, Q + 1) - 1.0) / (4.0 * Q)
    xs = np.empty(Q)
    ys = np.empty(Q)
    for i, x in enumerate(xj):
        a, b = pullback(float(x), Y)
        xs[i] = a
        ys[i] = b
    return Horocycle(Y, Q, xj, xs, ys)


def x_cutoff(table: KBesselTable, rel: float = 1e-13) -> float:
    """Smallest x beyond which K~ stays below rel * max|K~|."""
    peak = float(np.max(np.abs(table.val)))
    xs = np.exp(table.tau)
    mask = np.abs(table.val) > rel * peak
    x_last = float(xs[mask][-1]) if np.any(mask) else table.x0
    # the decaying regime beyond the table start
    x = max(x_last, table.R)
    while abs(table(np.array([x]))[0]) > rel * peak and x < table.R + 60:
        x += 1.0
    return x


def _cs(parity: int, arg: np.ndarray) -> np.ndarray:
    return np.cos(arg) if parity > 0 else np.sin(arg)


def system_matrix(table: KBesselTable, hc: Horocycle, M0: int, parity: int) -> np.ndarray:
    two_pi = 2.0 * math.pi
    ns = np.arange(1, M0 + 1)
    # (Q, M0): sqrt(y*) K~(2 pi n y*) cs(2 pi n x*)
    args = two_pi * np.outer(hc.ystar, ns)
    kvals = table(args.ravel()).reshape(args.shape)
    A = np.sqrt(hc.ystar)[:, None] * kvals * _cs(parity, two_pi * np.outer(hc.xstar, ns))
    W = _cs(parity, two_pi * np.outer(ns, hc.xj))  # (M0, Q)
    V = (2.0 / hc.Q) * (W @ A)
    diag = math.sqrt(hc.Y) * table(two_pi * hc.Y * ns)
    V[np.arange(M0), np.arange(M0)] -= diag
    return V


def solve_coeffs(V: np.ndarray) -> np.ndarray:
    """Coefficients a_1..a_M with a_1 = 1, from rows 2..M."""
    M = V.shape[0]
    A = V[1:, 1:]
    rhs = -V[1:, 0]
    sol = np.linalg.solve(A, rhs)
    return np.concatenate([[1.0], sol])


class ParitySolver:
    def __init__(self, parity: int, Y1: float = 0.47, Y2: float = 0.41,
                 qfac: float = 1.35):
        self.parity = parity
        self.Y1 = Y1
        self.Y2 = Y2
        self.qfac = qfac
        self._hc_cache: dict = {}

    def _hc(self, Y: float, Q: int) -> Horocycle:
        key = (round(Y, 12), Q)
        if key not in self._hc_cache:
            self._hc_cache[key] = horocycle(Y, Q)
        return self._hc_cache[key]

    def coeff_pair(self, R: float, m0_extra: int = 0):
        """Coefficient vectors at the two heights, truncation M0(Y2, R)."""
        table = KBesselTable(R, x_min=1e-3)
        xc = x_cutoff(table)
        M0 = int(math.ceil(xc / (2.0 * math.pi * self.Y2))) + 2 + m0_extra
        Q = int(self.qfac * M0) + 8
        a1 = solve_coeffs(system_matrix(table, self._hc(self.Y1, Q), M0, self.parity))
        a2 = solve_coeffs(system_matrix(table, self._hc(self.Y2, Q), M0, self.parity))
        return a1, a2, table

    def detector(self, R: float) -> tuple[float, np.ndarray]:
        a1, a2, _ = self.coeff_pair(R)
        d = a1[1] - a2[1]  # a_2 difference
        aux = a1[1:6] - a2[1:6]
        return d, aux

    def hecke_residual(self, a: np.ndarray) -> float:
        # a[0] = a_1 = 1; entries are a_{n} at index n-1
        r23 = abs(a[1] * a[2] - a[5]) if len(a) >= 6 else math.inf
        r25 = abs(a[1] * a[4] - a[9]) if len(a) >= 10 else 0.0
        return max(r23, r25)

    def refine(self, lo: float, hi: float, tol: float = 2e-10) -> float:
        flo, _ = self.detector(lo)
        fhi, _ = self.detector(hi)
        if flo * fhi > 0:
            raise RuntimeError("no sign change to refine")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            # secant acceleration inside the bracket
            sec = hi - fhi * (hi - lo) / (fhi - flo)
            if lo + 0.1 * (hi - lo) < sec < hi - 0.1 * (hi - lo):
                mid = sec
            fm, _ = self.detector(mid)
            if flo * fm <= 0:
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
            if hi - lo < tol:
                break
        return 0.5 * (lo + hi)

    def scan(self, r_lo: float, r_hi: float, step: float = 0.012,
             verbose: bool = True) -> list[float]:
        grid = np.arange(r_lo, r_hi + step, step)
        vals = []
        for R in grid:
            d, _ = self.detector(float(R))
            vals.append(d)
        roots = []
        for i in range(len(grid) - 1):
            if vals[i] == 0.0:
                roots.append(float(grid[i]))
            elif vals[i] * vals[i + 1] < 0:
                R = self.refine(float(grid[i]), float(grid[i + 1]))
                # certify: coefficient agreement across heights + Hecke
                a1, a2, _ = self.coeff_pair(R)
                agree = float(np.max(np.abs(a1[:8] - a2[:8])))
                hecke = self.hecke_residual(a1)
                if agree < 5e-5 and hecke < 5e-4:
                    roots.append(R)
                    if verbose:
                        print(f"  parity {self.parity:+d}: R = {R:.9f} "
                              f"(agree {agree:.1e}, hecke {hecke:.1e})", flush=True)
                elif verbose:
                    print(f"  parity {self.parity:+d}: rejected root {R:.6f} "
                          f"(agree {agree:.1e}, hecke {hecke:.1e})", flush=True)
        return roots

    def coefficients(self, R: float, n_max: int) -> np.ndarray:
        """a_1..a_n_max by low-horocycle expansion from the solved small set."""
        a1, a2, table = self.coeff_pair(R)
        base = 0.5 * (a1 + a2)
        M1 = len(base)
        xc = x_cutoff(table)
        # pick the extraction height so K~(2 pi n Y) stays healthy up to n_max
        x_half = x_cutoff(table, rel=3e-6)
        out = np.full(n_max + 1, np.nan)
        out[1: M1 + 1] = base[:n_max]  # placeholder, refined below
        two_pi = 2.0 * math.pi
        for ys, span in ((x_half / (two_pi * n_max), (1, n_max)),
                         (2.0 * x_half / (two_pi * n_max), (1, n_max // 2))):
            Q = int(1.3 * n_max) + 16
            hc = self._hc(ys, Q)
            args = two_pi * np.outer(hc.ystar, np.arange(1, M1 + 1))
            kv = table(args.ravel()).reshape(args.shape)
            ustar = (np.sqrt(hc.ystar)[:, None] * kv
                     * _cs(self.parity, two_pi * np.outer(hc.xstar,
                                                          np.arange(1, M1 + 1)))) @ base
            ns = np.arange(span[0], span[1] + 1)
            W = _cs(self.parity, two_pi * np.outer(ns, hc.xj))
            chat = (2.0 / Q) * (W @ ustar)
            denom = math.sqrt(ys) * table(two_pi * ys * ns)
            good = np.abs(denom) > 3e-6
            vals = np.full(len(ns), np.nan)
            vals[good] = chat[good] / denom[good]
            for n, v in zip(ns, vals):
                if not math.isnan(v):
                    out[n] = v
        out[1] = 1.0
        return out
