"""The kappa-peak phenomenon of the spectral exponential sum.

kappa(X) = ||sqrt(X) + 1/sqrt(X)|| vanishes exactly at the norms X = Z_n,
and |S(T, X)| = |sum_{t_j <= T} X^{i t_j}| spikes there.  The script scans
windows around Z_3..Z_8 and writes an SVG of the profile near Z_5.
"""

import numpy as np

import geodex.geodesic as G
from geodex.spectral import load_bundled_dataset, spectral_exponential_sum


def main():
    ds = load_bundled_dataset()
    T = 25.0
    print(f"|S({T}, X)| peaks near the norms Z_n (window 0.9 Z_n .. 1.1 Z_n):")
    for n in range(3, 9):
        zn = G.trace_norm(n)
        xs = np.linspace(0.9 * zn, 1.1 * zn, 41)
        vals = [abs(spectral_exponential_sum(ds, T, float(X))) for X in xs]
        i = int(np.argmax(vals))
        print(f"  n = {n}: Z_n = {zn:9.4f}, argmax = {xs[i]:9.4f}, "
              f"|S| there = {vals[i]:.3f}, kappa(Z_n) = {G.kappa(zn):.2e}")

    zn = G.trace_norm(5)
    xs = np.linspace(0.85 * zn, 1.15 * zn, 241)
    vals = [abs(spectral_exponential_sum(ds, T, float(X))) for X in xs]
    from geodex.cli import _svg_plot
    rows = [(float(x), float(v)) for x, v in zip(xs, vals)]
    svg = _svg_plot(("X", f"|S({T},X)| near Z_5"), rows)
    with open("kappa_peak_z5.svg", "w") as fh:
        fh.write(svg)
    print("\nwrote kappa_peak_z5.svg")


if __name__ == "__main__":
    main()
