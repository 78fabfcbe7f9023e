"""Prime geodesics of the modular group and the explicit formula.

Builds the exact Psi_Gamma(X) table from binary-quadratic-form class data,
then shows the spectral explicit formula at work: the residual
Psi(X) - X - sqrt(X) sum_{|t_j|<=T} X^{it_j}/(1/2+it_j) shrinks as more of
the spectrum is used.
"""

import math

import numpy as np

import geodex.geodesic as G
from geodex.spectral import load_bundled_dataset


def main():
    print("smallest prime geodesic norms:")
    for t in range(3, 9):
        d = t * t - 4
        cls = G.discriminant_class(d)
        print(f"  trace {t}: d = {d}, h(d) = {cls.h}, eps = {cls.eps:.6f}, "
              f"Z_t = {G.trace_norm(t):.6f}")

    print("\nPsi_Gamma at sample heights (psi ~ X):")
    for X in (10.0, 100.0, 1000.0, 10000.0):
        g = G.psi_gamma(X)
        print(f"  X = {X:>8}: psi = {g.psi:12.4f}, classes counted = {g.pi_count}")

    ds = load_bundled_dataset()
    xs = np.linspace(1000.0, 10000.0, 25)
    print("\nexplicit-formula RMS residual over X in [1e3, 1e4]:")
    for T in (10.0, 15.0, 20.0, 25.0):
        r = np.array([G.explicit_formula_residual(float(X), T, ds) for X in xs])
        rms = math.sqrt(float(np.mean(r * r)))
        print(f"  T = {T:>4}: RMS = {rms:10.3f}   (forms used: {len(ds.up_to(T))})")


if __name__ == "__main__":
    main()
