"""geodex: desk-scale numerics for spectral exponential sums, the prime
geodesic count for the modular group, generalized Dirichlet L-functions and
the exact first-moment formula for Maass symmetric-square L-functions."""

__version__ = "0.1.0"
