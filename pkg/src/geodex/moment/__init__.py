"""Transforms, Kloosterman-series representations and the first-moment
identity for Maass symmetric-square L-functions."""

from .transforms import (TransformParams, i_b_closed, i_b_mb, i_closed, i_mb,
                         i_series, make_params, phi, phi_b, phi_hat, phi_k_fn,
                         phi_k_mb, phi_lambda, phi_tilde, phi_zero, psi_k_fn,
                         psi_k_mb)

__all__ = [
    "TransformParams",
    "i_b_closed",
    "i_b_mb",
    "i_closed",
    "i_mb",
    "i_series",
    "make_params",
    "phi",
    "phi_b",
    "phi_hat",
    "phi_k_fn",
    "phi_k_mb",
    "phi_lambda",
    "phi_tilde",
    "phi_zero",
    "psi_k_fn",
    "psi_k_mb",
]
