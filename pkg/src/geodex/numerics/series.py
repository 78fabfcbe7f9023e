"""Truncation-accounting value types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SeriesValue:
    """A complex value with an error bound under a stated tail model.

    err_bound bounds |value - true limit| under the tail model the producing
    operation documents (rigorous where a Weil/ratio bound exists, an
    explicitly flagged heuristic otherwise).  terms_used counts the terms or
    nodes actually summed.
    """

    value: complex
    err_bound: float
    terms_used: int

    def __post_init__(self):
        if not (self.err_bound >= 0.0):
            raise ValueError("err_bound must be >= 0")
        if self.terms_used < 0:
            raise ValueError("terms_used must be >= 0")

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag


def kahan_add(total: complex, comp: complex, term: complex) -> tuple[complex, complex]:
    """One compensated-summation step; returns (new_total, new_compensation)."""
    y = term - comp
    s = total + y
    comp = (s - total) - y
    return s, comp
