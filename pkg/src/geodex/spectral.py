"""Maass-form data ingestion and the spectral-side quantities.

Eigenvalues and Hecke eigenvalues are data, not computed here: the package
bundles a validated dataset for the modular group (see geodex/data/) in a
plain text format:

    #source <identifier>
    #checksum <hex sha-256 over everything after this line>
    form <j> <t_j> [<L_sym2_at_1>]
    c <n> <lambda_n>
    ...

with n contiguous from 1 for each form.  Unknown directives are rejected.
Loading validates lambda(1) = 1, strictly increasing t_j, and the Hecke
relation lambda(m) lambda(n) = sum_{d | (m,n)} lambda(mn/d^2) for every
stored pair with mn <= N_j (tolerance 1e-8).

The normalization alpha_j = |rho_j(1)|^2 / cosh(pi t_j) equals
2 / L(sym^2 u_j, 1), so the file carries L(sym^2, 1) per form.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from ._intutil import divisors
from .errors import (ChecksumError, CoverageError, DataFormatError,
                     DomainError, HeckeRelationError)
from .numerics import SeriesValue, riemann_zeta
from .numerics.series import kahan_add

__all__ = [
    "EigenForm",
    "SpectralDataset",
    "bundled_data_path",
    "g_hat",
    "load_bundled_dataset",
    "load_spectral_data",
    "mock_eisenstein_form",
    "smoothed_sum",
    "smoothing_identity_check",
    "spectral_exponential_sum",
    "sym2_l",
    "weyl_count",
]

_HECKE_TOL = 1e-8


@dataclass(frozen=True)
class EigenForm:
    """One Maass cusp form: spectral parameter, Hecke eigenvalues, sym^2 data."""

    j: int
    t: float
    coeffs: np.ndarray  # coeffs[n] = lambda(n), index 0 unused
    l_sym2_at_1: float | None = None
    alpha_err: float = 1e-6

    @property
    def n_coeff(self) -> int:
        return len(self.coeffs) - 1

    @property
    def alpha(self) -> float:
        """alpha_j = 2 / L(sym^2 u_j, 1)."""
        if self.l_sym2_at_1 is None:
            raise DomainError(f"form {self.j} carries no L(sym^2, 1) value")
        return 2.0 / self.l_sym2_at_1

    def lam(self, n: int) -> float:
        if not (1 <= n <= self.n_coeff):
            raise CoverageError(f"lambda({n}) outside stored range 1..{self.n_coeff}")
        return float(self.coeffs[n])


def validate_hecke(form: EigenForm, tol: float = _HECKE_TOL) -> None:
    """Check lambda(m) lambda(n) = sum_{d|(m,n)} lambda(mn/d^2), mn <= N_j."""
    N = form.n_coeff
    lam = form.coeffs
    if abs(lam[1] - 1.0) > tol:
        raise HeckeRelationError(f"form {form.j}: lambda(1) = {lam[1]} != 1")
    for m in range(2, int(math.isqrt(N)) + 1):
        for n in range(m, N // m + 1):
            rhs = 0.0
            for d in divisors(math.gcd(m, n)):
                rhs += lam[(m * n) // (d * d)]
            if abs(lam[m] * lam[n] - rhs) > tol:
                raise HeckeRelationError(
                    f"form {form.j}: Hecke relation fails at (m, n) = ({m}, {n})"
                    f" by {abs(lam[m] * lam[n] - rhs):.2e}")


@dataclass(frozen=True)
class SpectralDataset:
    """Immutable ordered collection of validated eigenforms."""

    forms: tuple[EigenForm, ...]
    source_id: str
    checksum: str

    @property
    def t_max(self) -> float:
        return self.forms[-1].t if self.forms else 0.0

    def up_to(self, T: float) -> list[EigenForm]:
        return [f for f in self.forms if f.t <= T]


def weyl_count(dataset: SpectralDataset, T: float) -> tuple[int, float]:
    """(#{t_j <= T}, T^2/12): the leading Weyl-law comparison pair."""
    return len(dataset.up_to(T)), T * T / 12.0


def load_spectral_data(path) -> SpectralDataset:
    """Parse and validate a spectral data file (format in module docstring)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    text = raw.decode("utf-8")
    lines = text.splitlines(keepends=True)
    if len(lines) < 2:
        raise DataFormatError("file too short: need #source and #checksum headers")
    if not lines[0].startswith("#source "):
        raise DataFormatError("first line must be '#source <id>'")
    source_id = lines[0].split(maxsplit=1)[1].strip()
    if not lines[1].startswith("#checksum "):
        raise DataFormatError("second line must be '#checksum <hex>'")
    declared = lines[1].split(maxsplit=1)[1].strip()
    body = "".join(lines[2:]).encode("utf-8")
    actual = hashlib.sha256(body).hexdigest()
    if actual != declared:
        raise ChecksumError(f"checksum mismatch: file says {declared[:12]}..., "
                            f"body hashes to {actual[:12]}...")

    forms: list[EigenForm] = []
    cur: dict | None = None

    def close(cur):
        if cur is None:
            return
        coeffs = cur["coeffs"]
        if not coeffs:
            raise DataFormatError(f"form {cur['j']} has no coefficients")
        arr = np.empty(len(coeffs) + 1)
        arr[0] = math.nan
        for i, v in enumerate(coeffs, start=1):
            arr[i] = v
        form = EigenForm(cur["j"], cur["t"], arr, cur["l1"])
        validate_hecke(form)
        forms.append(form)

    for lineno, line in enumerate(text.splitlines(), start=1):
        if lineno <= 2 or not line.strip():
            continue
        parts = line.split()
        if parts[0] == "form":
            close(cur)
            if len(parts) not in (3, 4):
                raise DataFormatError(f"line {lineno}: malformed form header")
            cur = {"j": int(parts[1]), "t": float(parts[2]),
                   "l1": float(parts[3]) if len(parts) == 4 else None,
                   "coeffs": []}
        elif parts[0] == "c":
            if cur is None:
                raise DataFormatError(f"line {lineno}: coefficient before any form")
            if len(parts) != 3:
                raise DataFormatError(f"line {lineno}: malformed coefficient line")
            n = int(parts[1])
            if n != len(cur["coeffs"]) + 1:
                raise DataFormatError(
                    f"line {lineno}: coefficients must be contiguous from 1")
            cur["coeffs"].append(float(parts[2]))
        else:
            raise DataFormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    close(cur)

    if not forms:
        raise DataFormatError("no forms in file")
    for a, b in zip(forms, forms[1:]):
        if not (b.t > a.t):
            raise DataFormatError(
                f"spectral parameters not strictly increasing at j = {b.j}")
    return SpectralDataset(tuple(forms), source_id, declared)


def bundled_data_path():
    """Path-like handle to the bundled modular-group dataset."""
    return resources.files("geodex").joinpath("data/maass_sl2z.dat")


_BUNDLED_CACHE: dict[str, SpectralDataset] = {}


def load_bundled_dataset() -> SpectralDataset:
    if "ds" not in _BUNDLED_CACHE:
        with resources.as_file(bundled_data_path()) as p:
            _BUNDLED_CACHE["ds"] = load_spectral_data(p)
    return _BUNDLED_CACHE["ds"]


# ---------------------------------------------------------------------------
# spectral sums
# ---------------------------------------------------------------------------

def spectral_exponential_sum(dataset: SpectralDataset, T: float, X: float) -> complex:
    """S(T, X) = sum_{t_j <= T} X^{i t_j}, summed in increasing t_j."""
    if X <= 0:
        raise DomainError("spectral_exponential_sum requires X > 0")
    if T > dataset.t_max + 1e-12:
        raise CoverageError(
            f"T = {T} exceeds dataset coverage t_max = {dataset.t_max:.4f}")
    logX = math.log(X)
    total = 0j
    comp = 0j
    for f in dataset.up_to(T):
        term = complex(math.cos(f.t * logX), math.sin(f.t * logX))
        total, comp = kahan_add(total, comp, term)
    return total


def smoothed_sum(dataset: SpectralDataset, T: float, X: float) -> SeriesValue:
    """sum_j X^{i t_j} e^{-t_j/T} over the dataset, with the Weyl-density
    tail bound (1/6) int_{t_max}^inf t e^{-t/T} dt reported."""
    if X <= 0 or T <= 0:
        raise DomainError("smoothed_sum requires X > 0, T > 0")
    logX = math.log(X)
    total = 0j
    comp = 0j
    for f in dataset.forms:
        term = complex(math.cos(f.t * logX), math.sin(f.t * logX)) \
            * math.exp(-f.t / T)
        total, comp = kahan_add(total, comp, term)
    tmax = dataset.t_max
    tail = (T * (tmax + T) / 6.0) * math.exp(-tmax / T) * 1.3
    return SeriesValue(total, tail, len(dataset.forms))


def sym2_l(form: EigenForm, s, n_terms: int) -> SeriesValue:
    """L(sym^2 u_j, s) = zeta(2s) sum_{n <= N} lambda(n^2) n^-s + tail.

    Requires Re s >= 1.5 and n_terms^2 <= N_j.  Tail model: the Ramanujan
    envelope |lambda(n^2)| <= tau_0(n^2), summed exactly for a long stretch
    and closed with the checked bound tau_0(n^2) <= 12 n^0.45.
    """
    s = complex(s)
    if s.real < 1.5:
        raise DomainError("sym2_l tail accounting requires Re s >= 1.5")
    if n_terms * n_terms > form.n_coeff:
        raise CoverageError(
            f"need lambda up to {n_terms}^2 = {n_terms**2} > N_j = {form.n_coeff}")
    z2s = complex(riemann_zeta(2.0 * s))
    total = 0j
    comp = 0j
    for n in range(1, n_terms + 1):
        total, comp = kahan_add(total, comp, form.coeffs[n * n] * n ** (-s))
    # exact tau stretch
    from ._intutil import tau0
    sig = s.real
    stretch = 0.0
    top = max(10 * n_terms, 2000)
    for n in range(n_terms + 1, top + 1):
        stretch += tau0(n * n) * n ** (-sig)
    rest = 12.0 * top ** (0.45 + 1.0 - sig) / (sig - 1.45)
    tail = abs(z2s) * (stretch + rest)
    return SeriesValue(z2s * total, tail, n_terms)


def mock_eisenstein_form(n_coeff: int = 1024) -> EigenForm:
    """Divisor-coefficient mock form (lambda(n) = tau_0(n)); its sym^2 series
    collapses to zeta(s)^3 / zeta(2s), giving a closed-form oracle."""
    counts = np.zeros(n_coeff + 1, dtype=float)
    for d in range(1, n_coeff + 1):
        counts[d::d] += 1.0
    counts[0] = math.nan
    return EigenForm(0, 1.0, counts, l_sym2_at_1=None, alpha_err=0.0)


# ---------------------------------------------------------------------------
# smoothing pipeline
# ---------------------------------------------------------------------------

def _bump_sigma(u):
    """C-infinity step: sigma(u) = f(u)/(f(u)+f(1-u)), f(u) = e^{-1/u}."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    lo = u <= 0.0
    hi = u >= 1.0
    mid = ~(lo | hi)
    out[lo] = 0.0
    out[hi] = 1.0
    um = u[mid]
    fu = np.exp(-1.0 / um)
    fv = np.exp(-1.0 / (1.0 - um))
    out[mid] = fu / (fu + fv)
    return out


def smoothing_cutoff(x, T: float):
    """g(x): 1 on [1, T], 0 outside [1/2, T + 1/2], C-infinity in between."""
    x = np.asarray(x, dtype=float)
    rising = _bump_sigma((x - 0.5) / 0.5)
    falling = _bump_sigma((T + 0.5 - x) / 0.5)
    return rising * falling


def g_hat(x: float, T: float) -> complex:
    """g_hat(x) = int g(xi) e^{xi/T} e(x xi) d xi over the support [1/2, T+1/2]."""
    if T < 2.0:
        raise DomainError("g_hat requires T >= 2")
    from .numerics.quadrature import adaptive_integrate

    def f(xi):
        return smoothing_cutoff(xi, T) * np.exp(xi / T) \
            * np.exp(2j * math.pi * x * xi)

    panels = max(16, int((T + 1) * (abs(x) + 1.0) / 2.0))
    val, _ = adaptive_integrate(f, 0.5, T + 0.5, abs_tol=1e-12, rel_tol=1e-11,
                                max_panels=4 * panels, initial=panels)
    return val


def smoothing_identity_check(dataset: SpectralDataset, T: float, X: float) -> float:
    """|S(T, X) - int_{-1}^{1} g_hat(xi) smoothed_sum(T, X e^{-2 pi xi}) d xi|.

    The paper's smoothing step carries an O(T log T) error, so this is an
    empirical comparator, not an equality test.
    """
    if dataset.t_max < T + 10.0:
        raise CoverageError("smoothing identity check needs coverage t <= T + 10")
    sharp = spectral_exponential_sum(dataset, T, X)
    ts = np.array([f.t for f in dataset.forms])
    weights = np.exp(-ts / T)
    logX = math.log(X)

    def f(xi):
        xi = np.asarray(xi, dtype=float)
        gh = np.array([g_hat(v, T) for v in xi])
        phase = np.exp(1j * np.outer(logX - 2.0 * math.pi * xi, ts))
        inner = phase @ weights
        return gh * inner

    from .numerics.quadrature import adaptive_integrate
    val, _ = adaptive_integrate(f, -1.0, 1.0, abs_tol=1e-9, rel_tol=1e-8,
                                max_panels=400, initial=96)
    return abs(sharp - val)
