"""Comparative-analysis quantities derived from a GSV spectrum.

Per shared direction ("genelet") index the spectrum yields a relative
significance ratio, an antisymmetric angular distance in [-pi/4, pi/4],
and per-dataset expression fractions; each fraction vector condenses to a
normalized Shannon entropy in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import GmpPair, GsvOptions, GsvSpectrum, compute_gsv
from .errors import DegenerateSpectrumError, ValidationError

QUARTER_PI = math.pi / 4


@dataclass(frozen=True)
class ComparativeReport:
    """All per-index and scalar comparison quantities for one pair, with
    provenance (method, seed, tolerances) in ``meta``."""

    spectrum: GsvSpectrum
    rho: np.ndarray
    theta: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    d1: float
    d2: float
    meta: dict = field(default_factory=dict)


def relative_significance(spec: GsvSpectrum) -> np.ndarray:
    """Per-index ratio alpha/beta, +inf where beta is classified zero."""
    rho = np.full(spec.n, np.inf)
    nz = slice(spec.r, spec.n)
    rho[nz] = spec.alphas[nz] / spec.betas[nz]
    return rho


def angular_distances(spec: GsvSpectrum) -> np.ndarray:
    """Antisymmetric angular distance arctan(alpha/beta) - pi/4.

    Evaluated with the two-argument arctangent, so beta = 0 gives exactly
    +pi/4 and alpha = 0 exactly -pi/4 with no division.
    """
    return np.arctan2(spec.alphas, spec.betas) - QUARTER_PI


def eigenexpression_fractions(spec: GsvSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """Normalized squared GSVs: two probability vectors, one per dataset."""
    sa = float(np.sum(spec.alphas**2))
    sb = float(np.sum(spec.betas**2))
    if sa <= 0 or sb <= 0:
        raise DegenerateSpectrumError("spectrum has vanishing alpha- or beta-energy")
    return spec.alphas**2 / sa, spec.betas**2 / sb


def shannon_entropy(p) -> float:
    """Normalized Shannon entropy of a probability vector, in [0, 1].

    Uses the 0*log(0) = 0 convention; 0 means a single dominant entry,
    1 the uniform vector. Requires length >= 2.
    """
    v = np.asarray(p, dtype=np.float64)
    if v.ndim != 1 or v.size < 2:
        raise ValidationError(f"need a 1-D probability vector of length >= 2, got shape {v.shape}")
    if np.any(v < 0):
        raise ValidationError("probability vector has negative entries")
    total = float(np.sum(v))
    if abs(total - 1.0) > 1e-10:
        raise ValidationError(f"probability vector sums to {total!r}, not 1")
    nz = v[v > 0]
    d = -float(np.sum(nz * np.log(nz))) / math.log(v.size)
    return min(max(d, 0.0), 1.0) + 0.0  # normalize -0.0


def compare(pair: GmpPair, opts: GsvOptions | None = None) -> ComparativeReport:
    """Compute the spectrum and every derived comparison quantity."""
    opts = opts or GsvOptions()
    spec = compute_gsv(pair, opts)
    p1, p2 = eigenexpression_fractions(spec)
    meta = {
        "method": opts.method,
        "seed": opts.extraction.seed,
        "tol": opts.extraction.tol,
        "classify_tol": opts.classify_tol,
    }
    return ComparativeReport(
        spectrum=spec,
        rho=relative_significance(spec),
        theta=angular_distances(spec),
        p1=p1,
        p2=p2,
        d1=shannon_entropy(p1),
        d2=shannon_entropy(p2),
        meta=meta,
    )
