"""Error certificates for the randomized pipeline.

Three certified quantities: the expected squared basis-extraction residual
for a fixed-size Gaussian sketch, the perturbation budget linking a pair
and a perturbed copy of it to their GSV deviation, and first-order bounds
on how far every comparative-analysis quantity can move under that
budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .analysis import eigenexpression_fractions, shannon_entropy
from .engine import GmpPair, GsvSpectrum
from .errors import DimensionError, ValidationError


@dataclass(frozen=True)
class BoundCertificate:
    """Deviation budget for comparative quantities at perturbation size
    ``e_script``.

    theta_bound caps every angular-distance deviation (saturating at pi/2,
    in which case ``vacuous`` is set); p1_bounds/p2_bounds and
    d1_bound/d2_bound are first-order per-entry and scalar caps with the
    sub-linear remainder dropped. ``eta`` is the stacked-pair conditioning
    factor when the caller supplies it.
    """

    e_script: float
    theta_bound: float
    p1_bounds: np.ndarray
    p2_bounds: np.ndarray
    d1_bound: float
    d2_bound: float
    vacuous: bool = False
    eta: float | None = None


def projector_bound(
    pair: GmpPair,
    spectrum: GsvSpectrum,
    k: int,
    oversample: int,
    which: str = "first",
) -> float:
    """Upper bound on the expected squared residual of a (k + oversample)-
    column Gaussian sketch of g1 (``which="first"``) or g2 (``"second"``).

    The bound is eta * (k/(oversample - 1) + 1) times the squared GSV tail
    the sketch cannot capture: the alphas beyond index k for g1, the
    n - k smallest betas for g2.
    """
    if which not in ("first", "second"):
        raise ValidationError(f"which must be 'first' or 'second', got {which!r}")
    if k < 2:
        raise ValidationError(f"target rank k must be >= 2, got {k}")
    if oversample < 2:
        raise ValidationError(f"oversample must be >= 2, got {oversample}")
    limit = min(pair.m, pair.n) if which == "first" else min(pair.p, pair.n)
    if k + oversample > limit:
        raise ValidationError(
            f"k + oversample = {k + oversample} exceeds min dimension {limit}"
        )
    eta = pair.stack_norm2 ** 2
    prefactor = k / (oversample - 1) + 1.0
    if which == "first":
        tail = float(np.sum(spectrum.alphas[k:] ** 2))
    else:
        tail = float(np.sum(spectrum.betas[: spectrum.n - k] ** 2))
    return eta * prefactor * tail


def perturbation_bound(pair: GmpPair, pair_tilde: GmpPair) -> float:
    """Perturbation budget sqrt(2) * ||stack difference||_F * min of the
    two stacked pseudoinverse norms. Bounds the root-sum-square (and hence
    the per-index) GSV deviation between the two pairs."""
    if pair.g1.shape != pair_tilde.g1.shape or pair.g2.shape != pair_tilde.g2.shape:
        raise DimensionError("pairs must have identical shapes")
    delta = pair_tilde.stacked() - pair.stacked()
    dnorm = math.sqrt(core.sum_sq(delta))
    return math.sqrt(2.0) * dnorm * min(pair.stack_pinv_norm, pair_tilde.stack_pinv_norm)


def _entropy_sensitivity(vals: np.ndarray, d: float) -> float:
    """Sum of |x_i / S * (log(x_i^2 / S) / log n + D)| over nonzero x."""
    n = vals.size
    total = float(np.sum(vals**2))
    nz = vals[vals > 0]
    terms = np.abs(nz / total * (np.log(nz**2 / total) / math.log(n) + d))
    return float(np.sum(terms))


def quantity_error_bounds(
    spectrum: GsvSpectrum,
    e_script: float,
    eta: float | None = None,
) -> BoundCertificate:
    """First-order deviation bounds for every comparative quantity at
    perturbation budget ``e_script``.

    When 2 * e_script exceeds 1 the angular bound saturates at pi/2 and the
    certificate is flagged vacuous. Entries with a zero GSV contribute
    zero to their own bound and to the entropy sensitivities.
    """
    if e_script < 0:
        raise ValidationError(f"e_script must be >= 0, got {e_script}")
    if spectrum.n < 2:
        raise ValidationError("bounds need a spectrum of length >= 2")
    two_e = 2.0 * e_script
    vacuous = two_e > 1.0
    theta_bound = math.asin(min(two_e, 1.0))

    alphas, betas = spectrum.alphas, spectrum.betas
    sa = float(np.sum(alphas**2))
    sb = float(np.sum(betas**2))
    p1_bounds = 2.0 * alphas * e_script / sa
    p2_bounds = 2.0 * betas * e_script / sb

    p1, p2 = eigenexpression_fractions(spectrum)
    d1 = shannon_entropy(p1)
    d2 = shannon_entropy(p2)
    d1_bound = two_e * _entropy_sensitivity(alphas, d1)
    d2_bound = two_e * _entropy_sensitivity(betas, d2)

    return BoundCertificate(
        e_script=float(e_script),
        theta_bound=theta_bound,
        p1_bounds=p1_bounds,
        p2_bounds=p2_bounds,
        d1_bound=d1_bound,
        d2_bound=d2_bound,
        vacuous=vacuous,
        eta=eta,
    )
