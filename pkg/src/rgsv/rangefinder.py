"""Blocked randomized extraction of an approximate orthonormal column basis.

``extract_basis`` builds Q block by block from Gaussian sketches until the
Frobenius residual ||(I - QQ^H)G||_F falls below a tolerance, every block
being projected against the current basis (twice, to contain roundoff)
before its reduced QR. The squared residual is maintained cumulatively as
||G||_F^2 minus the captured energy, which keeps each iteration at
O(m*n*b); ``residual_norm`` is the explicit reference evaluation used to
validate the cumulative value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import core
from .errors import DimensionError, ValidationError


@dataclass(frozen=True)
class ExtractionConfig:
    """Knobs for basis extraction.

    tol        absolute Frobenius residual target; None means 1e-10*||G||_F.
    blocksize  sketch width per iteration (clamped to the column count).
    seed       base seed for the Gaussian sketches.
    max_cols   optional cap on the number of basis columns.
    trim_tol   relative threshold below which a block column is dropped;
               0 disables trimming and keeps every sampled column.
    """

    tol: float | None = None
    blocksize: int = 100
    seed: int = 0
    max_cols: int | None = None
    trim_tol: float = 1e-12

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if self.blocksize < 1:
            raise ValidationError(f"blocksize must be >= 1, got {self.blocksize}")
        if self.max_cols is not None and self.max_cols < 1:
            raise ValidationError(f"max_cols must be >= 1, got {self.max_cols}")
        if self.trim_tol < 0:
            raise ValidationError(f"trim_tol must be >= 0, got {self.trim_tol}")


@dataclass
class BasisResult:
    """Output of ``extract_basis``.

    residual_history[i] is the Frobenius residual after i iterations
    (entry 0 is the residual of the empty basis); block_widths records how
    many columns each iteration contributed after trimming.
    """

    q: np.ndarray
    residual_history: list[float]
    converged: bool
    iterations: int
    block_widths: list[int] = field(default_factory=list)


def extract_basis(g, cfg: ExtractionConfig | None = None) -> BasisResult:
    """Extract an approximate orthonormal basis of the column space of g.

    The residual test runs before the first iteration, so a zero matrix
    yields an empty basis immediately. The loop visits ceil(n/blocksize)
    blocks (the last one narrower when blocksize does not divide n) and
    after exhausting them the basis reproduces g to roundoff. Failure to
    reach tol is not an error: the result carries converged=False and the
    full residual history.
    """
    cfg = cfg or ExtractionConfig()
    a = core.as_matrix(g, "g")
    m, n = a.shape
    complex_field = np.iscomplexobj(a)

    gf2 = core.sum_sq(a)
    normf = math.sqrt(gf2)
    tol = cfg.tol if cfg.tol is not None else 1e-10 * normf
    trim_cut = cfg.trim_tol * normf
    max_cols = cfg.max_cols
    if max_cols is not None and max_cols > min(m, n):
        raise ValidationError(
            f"max_cols={max_cols} exceeds min(rows, cols)={min(m, n)}"
        )

    q = np.zeros((m, 0), dtype=a.dtype)
    history = [normf]
    widths: list[int] = []
    if normf == 0.0 or normf < tol:
        return BasisResult(q, history, True, 0, widths)

    b = min(cfg.blocksize, n)
    nblocks = -(-n // b)
    rng = np.random.default_rng(int(cfg.seed) & ((1 << 64) - 1))
    captured_parts: list[float] = []
    converged = False
    iterations = 0

    for i in range(nblocks):
        width = min(b, n - i * b)
        if max_cols is not None:
            width = min(width, max_cols - q.shape[1])
            if width <= 0:
                break
        omega = rng.standard_normal((n, width))
        if complex_field:
            omega = math.sqrt(0.5) * (omega + 1j * rng.standard_normal((n, width)))
        y = a @ omega
        if q.shape[1]:
            y -= q @ (q.conj().T @ y)
            y -= q @ (q.conj().T @ y)
        p, t = core.reduced_qr(y)
        keep = np.abs(np.diagonal(t)) >= trim_cut
        p = p[:, keep]
        if p.shape[1]:
            captured_parts.append(core.sum_sq(p.conj().T @ a))
            q = np.hstack([q, p])
        widths.append(p.shape[1])
        res2 = gf2 - math.fsum(captured_parts)
        history.append(math.sqrt(max(res2, 0.0)))
        iterations = i + 1
        if history[-1] < tol:
            converged = True
            break
        if max_cols is not None and q.shape[1] >= max_cols:
            break

    return BasisResult(q, history, converged, iterations, widths)


def residual_norm(g, q) -> float:
    """Explicit evaluation of ||(I - QQ^H)G||_F.

    This is the non-cumulative reference; an empty basis returns ||G||_F.
    """
    a = core.as_matrix(g, "g")
    qa = np.asarray(q)
    if qa.ndim != 2:
        raise DimensionError(f"q must be 2-D, got shape {qa.shape}")
    if qa.shape[0] != a.shape[0]:
        raise DimensionError(
            f"q has {qa.shape[0]} rows but g has {a.shape[0]}"
        )
    if qa.shape[1] == 0:
        return core.frobenius_norm(a)
    resid = a - qa @ (qa.conj().T @ a)
    return math.sqrt(core.sum_sq(resid))
