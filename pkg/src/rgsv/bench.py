"""Timing harness comparing the randomized and direct GSV paths."""

from __future__ import annotations

import dataclasses
import statistics
import time
from dataclasses import dataclass

import numpy as np

from . import engine
from .engine import DIRECT, RANDOMIZED, GmpPair, GsvOptions
from .errors import ValidationError
from .synthetic import SynthSpec, synth_gmp


@dataclass(frozen=True)
class RunConfig:
    """One benchmark run: a pair from files or from the synthetic
    generator (exactly one source), GSV options, and repetition count."""

    g1_path: str | None = None
    g2_path: str | None = None
    synth: SynthSpec | None = None
    options: GsvOptions = GsvOptions()
    output: str | None = None
    format: str = "csv"
    repetitions: int = 1

    def __post_init__(self):
        have_files = self.g1_path is not None and self.g2_path is not None
        have_partial = (self.g1_path is None) != (self.g2_path is None)
        if have_partial:
            raise ValidationError("g1_path and g2_path must be given together")
        if have_files == (self.synth is not None):
            raise ValidationError("exactly one input source: matrix files or synth spec")
        if self.repetitions < 1:
            raise ValidationError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.format not in ("csv", "json"):
            raise ValidationError(f"format must be 'csv' or 'json', got {self.format!r}")


@dataclass(frozen=True)
class BenchRecord:
    """One timed repetition of one method, with its spectrum error against
    the direct reference and the basis widths it used."""

    method: str
    repetition: int
    seconds: float
    err_alpha: float
    err_beta: float
    residual1: float | None
    residual2: float | None
    l1: int
    l2: int
    m: int
    p: int
    n: int


def load_pair(cfg: RunConfig) -> GmpPair:
    """Materialize the pair named by a run configuration."""
    if cfg.synth is not None:
        return synth_gmp(cfg.synth).pair
    from .io import read_matrix

    return GmpPair(read_matrix(cfg.g1_path), read_matrix(cfg.g2_path))


def _timed_run(pair: GmpPair, opts: GsvOptions):
    t0 = time.perf_counter()
    pl = engine._run_pipeline(pair, opts)
    spec = engine.spectrum_from_l_blocks(
        pl.l1_block, pl.l2_block, pair.n, opts.classify_tol
    )
    dt = time.perf_counter() - t0
    return spec, pl, dt


def run_bench(cfg: RunConfig) -> list[BenchRecord]:
    """Time both methods over the configured repetitions.

    The direct method runs first and its spectrum is the error reference
    for every record. Randomized repetitions use seeds derived from the
    base seed (base + repetition index). Use ``median_seconds`` on the
    result for the robust per-method timing summary.
    """
    pair = load_pair(cfg)
    opts = cfg.options
    records: list[BenchRecord] = []
    reference = None

    for method in (DIRECT, RANDOMIZED):
        mopts = dataclasses.replace(opts, method=method)
        for rep in range(cfg.repetitions):
            if method == RANDOMIZED:
                ext = dataclasses.replace(
                    opts.extraction, seed=opts.extraction.seed + rep
                )
                mopts = dataclasses.replace(opts, method=method, extraction=ext)
            spec, pl, dt = _timed_run(pair, mopts)
            if reference is None:
                reference = spec
            records.append(
                BenchRecord(
                    method=method,
                    repetition=rep,
                    seconds=dt,
                    err_alpha=float(np.linalg.norm(spec.alphas - reference.alphas)),
                    err_beta=float(np.linalg.norm(spec.betas - reference.betas)),
                    residual1=(
                        pl.basis1.residual_history[-1] if pl.basis1 is not None else None
                    ),
                    residual2=(
                        pl.basis2.residual_history[-1] if pl.basis2 is not None else None
                    ),
                    l1=pl.l1_block.shape[0],
                    l2=pl.l2_block.shape[0],
                    m=pair.m,
                    p=pair.p,
                    n=pair.n,
                )
            )
    return records


def median_seconds(records: list[BenchRecord]) -> dict[str, float]:
    """Median wall time per method."""
    out: dict[str, float] = {}
    for method in {rec.method for rec in records}:
        out[method] = statistics.median(
            rec.seconds for rec in records if rec.method == method
        )
    return out
