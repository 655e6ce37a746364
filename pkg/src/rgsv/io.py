"""Matrix files and report serialization.

Matrices travel as Matrix Market files (dense array or coordinate, real
or complex, via scipy) or as headerless CSV; reports serialize to CSV
(per-index rows followed by a scalar block) or JSON, with floats at full
round-trip precision.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np
import scipy.io

from . import core
from .analysis import ComparativeReport
from .bounds import BoundCertificate
from .engine import GsvSpectrum
from .errors import ParseError, ValidationError
from .rangefinder import BasisResult

_MM_MAGIC = "%%MatrixMarket"


def read_matrix(path) -> np.ndarray:
    """Read a matrix from a Matrix Market or headerless CSV file.

    The format is sniffed from the first line. Coordinate Matrix Market
    entries are densified. CSV cells may be real or complex literals
    (``1.5``, ``2+3j``).
    """
    path = Path(path)
    try:
        with open(path, "r") as fh:
            first = fh.readline()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}") from exc
    if first.startswith(_MM_MAGIC):
        return _read_matrix_market(path)
    return _read_csv_matrix(path)


def _read_matrix_market(path: Path) -> np.ndarray:
    try:
        mat = scipy.io.mmread(path)
    except Exception as exc:
        raise ParseError(f"{path}: invalid Matrix Market file: {exc}") from exc
    if not isinstance(mat, np.ndarray):
        mat = mat.toarray()
    if mat.ndim == 1:
        mat = mat.reshape(-1, 1)
    return core.as_matrix(mat, str(path))


def _read_csv_matrix(path: Path) -> np.ndarray:
    rows = []
    ncols = None
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cells = [c.strip() for c in line.split(",")]
            parsed = []
            for col, cell in enumerate(cells, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    try:
                        parsed.append(complex(cell))
                    except ValueError:
                        raise ParseError(
                            f"{path}:{lineno}: column {col}: not a number: {cell!r}"
                        ) from None
            if ncols is None:
                ncols = len(parsed)
            elif len(parsed) != ncols:
                raise ParseError(
                    f"{path}:{lineno}: expected {ncols} columns, found {len(parsed)}"
                )
            rows.append(parsed)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return core.as_matrix(np.array(rows), str(path))


def write_matrix(path, m) -> None:
    """Write a matrix as a dense Matrix Market file at full precision, so
    that read_matrix round-trips it bitwise."""
    a = core.as_matrix(m)
    field = "complex" if np.iscomplexobj(a) else "real"
    scipy.io.mmwrite(str(path), a, field=field, precision=17)


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [float(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def report_to_dict(report) -> dict:
    """Structured form of any report object, used by the JSON writer."""
    if isinstance(report, ComparativeReport):
        spec = report.spectrum
        return {
            "kind": "comparative_report",
            "alphas": _jsonable(spec.alphas),
            "betas": _jsonable(spec.betas),
            "rho": _jsonable(report.rho),
            "theta": _jsonable(report.theta),
            "p1": _jsonable(report.p1),
            "p2": _jsonable(report.p2),
            "d1": report.d1,
            "d2": report.d2,
            "r": spec.r,
            "s": spec.s,
            "n": spec.n,
            "meta": dict(report.meta),
        }
    if isinstance(report, GsvSpectrum):
        return {
            "kind": "spectrum",
            "alphas": _jsonable(report.alphas),
            "betas": _jsonable(report.betas),
            "r": report.r,
            "s": report.s,
            "n": report.n,
        }
    if isinstance(report, BoundCertificate):
        return {
            "kind": "bound_certificate",
            "eta": report.eta,
            "e_script": report.e_script,
            "theta_bound": report.theta_bound,
            "p1_bounds": _jsonable(report.p1_bounds),
            "p2_bounds": _jsonable(report.p2_bounds),
            "d1_bound": report.d1_bound,
            "d2_bound": report.d2_bound,
            "vacuous": report.vacuous,
        }
    if isinstance(report, BasisResult):
        return {
            "kind": "basis_result",
            "columns": int(report.q.shape[1]),
            "converged": report.converged,
            "iterations": report.iterations,
            "residual_history": [float(v) for v in report.residual_history],
            "block_widths": [int(w) for w in report.block_widths],
        }
    if isinstance(report, (list, tuple)):
        return {
            "kind": "bench_records",
            "records": [
                {k: _jsonable(v) for k, v in dataclasses.asdict(rec).items()}
                for rec in report
            ],
        }
    raise ValidationError(f"cannot serialize report of type {type(report).__name__}")


def _csv_rows(report) -> list[list]:
    if isinstance(report, ComparativeReport):
        spec = report.spectrum
        rows = [["index", "alpha", "beta", "rho", "theta", "p1", "p2"]]
        for i in range(spec.n):
            rows.append([
                i + 1,
                _num(spec.alphas[i]),
                _num(spec.betas[i]),
                _num(report.rho[i]),
                _num(report.theta[i]),
                _num(report.p1[i]),
                _num(report.p2[i]),
            ])
        rows += [
            ["d1", _num(report.d1)],
            ["d2", _num(report.d2)],
            ["r", spec.r],
            ["s", spec.s],
            ["seed", report.meta.get("seed", "")],
            ["tol", _num(report.meta.get("tol"))],
        ]
        return rows
    if isinstance(report, GsvSpectrum):
        rows = [["index", "alpha", "beta"]]
        for i in range(report.n):
            rows.append([i + 1, _num(report.alphas[i]), _num(report.betas[i])])
        rows += [["r", report.r], ["s", report.s]]
        return rows
    if isinstance(report, BoundCertificate):
        rows = [["index", "p1_bound", "p2_bound"]]
        for i in range(report.p1_bounds.size):
            rows.append([i + 1, _num(report.p1_bounds[i]), _num(report.p2_bounds[i])])
        rows += [
            ["eta", _num(report.eta)],
            ["e_script", _num(report.e_script)],
            ["theta_bound", _num(report.theta_bound)],
            ["d1_bound", _num(report.d1_bound)],
            ["d2_bound", _num(report.d2_bound)],
            ["vacuous", _num(report.vacuous)],
        ]
        return rows
    if isinstance(report, BasisResult):
        rows = [["iteration", "residual"]]
        for i, res in enumerate(report.residual_history):
            rows.append([i, _num(res)])
        rows += [
            ["columns", int(report.q.shape[1])],
            ["converged", _num(report.converged)],
            ["iterations", report.iterations],
        ]
        return rows
    if isinstance(report, (list, tuple)):
        header = [
            "method", "repetition", "seconds", "err_alpha", "err_beta",
            "residual1", "residual2", "l1", "l2", "m", "p", "n",
        ]
        rows = [header]
        for rec in report:
            d = dataclasses.asdict(rec)
            rows.append([_num(d[k]) if not isinstance(d[k], str) else d[k] for k in header])
        return rows
    raise ValidationError(f"cannot serialize report of type {type(report).__name__}")


def write_report(report, path=None, fmt: str = "csv") -> None:
    """Serialize a report to ``path`` (or stdout when None) as csv or json."""
    if fmt not in ("csv", "json"):
        raise ValidationError(f"format must be 'csv' or 'json', got {fmt!r}")

    def emit(fh):
        if fmt == "json":
            json.dump(report_to_dict(report), fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerows(_csv_rows(report))

    if path is None:
        emit(sys.stdout)
    else:
        with open(path, "w", newline="") as fh:
            emit(fh)
