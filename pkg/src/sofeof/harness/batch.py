"""Batch verification of ``E(sigma_out) = h0(SOF(sigma_in))`` on random states."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..config import DEFAULT_ALGORITHM, DEFAULT_SOLVER, AlgorithmConfig, SolverConfig
from ..errors import ConjectureGap, DccFailed, GaussianStateError
from ..max_eof import maximize_eof
from ..resources import h0, sof_mixed
from .generator import GeneratorConfig, sample_state

CSV_HEADER = ("sample_id", "seed", "sof_in", "sof_out", "eof_out", "h0_sof", "error", "dcc_residual",
              "status", "wall_time_ms")
STATUSES = ("OK", "UNRESOLVED", "DCC_FAILED")


@dataclass(frozen=True)
class RunRecord:
    """One harness sample. ``status == "OK"`` iff the saturation contract holds.

    Equality ignores the wall time and the attached matrices.
    """

    sample_id: int
    seed: int
    sof_in: float
    sof_out: float
    eof_out: float
    h0_sof: float
    error: float
    dcc_residual: float
    status: str
    wall_time_ms: float = field(compare=False)
    sigma_in: np.ndarray | None = field(default=None, compare=False, repr=False)
    sigma_out: np.ndarray | None = field(default=None, compare=False, repr=False)

    def row(self, timing: bool = True) -> list[str]:
        f = lambda x: f"{float(x):.17g}"  # noqa: E731
        return [str(self.sample_id), str(self.seed), f(self.sof_in), f(self.sof_out), f(self.eof_out),
                f(self.h0_sof), f(self.error), f(self.dcc_residual), self.status,
                f(self.wall_time_ms if timing else 0.0)]


def run_sample(cfg: GeneratorConfig, sample_id: int, alg: AlgorithmConfig = DEFAULT_ALGORITHM,
               solver: SolverConfig = DEFAULT_SOLVER) -> RunRecord:
    """Generate sample ``sample_id`` and run the EOF maximization on it."""
    seed, sigma = sample_state(cfg, sample_id)
    t0 = time.perf_counter()
    nan = float("nan")
    try:
        out, tr = maximize_eof(sigma, alg, solver, seed=seed, check=False)
        ok = abs(tr.error) <= alg.gap_tol and abs(tr.sof_out - tr.sof_in) <= alg.gap_tol
        vals = (tr.sof_in, tr.sof_out, tr.eof_out, tr.h0_sof, tr.error, tr.dcc_residual)
        status = "OK" if ok else "UNRESOLVED"
    except DccFailed as exc:
        s_in = sof_mixed(sigma, solver, seed).value
        vals = (s_in, nan, nan, h0(s_in), nan, exc.residual)
        out, status = None, "DCC_FAILED"
    except (ConjectureGap, GaussianStateError):
        vals = (nan,) * 6
        out, status = None, "UNRESOLVED"
    ms = (time.perf_counter() - t0) * 1e3
    return RunRecord(sample_id, seed, *map(float, vals), status, ms, sigma, out)


def _run_sample_star(args) -> RunRecord:
    return run_sample(*args)


def run_batch(cfg: GeneratorConfig, jobs: int = 1, alg: AlgorithmConfig = DEFAULT_ALGORITHM,
              solver: SolverConfig = DEFAULT_SOLVER) -> list[RunRecord]:
    """Records ordered by ``sample_id``; independent of ``jobs``."""
    tasks = [(cfg, i, alg, solver) for i in range(cfg.n_samples)]
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_sample_star(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_sample_star, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))


def summary(records: list[RunRecord]) -> dict:
    """Status counts and error statistics (errors of non-OK records included when finite)."""
    counts = {s: sum(r.status == s for r in records) for s in STATUSES}
    err = np.array([abs(r.error) for r in records if np.isfinite(r.error)])
    drift = np.array([abs(r.sof_out - r.sof_in) for r in records if np.isfinite(r.sof_out)])
    dcc = np.array([r.dcc_residual for r in records if np.isfinite(r.dcc_residual)])
    return {
        "n_samples": len(records),
        "counts": counts,
        "mean_abs_error": float(np.sum(err) / err.size) if err.size else float("nan"),
        "max_abs_error": float(err.max()) if err.size else float("nan"),
        "max_sof_drift": float(drift.max()) if drift.size else float("nan"),
        "max_dcc_residual": float(dcc.max()) if dcc.size else float("nan"),
    }


def write_results(records: list[RunRecord], path: str | Path, timing: bool = True) -> None:
    """CSV with floats at 17 significant digits. ``timing=False`` writes zero wall times
    so that reruns are byte-identical."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.row(timing))


def read_results(path: str | Path) -> list[RunRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [RunRecord(int(r["sample_id"]), int(r["seed"]), float(r["sof_in"]), float(r["sof_out"]),
                      float(r["eof_out"]), float(r["h0_sof"]), float(r["error"]), float(r["dcc_residual"]),
                      r["status"], float(r["wall_time_ms"])) for r in rows]
