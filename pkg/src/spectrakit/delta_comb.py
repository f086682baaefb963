"""Finite exponential-mixture spectrum from constant-activity windows."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .durations import DurationSeries, SurvivalCurve, default_tau_grid, empirical_survival
from .gof import KsReport, ks_compare

__all__ = [
    "DeltaComb",
    "fit_comb",
    "comb_survival",
    "sweep_delta_t",
    "estimate_h",
    "default_delta_t_grid",
    "write_comb_csv",
    "read_comb_csv",
    "write_delta_t_sweep_csv",
]


@dataclass(frozen=True)
class DeltaComb:
    """Weights a_j and rates lambda_j of a finite exponential mixture.

    Each window j holds the minimum run of consecutive durations whose
    sum T_j exceeds delta_t (strictly); lambda_j = N_j/T_j and
    a_j = N_j/N, so the weights sum to one by construction.
    """

    weights: np.ndarray
    rates: np.ndarray
    m: int
    delta_t: float
    window_counts: np.ndarray
    window_sums: np.ndarray


def fit_comb(series: DurationSeries, delta_t: float,
             drop_tail: bool = False) -> DeltaComb:
    """Split the duration stream into windows of ~constant activity.

    Scans the durations in order; a window closes as soon as its sum
    strictly exceeds delta_t, and the next one starts with the
    following duration.  A trailing run whose sum never exceeds
    delta_t becomes a final partial window (keeping the weights summing
    to 1 exactly) unless drop_tail is set, in which case the remaining
    weights are renormalized.
    """
    if delta_t <= 0:
        raise ValueError(f"delta_t must be > 0, got {delta_t}")
    counts, sums = [], []
    cur_n, cur_t = 0, 0.0
    for tau in series.values:
        cur_n += 1
        cur_t += tau
        if cur_t > delta_t:
            counts.append(cur_n)
            sums.append(cur_t)
            cur_n, cur_t = 0, 0.0
    has_tail = cur_n > 0
    if has_tail and not drop_tail:
        counts.append(cur_n)
        sums.append(cur_t)
    if not counts:
        raise ValueError(
            f"delta_t={delta_t:g} swallows the whole series into one dropped tail")
    counts = np.array(counts, dtype=int)
    sums = np.array(sums, dtype=float)
    denom = counts.sum() if (drop_tail and has_tail) else series.n
    return DeltaComb(
        weights=counts / denom,
        rates=counts / sums,
        m=len(counts),
        delta_t=float(delta_t),
        window_counts=counts,
        window_sums=sums,
    )


def comb_survival(comb: DeltaComb, taus) -> SurvivalCurve:
    """Mixture survival Psi(tau) = sum_j a_j * exp(-lambda_j * tau)."""
    taus = np.asarray(taus, dtype=float)
    psi = np.exp(-np.outer(taus, comb.rates)) @ comb.weights
    return SurvivalCurve(taus=taus, psi=psi, n_source=0)


def default_delta_t_grid(series: DurationSeries, n: int = 30) -> np.ndarray:
    """Log-spaced delta_t sweep spanning windows of ~10 to ~n/5 events."""
    lo = 10.0 * series.mean
    hi = series.n * series.mean / 5.0
    if hi <= lo:
        hi = 2.0 * lo
    return np.geomspace(lo, hi, n)


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get("SPECTRAKIT_THREADS", "1")))
    except ValueError:
        return 1


def sweep_delta_t(series: DurationSeries, dts, taus=None,
                  n_eff: int | None = None):
    """Fit a comb per delta_t and rank by KS p-value against the data.

    Returns (results, best_index) where results[i] is a
    (DeltaComb, KsReport) pair, in input order.  Ties in p-value break
    toward larger delta_t.
    """
    dts = list(np.atleast_1d(np.asarray(dts, dtype=float)))
    if not dts:
        raise ValueError("delta_t sweep is empty")
    if taus is None:
        taus = default_tau_grid(series)
    empirical = empirical_survival(series, taus)
    if n_eff is None:
        n_eff = series.n

    def one(dt):
        comb = fit_comb(series, dt)
        report = ks_compare(comb_survival(comb, taus), empirical, n_eff)
        return comb, report

    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, dts))
    else:
        results = [one(dt) for dt in dts]
    best = max(range(len(results)),
               key=lambda i: (results[i][1].p_value, results[i][0].delta_t))
    return results, best


def estimate_h(comb: DeltaComb, n: int, margin: float = 1.3) -> float:
    """Lambda spacing h = margin * max(rates) / n for an n-point kernel.

    Chosen so the kernel's lambda range h..h*n brackets the comb's
    largest observed rate with the given headroom.
    """
    if n < 1:
        raise ValueError(f"grid size must be >= 1, got {n}")
    if margin < 1:
        raise ValueError(f"margin must be >= 1, got {margin}")
    return margin * float(comb.rates.max()) / n


def write_comb_csv(comb: DeltaComb, stream) -> None:
    stream.write(f"# delta_t={comb.delta_t:.12g}\n")
    stream.write("lambda,weight,window_count,window_sum\n")
    for lam, w, c, t in zip(comb.rates, comb.weights,
                            comb.window_counts, comb.window_sums):
        stream.write(f"{lam:.12g},{w:.12g},{c:d},{t:.12g}\n")


def read_comb_csv(stream) -> DeltaComb:
    delta_t = float("nan")
    rows = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if line.startswith("# delta_t="):
            delta_t = float(line.split("=", 1)[1])
            continue
        if not line or line.startswith("#") or line.startswith("lambda"):
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 4 comb columns")
        rows.append((float(parts[0]), float(parts[1]), int(parts[2]), float(parts[3])))
    if not rows:
        raise ValueError("empty comb CSV")
    rates, weights, counts, sums = zip(*rows)
    return DeltaComb(
        weights=np.array(weights),
        rates=np.array(rates),
        m=len(rows),
        delta_t=delta_t,
        window_counts=np.array(counts, dtype=int),
        window_sums=np.array(sums),
    )


def write_delta_t_sweep_csv(results, stream) -> None:
    """Per-delta_t report: delta_t,m,ks_statistic,ks_pvalue."""
    stream.write("delta_t,m,ks_statistic,ks_pvalue\n")
    for comb, report in results:
        stream.write(f"{comb.delta_t:.12g},{comb.m:d},"
                     f"{report.statistic:.12g},{report.p_value:.12g}\n")
