"""Ingestion of duration data and the empirical survival function."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DurationSeries",
    "SurvivalCurve",
    "load_durations",
    "empirical_survival",
    "default_tau_grid",
    "write_survival_csv",
    "read_survival_csv",
]


@dataclass(frozen=True)
class DurationSeries:
    """An ordered series of strictly positive waiting times (seconds).

    ``dropped`` counts the non-positive (or over-cap) entries removed
    during loading; it is bookkeeping, not part of the data.
    """

    values: np.ndarray
    n: int
    mean: float
    max: float
    dropped: int = 0

    @classmethod
    def from_values(cls, values, dropped: int = 0) -> "DurationSeries":
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("no usable durations")
        if np.any(values <= 0):
            raise ValueError("durations must be strictly positive")
        return cls(
            values=values,
            n=int(values.size),
            mean=float(values.mean()),
            max=float(values.max()),
            dropped=int(dropped),
        )


@dataclass(frozen=True)
class SurvivalCurve:
    """A survival function sampled on a strictly increasing tau grid.

    ``n_source`` is the number of underlying durations (0 for analytic
    curves); it feeds the effective sample size of the KS significance.
    """

    taus: np.ndarray
    psi: np.ndarray
    n_source: int = 0

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        psi = np.asarray(self.psi, dtype=float)
        if taus.ndim != 1 or taus.size == 0:
            raise ValueError("tau grid must be a non-empty 1-d array")
        if taus.size != psi.size:
            raise ValueError("taus and psi must have the same length")
        if np.any(np.diff(taus) <= 0):
            raise ValueError("tau grid must be strictly increasing")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "psi", psi)


def _parse_lines(source):
    """Yield (lineno, float) for every data line, skipping '#' comments."""
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield lineno, float(line)
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {line!r} as a number") from None


def load_durations(source, mode: str = "durations",
                   max_duration: float | None = None) -> DurationSeries:
    """Read newline-separated numbers into a DurationSeries.

    Parameters
    ----------
    source : str or iterable of lines
        Text with one number per line; '#' lines are comments.
    mode : {'durations', 'timestamps'}
        'durations' takes the numbers as waiting times; 'timestamps'
        takes successive differences of non-decreasing event times.
    max_duration : float, optional
        If given, durations above this cap are dropped as well (e.g.
        overnight session gaps).

    Non-positive entries (or differences) are dropped and counted in
    ``dropped``.  Raises ValueError if nothing usable remains.
    """
    if mode not in ("durations", "timestamps"):
        raise ValueError(f"unknown mode {mode!r}")
    numbers = np.array([x for _, x in _parse_lines(source)], dtype=float)
    if mode == "timestamps":
        numbers = np.diff(numbers) if numbers.size > 1 else np.empty(0)
    keep = numbers > 0
    if max_duration is not None:
        keep &= numbers <= max_duration
    values = numbers[keep]
    dropped = int(numbers.size - values.size)
    if values.size == 0:
        raise ValueError("no usable durations")
    return DurationSeries.from_values(values, dropped=dropped)


def default_tau_grid(series: DurationSeries) -> np.ndarray:
    """Integer-second grid 1..ceil(tau_max)."""
    return np.arange(1.0, math.ceil(series.max) + 1.0)


def empirical_survival(series: DurationSeries, taus) -> SurvivalCurve:
    """Empirical survival Psi(tau) = #{tau_i >= tau} / n on the grid.

    The '>=' convention makes Psi at the largest observed duration equal
    to (multiplicity of the max)/n, so the max/min dynamic range over
    the data support equals n for a unique maximum.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.size == 0:
        raise ValueError("tau grid is empty")
    if np.any(taus < 0):
        raise ValueError("tau grid values must be >= 0")
    sorted_vals = np.sort(series.values)
    counts = series.n - np.searchsorted(sorted_vals, taus, side="left")
    return SurvivalCurve(taus=taus, psi=counts / series.n, n_source=series.n)


def write_survival_csv(curve: SurvivalCurve, stream) -> None:
    stream.write("tau,psi\n")
    for tau, psi in zip(curve.taus, curve.psi):
        stream.write(f"{tau:g},{psi:.6f}\n")


def read_survival_csv(stream, n_source: int = 0) -> SurvivalCurve:
    rows = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("tau"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'tau,psi'")
        rows.append((float(parts[0]), float(parts[1])))
    if not rows:
        raise ValueError("empty survival CSV")
    taus, psi = map(np.array, zip(*rows))
    return SurvivalCurve(taus=taus, psi=psi, n_source=n_source)
