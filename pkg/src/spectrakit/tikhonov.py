"""Tikhonov-regularized inversion of the survival-function system."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .durations import SurvivalCurve
from .gof import KsReport, ks_compare
from .kernel import KernelMatrix

__all__ = [
    "SpectrumGrid",
    "TikhonovSolution",
    "eval_objective",
    "solve_tikhonov",
    "sweep_mu",
    "default_mu_grid",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "write_mu_sweep_csv",
]

THREADS_ENV = "SPECTRAKIT_THREADS"


@dataclass(frozen=True)
class SpectrumGrid:
    """Activity masses g on a lambda grid.

    Tikhonov output is unconstrained, so masses may be negative; the
    negative part is reported as a diagnostic, never clipped.
    """

    lambdas: np.ndarray
    masses: np.ndarray
    total_mass: float

    @classmethod
    def from_arrays(cls, lambdas, masses) -> "SpectrumGrid":
        lambdas = np.asarray(lambdas, dtype=float)
        masses = np.asarray(masses, dtype=float)
        if lambdas.size != masses.size:
            raise ValueError("lambdas and masses must have the same length")
        return cls(lambdas=lambdas, masses=masses, total_mass=float(masses.sum()))

    @property
    def negative_mass(self) -> float:
        """Total magnitude of the negative components."""
        return float(-self.masses[self.masses < 0].sum())

    @property
    def negative_count(self) -> int:
        return int(np.sum(self.masses < 0))

    @property
    def mass_centroid(self) -> float:
        """Mean rate sum(lambda*g)/sum(g), the recovery diagnostic."""
        return float(np.dot(self.lambdas, self.masses) / self.masses.sum())


@dataclass(frozen=True)
class TikhonovSolution:
    mu: float
    spectrum: SpectrumGrid
    rebuilt: SurvivalCurve
    ks: KsReport


def _as_matrix(K) -> np.ndarray:
    return K.entries if isinstance(K, KernelMatrix) else np.asarray(K, dtype=float)


def _as_psi(psi) -> np.ndarray:
    return psi.psi if isinstance(psi, SurvivalCurve) else np.asarray(psi, dtype=float)


def eval_objective(K, g, psi, mu: float) -> float:
    """Regularized least-squares functional ||Kg - Psi||^2 + mu*||g||^2."""
    A = _as_matrix(K)
    g = np.asarray(g, dtype=float)
    b = _as_psi(psi)
    if A.shape != (b.size, g.size):
        raise ValueError(
            f"dimension mismatch: K is {A.shape}, psi has {b.size}, g has {g.size}")
    if mu < 0:
        raise ValueError(f"mu must be >= 0, got {mu}")
    r = A @ g - b
    return float(r @ r + mu * (g @ g))


def _solve_normal(A: np.ndarray, gram: np.ndarray, rhs: np.ndarray,
                  mu: float) -> np.ndarray:
    # SPD solve of (K^T K + mu I) g = K^T psi; no explicit inverse.
    G = gram + mu * np.eye(gram.shape[0])
    try:
        factor = cho_factor(G, lower=True)
    except LinAlgError as exc:
        raise ValueError(
            f"Tikhonov factorization failed at mu={mu:g}: "
            f"normal matrix not numerically positive definite") from exc
    return cho_solve(factor, rhs)


def solve_tikhonov(K, psi, mu: float, n_eff: int | None = None) -> TikhonovSolution:
    """Minimize ||Kg - Psi||^2 + mu*||g||^2 and rebuild the survival curve.

    ``psi`` must be sampled on the kernel's tau grid.  The KS report
    compares the rebuilt curve against ``psi`` with effective sample
    size n_eff (default: the curve's n_source, or 1 if analytic).
    """
    if mu <= 0:
        raise ValueError(f"mu must be > 0, got {mu}")
    A = _as_matrix(K)
    b = _as_psi(psi)
    if A.shape[0] != b.size:
        raise ValueError(
            f"dimension mismatch: K has {A.shape[0]} rows, psi has {b.size}")
    if isinstance(K, KernelMatrix) and isinstance(psi, SurvivalCurve):
        if not np.array_equal(K.taus, psi.taus):
            raise ValueError("psi is not sampled on the kernel's tau grid")
    g = _solve_normal(A, A.T @ A, A.T @ b, mu)

    if isinstance(K, KernelMatrix):
        lambdas, taus = K.lambdas, K.taus
    else:
        lambdas = np.arange(1.0, A.shape[1] + 1)
        taus = np.arange(1.0, A.shape[0] + 1)
    if isinstance(psi, SurvivalCurve):
        taus = psi.taus
        if n_eff is None:
            n_eff = max(psi.n_source, 1)
    elif n_eff is None:
        n_eff = 1

    spectrum = SpectrumGrid.from_arrays(lambdas, g)
    rebuilt = SurvivalCurve(taus=taus, psi=A @ g, n_source=0)
    empirical = psi if isinstance(psi, SurvivalCurve) else SurvivalCurve(taus=taus, psi=b)
    return TikhonovSolution(mu=float(mu), spectrum=spectrum, rebuilt=rebuilt,
                            ks=ks_compare(rebuilt, empirical, n_eff))


def default_mu_grid(n: int = 200, lo: float = 1e-6, hi: float = 1e2) -> np.ndarray:
    """Log-spaced regularization sweep, 200 points in [1e-6, 1e2]."""
    return np.geomspace(lo, hi, n)


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def sweep_mu(K, psi, mus, n_eff: int | None = None):
    """Solve for every mu and rank by KS p-value of the rebuilt curve.

    Returns (solutions, best_index) with solutions in input mu order.
    Ties in p-value break toward larger mu (stronger regularization).
    Failed factorizations are recorded as None and excluded from the
    argmax; if every mu fails, raises the last error.
    """
    mus = list(np.atleast_1d(np.asarray(mus, dtype=float)))
    if not mus:
        raise ValueError("mu sweep is empty")

    def attempt(mu):
        try:
            return solve_tikhonov(K, psi, mu, n_eff=n_eff)
        except ValueError as exc:
            return exc

    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(attempt, mus))
    else:
        results = [attempt(mu) for mu in mus]

    solutions = [r if isinstance(r, TikhonovSolution) else None for r in results]
    valid = [i for i, s in enumerate(solutions) if s is not None]
    if not valid:
        raise ValueError(f"all mu values failed; last error: "
                         f"{next(r for r in reversed(results) if isinstance(r, Exception))}")
    best = max(valid, key=lambda i: (solutions[i].ks.p_value, solutions[i].mu))
    return solutions, best


def write_spectrum_csv(spectrum: SpectrumGrid, stream) -> None:
    stream.write("lambda,g\n")
    for lam, g in zip(spectrum.lambdas, spectrum.masses):
        stream.write(f"{lam:.12g},{g:.12g}\n")


def read_spectrum_csv(stream) -> SpectrumGrid:
    rows = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("lambda"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'lambda,g'")
        rows.append((float(parts[0]), float(parts[1])))
    if not rows:
        raise ValueError("empty spectrum CSV")
    lambdas, masses = map(np.array, zip(*rows))
    return SpectrumGrid.from_arrays(lambdas, masses)


def write_mu_sweep_csv(solutions, stream) -> None:
    """Per-mu report: mu,ks_statistic,ks_pvalue,neg_mass,total_mass."""
    stream.write("mu,ks_statistic,ks_pvalue,neg_mass,total_mass\n")
    for sol in solutions:
        if sol is None:
            continue
        stream.write(f"{sol.mu:.12g},{sol.ks.statistic:.12g},"
                     f"{sol.ks.p_value:.12g},{sol.spectrum.negative_mass:.12g},"
                     f"{sol.spectrum.total_mass:.12g}\n")
