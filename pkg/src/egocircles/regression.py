"""Least-squares models of contact frequency on hashtag indices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from egocircles.errors import DegenerateDesign, Underdetermined
from egocircles.hashtags import HashtagTieStats
from egocircles.model import N_RINGS, LayeredEgoNetwork, ring_label

ACTIVATED_PREDICTORS = ("n_r_hact", "n_e_hact", "n_r_hmax", "n_e_hmax", "d_rel", "u_rel")
NOT_ACTIVATED_PREDICTORS = ("n_r_hmax", "n_e_hmax", "d_rel", "u_rel")
RING_COLUMNS = ("ALL", *(ring_label(r) for r in range(1, N_RINGS + 1)))
GROUPS = ("activated", "not_activated")

_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class RegressionModel:
    predictors: tuple[str, ...]
    coefficients: tuple[float, ...]
    intercept: float
    r_squared: float
    n: int
    diagnostics: tuple[str, ...] = ()

    def signs(self) -> dict[str, int]:
        return {p: int(np.sign(c)) for p, c in zip(self.predictors, self.coefficients)}

    def to_dict(self) -> dict:
        return {"predictors": list(self.predictors), "coefficients": list(self.coefficients),
                "intercept": self.intercept, "r_squared": self.r_squared, "n": self.n,
                "diagnostics": list(self.diagnostics)}


def ols_fit(X: Sequence[Sequence[float]] | np.ndarray, y: Sequence[float] | np.ndarray,
            names: Sequence[str] | None = None) -> RegressionModel:
    """Ordinary least squares with intercept, solved through a QR factorization.

    Constant predictor columns, and exact copies of an earlier column, are
    dropped and named in ``diagnostics``.
    ``r_squared`` is ``1 - RSS/TSS`` clipped to [0, 1]; a constant response
    gives 0 with a ``ZeroVariance`` diagnostic.

    :raises Underdetermined: ``n <= p + 1``
    :raises DegenerateDesign: the remaining design is rank deficient
    """
    y = np.asarray(y, dtype=float)
    X = np.asarray(X, dtype=float).reshape(len(y), -1)
    n, p = X.shape
    names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(p))
    if n <= p + 1:
        raise Underdetermined(f"{n} samples for {p} predictors")
    diagnostics = []
    keep = []
    for j in range(p):
        if np.ptp(X[:, j]) == 0:
            diagnostics.append(f"ConstantPredictor:{names[j]}")
        elif any(np.array_equal(X[:, j], X[:, i]) for i in keep):
            diagnostics.append(f"DuplicatePredictor:{names[j]}")
        else:
            keep.append(j)
    A = np.column_stack([np.ones(n), X[:, keep]])
    Q, R = np.linalg.qr(A)
    d = np.abs(np.diag(R))
    if d.min() <= _RANK_RTOL * d.max():
        raise DegenerateDesign("design matrix is rank deficient")
    beta = solve_triangular(R, Q.T @ y)
    resid = y - A @ beta
    rss = float(resid @ resid)
    tss = float(((y - y.mean()) ** 2).sum())
    if np.ptp(y) == 0:
        diagnostics.append("ZeroVariance")
        r2 = 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - rss / tss))
    return RegressionModel(tuple(names[j] for j in keep), tuple(float(b) for b in beta[1:]),
                           float(beta[0]), r2, n, tuple(diagnostics))


@dataclass(frozen=True)
class TieObservation:
    """One tie's regression record: its static ring, contact frequency and hashtag indices."""

    sample: str
    ring: int
    frequency: float
    stats: HashtagTieStats


def tie_observations(networks: Iterable[LayeredEgoNetwork], stats: Iterable[HashtagTieStats],
                     sample: str = "") -> list[TieObservation]:
    by_tie = {(s.ego_id, s.alter_id): s for s in stats}
    out = []
    for net in networks:
        for r, ring in enumerate(net.rings, start=1):
            for alter, freq in ring:
                s = by_tie.get((net.ego_id, alter))
                if s is not None:
                    out.append(TieObservation(sample, r, freq, s))
    return out


@dataclass
class Table3Report:
    """R² cells keyed by ``(sample, group, ring column)``; ``None`` marks an unfit cell."""

    samples: list[str]
    cells: dict[tuple[str, str, str], RegressionModel | None] = field(default_factory=dict)
    reasons: dict[tuple[str, str, str], str] = field(default_factory=dict)

    def r_squared(self, sample: str, group: str, ring: str) -> float | None:
        m = self.cells.get((sample, group, ring))
        return None if m is None else m.r_squared


def ring_regressions(observations: Iterable[TieObservation]) -> Table3Report:
    """Fit one multivariate model per sample, activation group and ring column."""
    observations = list(observations)
    samples = list(dict.fromkeys(o.sample for o in observations))
    report = Table3Report(samples)
    for sample in samples:
        for group, predictors in (("activated", ACTIVATED_PREDICTORS), ("not_activated", NOT_ACTIVATED_PREDICTORS)):
            flag = group == "activated"
            pool = [o for o in observations if o.sample == sample and o.stats.activated == flag]
            for col in RING_COLUMNS:
                sub = pool if col == "ALL" else [o for o in pool if ring_label(o.ring) == col]
                key = (sample, group, col)
                X = [[getattr(o.stats, p) for p in predictors] for o in sub]
                y = [o.frequency for o in sub]
                try:
                    report.cells[key] = ols_fit(X, y, predictors) if sub else None
                    if not sub:
                        report.reasons[key] = "Underdetermined"
                except (Underdetermined, DegenerateDesign) as exc:
                    report.cells[key] = None
                    report.reasons[key] = type(exc).__name__
    return report
