"""Degree-matching odds-product model fitted by damped Newton-Raphson.

Each node i carries a logit ell_i and the model connects i and j with
probability sigmoid(ell_i + ell_j); edge odds multiply across endpoints.
Fitting finds logits whose expected degree vector matches a target degree
sequence.  The diagonal is excluded from predicted degrees and from the
Jacobian throughout: sampled graphs are simple, so a node cannot
contribute a self-loop to its own degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .probmatrix import ProbMatrix

__all__ = [
    "FitReport",
    "FitConvergenceError",
    "predicted_degrees",
    "degree_jacobian",
    "fit_odds_product",
    "EXCLUDED_LOGIT",
]

# Logit assigned to zero-degree nodes, which are removed before fitting and
# re-inserted afterwards.  Finite, but large enough that expit underflows to
# exactly 0.0 against any logit the fit can produce.
EXCLUDED_LOGIT = -1e9


@dataclass(frozen=True)
class FitReport:
    """Convergence trace of one Newton-Raphson degree fit."""

    iterations: int
    residual_history: list[float] = field(repr=False)
    converged: bool
    final_max_abs_error: float
    ridge_used: bool = False

    def final_residual(self) -> float:
        return self.residual_history[-1]


class FitConvergenceError(RuntimeError):
    """Newton iteration failed; carries the partial :class:`FitReport`."""

    def __init__(self, message: str, report: FitReport):
        super().__init__(message)
        self.report = report


def _prob_from_logits(logits: np.ndarray) -> np.ndarray:
    p = expit(np.add.outer(logits, logits))
    np.fill_diagonal(p, 0.0)
    return p


def predicted_degrees(logits: np.ndarray) -> np.ndarray:
    """Expected degree vector: row sums of the logit model, diagonal excluded."""
    logits = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(logits)):
        raise ValueError("logits must be finite")
    return _prob_from_logits(logits).sum(axis=1)


def degree_jacobian(p: ProbMatrix | np.ndarray) -> np.ndarray:
    """Jacobian of predicted degrees with respect to the logits.

    With B = P * (1 - P) (zero diagonal), J = B + diag(B @ 1).  Symmetric,
    and strictly diagonally dominant whenever every row of B has a positive
    off-diagonal entry.
    """
    mat = p.mat if isinstance(p, ProbMatrix) else np.asarray(p, dtype=np.float64)
    b = mat * (1.0 - mat)
    np.fill_diagonal(b, 0.0)
    return b + np.diag(b.sum(axis=1))


def _solve_step(j: np.ndarray, r: np.ndarray) -> tuple[np.ndarray, bool]:
    try:
        step = np.linalg.solve(j, r)
        if np.all(np.isfinite(step)):
            return step, False
    except np.linalg.LinAlgError:
        pass
    ridge = j + 1e-12 * np.eye(j.shape[0])
    return np.linalg.solve(ridge, r), True


def fit_odds_product(
    d: np.ndarray,
    eps: float = 1e-6,
    max_iter: int = 100,
    damped: bool = True,
) -> tuple[np.ndarray, ProbMatrix, FitReport]:
    """Fit logits so the model's expected degrees match ``d``.

    Newton-Raphson from ell = 0 with a backtracking step (halved on
    residual increase, at most 30 times) unless ``damped`` is False.
    Inside the loop the residual target is tightened to
    min(eps, 10 * eps / sqrt(n)) so the infinity-norm degree error is
    bounded by 10 * eps / sqrt(n) on success; convergence is declared
    whenever the 2-norm residual is <= eps.

    Zero-degree nodes are removed before fitting (their logits diverge)
    and re-inserted as zero rows; their returned logit is the finite
    sentinel :data:`EXCLUDED_LOGIT`.

    Returns (logits, P, report); raises :class:`FitConvergenceError` with
    the report attached when the target cannot be met, e.g. for
    non-graphical degree sequences.
    """
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 1 or d.size == 0:
        raise ValueError("degree sequence must be a nonempty vector")
    n = d.size
    if np.any(d < 0) or np.any(d > n - 1):
        raise ValueError("degrees must lie in [0, n-1]")
    if eps <= 0:
        raise ValueError("eps must be positive")

    active = np.flatnonzero(d > 0)
    logits = np.full(n, EXCLUDED_LOGIT, dtype=np.float64)

    if active.size == 0:
        report = FitReport(0, [0.0], True, 0.0)
        return logits, ProbMatrix.from_array(np.zeros((n, n))), report

    da = d[active]
    na = active.size
    ell = np.zeros(na)
    p = _prob_from_logits(ell)
    r = p.sum(axis=1) - da
    res = float(np.linalg.norm(r))
    history = [res]
    target = min(eps, 10.0 * eps / np.sqrt(n))
    ridge_used = False
    iterations = 0
    stalled = False

    while res > target and iterations < max_iter:
        b = p * (1.0 - p)
        np.fill_diagonal(b, 0.0)
        jac = b + np.diag(b.sum(axis=1))
        step, ridged = _solve_step(jac, r)
        ridge_used = ridge_used or ridged
        eta = 1.0
        improved = False
        for _ in range(31):
            ell_try = ell - eta * step
            p_try = _prob_from_logits(ell_try)
            r_try = p_try.sum(axis=1) - da
            res_try = float(np.linalg.norm(r_try))
            if res_try < res or not damped:
                improved = True
                break
            eta *= 0.5
        if not improved:
            stalled = True
            break
        ell, p, r, res = ell_try, p_try, r_try, res_try
        history.append(res)
        iterations += 1

    converged = res <= eps
    logits[active] = ell
    full = _prob_from_logits(logits)
    report = FitReport(
        iterations=iterations,
        residual_history=history,
        converged=converged,
        final_max_abs_error=float(np.abs(full.sum(axis=1) - d).max()),
        ridge_used=ridge_used,
    )
    if not converged:
        reason = "line search stalled" if stalled else f"max_iter={max_iter} reached"
        raise FitConvergenceError(
            f"degree fit did not converge ({reason}, residual {res:.3e} > {eps:g}); "
            "the target sequence may not be graphical",
            report,
        )
    return logits, ProbMatrix.from_array(full), report
