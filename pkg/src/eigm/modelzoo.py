"""Overlap-tunable baseline generators.

Four ways of turning one input graph into an edge-independent model whose
overlap is controlled by a single knob, all preserving the input's volume:

* linear: convex combination of the adjacency with a uniform matrix of the
  same volume (knob omega).
* ccop: convex combination of the adjacency with a degree-matching
  odds-product fit (knob omega).
* hdop: odds-product fit with all pairs touching the top-h degree nodes
  pinned to the adjacency (knob h).
* tsvd: rank-k truncated SVD of the adjacency, shifted and clipped to
  restore the volume (knob k).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, degrees
from .oddsproduct import fit_odds_product
from .probmatrix import ProbMatrix, convex_combine, to_dense

__all__ = [
    "ModelSpec",
    "linear_model",
    "ccop",
    "hdop",
    "tsvd_model",
    "fit_volume_shift",
    "build_model",
]

MODEL_KINDS = ("linear", "ccop", "hdop", "tsvd")


@dataclass(frozen=True)
class ModelSpec:
    """One generator plus its knob value and fit parameters."""

    kind: str
    knob: float
    eps: float = 1e-6
    max_iter: int = 100

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")

    def label(self) -> str:
        knob = int(self.knob) if self.kind in ("hdop", "tsvd") else self.knob
        return f"{self.kind}[{knob}]"


def linear_model(a: Graph, omega: float) -> ProbMatrix:
    """Uniform-volume base blended with the adjacency.

    Base entries are q = 2m / (n(n-1)) on every off-diagonal pair, which
    matches the graph volume exactly on a zero-diagonal matrix; the result
    is (1-omega) * base + omega * A, so volume(result) = m for every omega.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must be in [0, 1], got {omega}")
    n = a.n
    if n < 2:
        raise ValueError("linear model needs at least 2 nodes")
    q = 2.0 * a.m / (n * (n - 1.0))
    base = np.full((n, n), q)
    np.fill_diagonal(base, 0.0)
    return convex_combine(ProbMatrix.from_array(base), to_dense(a), omega)


def ccop(a: Graph, omega: float, eps: float = 1e-6, max_iter: int = 100) -> ProbMatrix:
    """Degree-matching odds-product fit blended with the adjacency.

    Expected degrees equal the input degrees for every omega, since both
    endpoints of the combination have them.
    """
    _, p, _ = fit_odds_product(degrees(a), eps=eps, max_iter=max_iter)
    return convex_combine(p, to_dense(a), omega)


def hdop(a: Graph, h: int, eps: float = 1e-6, max_iter: int = 100) -> ProbMatrix:
    """Pin every pair incident to the h highest-degree nodes, refit the rest.

    Ties in degree break toward the lower node id.  Pairs with either
    endpoint in the pinned set copy the adjacency; the complement is fitted
    to its induced-subgraph degrees, so every row still sums to the input
    degree and the volume is preserved for every h.
    """
    n = a.n
    if not 0 <= h <= n:
        raise ValueError(f"h must be in [0, n], got {h}")
    deg = degrees(a)
    # stable order: degree descending, then node id ascending
    order = np.lexsort((np.arange(n), -deg))
    pinned = np.zeros(n, dtype=bool)
    pinned[order[:h]] = True
    free = np.flatnonzero(~pinned)

    adj = to_dense(a).mat
    out = np.array(adj)
    if free.size > 0:
        sub = adj[np.ix_(free, free)]
        residual_deg = sub.sum(axis=1).astype(np.int64)
        _, p_sub, _ = fit_odds_product(residual_deg, eps=eps, max_iter=max_iter)
        out[np.ix_(free, free)] = p_sub.mat
    return ProbMatrix.from_array(out)


def fit_volume_shift(l: np.ndarray, target_volume: float, tol_rel: float = 1e-9) -> float:
    """Scalar shift s with sum of clip(L + s, 0, 1) over pairs = target.

    f(s) is continuous, nondecreasing, and piecewise linear with kinks at
    the clip boundaries, so a safeguarded Newton (slope = count of
    unclipped entries, bisection fallback) cannot cycle.  ``target`` may
    equal the maximum n(n-1)/2, attained as a boundary root.
    """
    l = np.asarray(l, dtype=np.float64)
    n = l.shape[0]
    iu = np.triu_indices(n, 1)
    vals = l[iu]
    npairs = vals.size
    if not 0.0 < target_volume <= npairs:
        raise ValueError(
            f"target volume {target_volume} not attainable in (0, {npairs}]"
        )

    def f(s: float) -> float:
        return float(np.clip(vals + s, 0.0, 1.0).sum())

    tol = tol_rel * target_volume
    s = 0.0
    if abs(f(s) - target_volume) <= tol:
        return s
    lo = float(-vals.max())          # f(lo) == 0
    hi = float(1.0 - vals.min())     # f(hi) == npairs
    for _ in range(200):
        err = f(s) - target_volume
        if abs(err) <= tol:
            return s
        if err > 0:
            hi = min(hi, s)
        else:
            lo = max(lo, s)
        shifted = vals + s
        slope = float(np.count_nonzero((shifted > 0.0) & (shifted < 1.0)))
        if slope > 0:
            s_new = s - err / slope
        else:
            s_new = 0.5 * (lo + hi)
        if not lo < s_new < hi:
            s_new = 0.5 * (lo + hi)
        s = s_new
    raise RuntimeError("volume shift search did not converge in 200 iterations")


def tsvd_model(a: Graph, k: int) -> ProbMatrix:
    """Rank-k SVD reconstruction of the adjacency, clipped and volume-matched.

    The reconstruction is symmetrized, its diagonal zeroed, then shifted by
    the :func:`fit_volume_shift` scalar and clipped to [0, 1] so the result
    has volume m within 1e-6 * m.
    """
    n = a.n
    if not 1 <= k <= n:
        raise ValueError(f"rank must be in [1, n], got {k}")
    if a.m == 0:
        raise ValueError("tsvd model undefined for an empty graph")
    adj = to_dense(a).mat
    u, s, vt = np.linalg.svd(adj)
    low = (u[:, :k] * s[:k]) @ vt[:k]
    low = 0.5 * (low + low.T)
    np.fill_diagonal(low, 0.0)
    shift = fit_volume_shift(low, float(a.m), tol_rel=1e-7)
    p = np.clip(low + shift, 0.0, 1.0)
    np.fill_diagonal(p, 0.0)
    return ProbMatrix.from_array(p)


def build_model(a: Graph, spec: ModelSpec) -> ProbMatrix:
    """Dispatch a :class:`ModelSpec` against an input graph."""
    if spec.kind == "linear":
        return linear_model(a, spec.knob)
    if spec.kind == "ccop":
        return ccop(a, spec.knob, eps=spec.eps, max_iter=spec.max_iter)
    if spec.kind == "hdop":
        return hdop(a, int(spec.knob), eps=spec.eps, max_iter=spec.max_iter)
    return tsvd_model(a, int(spec.knob))
