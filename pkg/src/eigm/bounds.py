"""Machine checks of the subgraph-density bounds for edge-independent models.

The quantity overlap * volume equals ||P||_F^2 / 2 for zero-diagonal P, and
three bounds follow from it:

* triangles:  E[triangles] <= (sqrt(2)/3) * (Ov * V)^{3/2}
* k-cycles:   E[k-cycles]  <= (2^{k/2} / 2k) * (Ov * V)^{k/2}
* clustering: E[C] = O(Ov^{3/2} * n / V^{1/2}) whenever V >= 2n

Each check returns a :class:`BoundReport` comparing an exact expectation
(dense trace or combinatorial enumeration) or a Monte-Carlo estimate
against the bound.  The uniform (Erdos-Renyi) matrix makes all three
asymptotically tight, which the er_* helpers exercise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .probmatrix import (
    ProbMatrix,
    ZeroVolumeError,
    expected_kcycles_exact,
    expected_kcycles_trace,
    expected_triangles,
    overlap,
    sample,
    volume,
)
from .rng import derive_seed
from .stats import global_clustering

__all__ = [
    "BoundReport",
    "check_triangle_bound",
    "check_kcycle_bound",
    "check_cc_tightness",
    "er_construction",
    "er_triangle_tightness_ratio",
]

_EXACT_SLACK = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one bound comparison."""

    theorem: str
    mode: str  # exact-trace | brute-force | monte-carlo
    lhs: float
    rhs: float
    holds: bool
    std_err: float = float("nan")

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs

    def csv_row(self) -> str:
        fields = [
            self.theorem,
            self.mode,
            repr(float(self.lhs)),
            repr(float(self.rhs)),
            repr(float(self.ratio)),
            str(self.holds),
            "nan" if math.isnan(self.std_err) else repr(float(self.std_err)),
        ]
        return ",".join(fields)


def _ov_times_vol(p: ProbMatrix) -> float:
    if volume(p) <= 0.0:
        raise ZeroVolumeError("bound undefined: volume is zero")
    return float((p.mat**2).sum() / 2.0)


def check_triangle_bound(p: ProbMatrix) -> BoundReport:
    """Exact expected triangles against (sqrt(2)/3) * (Ov * V)^{3/2}."""
    lhs = expected_triangles(p)
    rhs = (math.sqrt(2.0) / 3.0) * _ov_times_vol(p) ** 1.5
    return BoundReport(
        theorem="triangles",
        mode="exact-trace",
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs * (1.0 + _EXACT_SLACK),
    )


def check_kcycle_bound(p: ProbMatrix, k: int) -> BoundReport:
    """Expected k-cycles against (2^{k/2} / 2k) * (Ov * V)^{k/2}.

    Small instances (n <= 14, k <= 6) use the combinatorial oracle for the
    left side; larger ones fall back to the trace value, which dominates
    the true expectation, so the comparison stays valid.
    """
    if not 3 <= k <= 6:
        raise ValueError("k must be in [3, 6]")
    rhs = (2.0 ** (k / 2.0) / (2.0 * k)) * _ov_times_vol(p) ** (k / 2.0)
    if p.n <= 14:
        lhs = expected_kcycles_exact(p, k)
        mode = "brute-force"
    else:
        lhs = expected_kcycles_trace(p, k)
        mode = "exact-trace"
    return BoundReport(
        theorem=f"{k}-cycles",
        mode=mode,
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs * (1.0 + _EXACT_SLACK),
    )


def check_cc_tightness(
    n: int,
    gamma: float,
    samples: int,
    seed: int,
    tol: float | None = None,
) -> BoundReport:
    """Monte-Carlo clustering of uniform models against its predicted level.

    Samples from the uniform matrix with entry gamma and compares the mean
    global clustering coefficient to gamma, the level the tightness
    analysis predicts; ``holds`` is keyed to |mean - gamma| <= tol.  The
    reported rhs is the clustering bound expression gamma^{3/2} * n /
    V^{1/2} with its unspecified constant taken as 1, for reference only.
    The construction requires volume >= 2n.
    """
    if samples < 3:
        raise ValueError("need at least 3 samples")
    p = er_construction(n, gamma)
    vol = volume(p)
    if vol < 2.0 * n:
        raise ValueError(
            f"hypothesis violated: volume {vol:.1f} < 2n = {2 * n} "
            "(raise gamma or n)"
        )
    if tol is None:
        tol = max(0.02, 0.06 * gamma)
    vals = [
        global_clustering(sample(p, derive_seed(seed, "cc-tightness", t)))
        for t in range(samples)
    ]
    mean = float(np.mean(vals))
    std_err = float(np.std(vals, ddof=1) / math.sqrt(samples))
    rhs = gamma**1.5 * n / math.sqrt(vol)
    return BoundReport(
        theorem="clustering",
        mode="monte-carlo",
        lhs=mean,
        rhs=rhs,
        holds=abs(mean - gamma) <= tol,
        std_err=std_err,
    )


def er_construction(n: int, gamma: float) -> ProbMatrix:
    """Uniform matrix with every off-diagonal entry gamma.

    Has overlap exactly gamma and volume gamma * n(n-1)/2; the tight
    example for all three bounds.
    """
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    a = np.full((n, n), gamma)
    np.fill_diagonal(a, 0.0)
    return ProbMatrix.from_array(a)


def er_triangle_tightness_ratio(n: int) -> float:
    """Closed-form lhs/rhs for the triangle bound on the uniform matrix.

    gamma cancels: C(n,3) / ((sqrt(2)/3) * C(n,2)^{3/2}).  Approaches 1
    from below as n grows, witnessing tightness.
    """
    pairs = n * (n - 1) / 2.0
    triples = n * (n - 1) * (n - 2) / 6.0
    return triples / ((math.sqrt(2.0) / 3.0) * pairs**1.5)
