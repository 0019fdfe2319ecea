"""Finite metric spaces, epsilon-nets, covering numbers, entropy profiles.

Covering numbers are computed two ways: an exact minimum cover by
branch-and-bound set cover (n <= 24) and a farthest-point greedy net that
upper-bounds it at any size.  The entropy profile tabulates the covering
number between consecutive pairwise distances, where it is constant because
ball centers are restricted to points of the space.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AsymmetryError,
    NegativeDistanceError,
    NonzeroDiagonalError,
    SizeLimitExceeded,
    TriangleViolation,
)

EXACT_COVER_MAX_N = 24
_TRIANGLE_RTOL = 1e-9


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Validated point set with an n x n distance matrix."""

    dist: np.ndarray

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def diameter(self) -> float:
        return float(self.dist.max())

    def scaled(self, lam: float) -> "FiniteMetricSpace":
        """Space with all distances multiplied by lam > 0."""
        if lam <= 0:
            raise ValueError("scale factor must be positive")
        return FiniteMetricSpace(dist=self.dist * lam)


def validate_metric(raw) -> FiniteMetricSpace:
    """Validate a raw square matrix as a finite (pseudo)metric.

    Checks nonnegativity, zero diagonal, symmetry and the triangle
    inequality (to relative tolerance 1e-9).  Raises instead of repairing.
    """
    d = np.asarray(raw, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("distance matrix has non-finite entries")
    n = d.shape[0]
    if n == 0:
        raise ValueError("empty metric space")
    neg = np.argwhere(d < 0)
    if len(neg):
        i, j = neg[0]
        raise NegativeDistanceError(f"d[{i},{j}] = {d[i, j]} < 0")
    bad_diag = np.nonzero(np.diag(d) != 0)[0]
    if len(bad_diag):
        i = bad_diag[0]
        raise NonzeroDiagonalError(f"d[{i},{i}] = {d[i, i]} != 0")
    asym = np.argwhere(d != d.T)
    if len(asym):
        i, j = asym[0]
        raise AsymmetryError(f"d[{i},{j}] = {d[i, j]} but d[{j},{i}] = {d[j, i]}")
    # Triangle inequality with one witness reported.  via[i,k] is the best
    # two-hop distance min_j d[i,j] + d[j,k].
    via = np.min(d[:, :, None] + d[None, :, :], axis=1)
    slack = d - via
    tol = _TRIANGLE_RTOL * np.maximum(d, via)
    viol = np.argwhere(slack > tol)
    if len(viol):
        i, k = viol[0]
        j = int(np.argmin(d[i] + d[:, k]))
        raise TriangleViolation(int(i), int(j), int(k), float(d[i, k]),
                                float(d[i, j] + d[j, k]))
    d = d.copy()
    d.flags.writeable = False
    return FiniteMetricSpace(dist=d)


def load_distance_csv(path) -> FiniteMetricSpace:
    """Read a distance matrix from CSV (one row per point) and validate it."""
    raw = np.loadtxt(path, delimiter=",", ndmin=2)
    return validate_metric(raw)


def greedy_net(space: FiniteMetricSpace, eps: float) -> list[int]:
    """Farthest-point net: an eps-cover whose centers are pairwise > eps apart.

    Starts at index 0, repeatedly adds the point farthest from the chosen
    centers (lowest index on ties) while that distance exceeds eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    centers = [0]
    mindist = space.dist[0].copy()
    while True:
        j = int(np.argmax(mindist))
        if mindist[j] <= eps:
            return centers
        centers.append(j)
        np.minimum(mindist, space.dist[j], out=mindist)


def _ball_masks(space: FiniteMetricSpace, eps: float) -> list[int]:
    """Bitmask of each closed eps-ball, one per candidate center."""
    within = space.dist <= eps
    masks = []
    for i in range(space.n):
        m = 0
        for j in np.nonzero(within[i])[0]:
            m |= 1 << int(j)
        masks.append(m)
    return masks


def _exact_cover_size(masks: list[int], n: int, incumbent: int, lower: int) -> int:
    """Minimum number of masks covering {0..n-1} by branch-and-bound.

    `incumbent` is a known-feasible size (greedy), `lower` a known lower
    bound; the search can stop as soon as they meet.
    """
    full = (1 << n) - 1
    # Deduplicate and drop dominated balls (subsets of another ball).
    uniq = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    keep: list[int] = []
    for m in uniq:
        if not any(m | k == k for k in keep):
            keep.append(m)
    best = incumbent

    def search(uncovered: int, used: int) -> None:
        nonlocal best
        if uncovered == 0:
            best = min(best, used)
            return
        if used + 1 >= best or best <= lower:
            return
        # Most-constrained uncovered point.
        cands_by_point = None
        pick = -1
        fewest = None
        u = uncovered
        while u:
            p = (u & -u).bit_length() - 1
            u &= u - 1
            cands = [m for m in keep if (m >> p) & 1]
            if fewest is None or len(cands) < fewest:
                fewest = len(cands)
                pick = p
                cands_by_point = cands
        max_gain = max(bin(m & uncovered).count("1") for m in keep)
        need = used + -(-bin(uncovered).count("1") // max_gain)
        if need >= best:
            return
        for m in sorted(cands_by_point,
                        key=lambda m: -bin(m & uncovered).count("1")):
            search(uncovered & ~m, used + 1)

    search(full, 0)
    return best


def covering_number(space: FiniteMetricSpace, eps: float, mode: str = "exact") -> int:
    """Smallest (exact) or greedy number of closed eps-balls covering the space.

    Exact mode solves the set-cover problem over balls centered at points of
    the space; greedy mode returns the farthest-point net size, an upper
    bound on the exact value.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if mode == "greedy":
        return len(greedy_net(space, eps))
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if space.n > EXACT_COVER_MAX_N:
        raise SizeLimitExceeded(
            f"exact covering number limited to n <= {EXACT_COVER_MAX_N}, got {space.n}")
    greedy_size = len(greedy_net(space, eps))
    if greedy_size == 1:
        return 1
    masks = _ball_masks(space, eps)
    return _exact_cover_size(masks, space.n, incumbent=greedy_size, lower=1)


@dataclass(frozen=True)
class EntropyProfile:
    """Covering number as a right-continuous step function of eps.

    `counts[j]` is the covering number on [breakpoints[j], breakpoints[j+1]),
    with the last interval extending to infinity (count 1).  Below the first
    breakpoint the covering number is `base_count`.
    """

    breakpoints: np.ndarray
    counts: np.ndarray
    mode: str
    base_count: int
    _bp_list: list = field(repr=False, default=None)

    def covering_number_at(self, eps: float) -> int:
        if eps <= 0:
            raise ValueError("eps must be positive")
        j = bisect_right(self._bp_list, eps) - 1
        if j < 0:
            return self.base_count
        return int(self.counts[j])

    def left_limit_counts(self) -> np.ndarray:
        """N(b_j^-) at each breakpoint: the count on the interval just below."""
        if len(self.breakpoints) == 0:
            return np.array([], dtype=int)
        return np.concatenate([[self.base_count], self.counts[:-1]]).astype(int)


def entropy_profile(space: FiniteMetricSpace, mode: str = "exact") -> EntropyProfile:
    """Tabulate eps -> N(T,d,eps) over the distinct positive pairwise distances."""
    iu = np.triu_indices(space.n, k=1)
    pos = np.unique(space.dist[iu])
    pos = pos[pos > 0]
    if len(pos) == 0:
        # Single point, or all points at distance zero: one ball suffices.
        return EntropyProfile(breakpoints=np.array([]), counts=np.array([], dtype=int),
                              mode=mode, base_count=1, _bp_list=[])
    if mode == "exact" and space.n > EXACT_COVER_MAX_N:
        raise SizeLimitExceeded(
            f"exact profile limited to n <= {EXACT_COVER_MAX_N}, got {space.n}")
    counts = np.empty(len(pos), dtype=int)
    counts[-1] = 1
    prev = 1
    # Walk intervals from coarse to fine; counts are nonincreasing in eps,
    # so the previous count lower-bounds the next and often closes the
    # branch-and-bound immediately (greedy meeting the bound is optimal).
    for j in range(len(pos) - 2, -1, -1):
        mid = 0.5 * (pos[j] + pos[j + 1])
        if mode == "exact":
            greedy_size = len(greedy_net(space, mid))
            if greedy_size <= prev:
                counts[j] = prev
            else:
                masks = _ball_masks(space, mid)
                counts[j] = _exact_cover_size(masks, space.n,
                                              incumbent=greedy_size, lower=prev)
        else:
            counts[j] = covering_number(space, mid, mode)
        prev = counts[j]
    base = covering_number(space, pos[0] / 2, mode)
    return EntropyProfile(breakpoints=pos, counts=counts, mode=mode,
                          base_count=int(base), _bp_list=list(pos))
