"""Deterministic derivative-free grid maximization with local refinement.

All optimizing operations in this package share these helpers.  Objectives
are vectorized callables mapping an (N, d) array of points to (N,) values;
infeasible points return -inf.  Determinism: ties are resolved toward the
lexicographically smallest grid index, and refinement never replaces the
incumbent on an exact tie.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = ["Axis", "SearchSpec", "SearchResult", "grid_maximize", "feasibility_scan"]

_CHUNK_LIMIT = 1 << 21


@dataclass(frozen=True)
class Axis:
    """Closed search interval with a grid count; log axes grid in log10 space."""

    lo: float
    hi: float
    n: int
    log: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("grid count must be >= 2")
        if not self.hi >= self.lo:
            raise ValueError("axis upper bound below lower bound")
        if self.log and self.lo <= 0:
            raise ValueError("log axis requires positive bounds")

    def grid(self) -> np.ndarray:
        if self.log:
            return np.logspace(np.log10(self.lo), np.log10(self.hi), self.n)
        return np.linspace(self.lo, self.hi, self.n)

    def shrunk(self, center: float, shrink: float, n: int) -> "Axis":
        """Sub-axis of width shrink*(hi-lo) around center, clipped to the domain."""
        if self.log:
            lo0, hi0 = np.log10(self.lo), np.log10(self.hi)
            c = np.log10(center)
            half = 0.5 * shrink * (hi0 - lo0)
            lo = min(max(c - half, lo0), hi0)
            hi = max(min(c + half, hi0), lo)
            return Axis(10.0 ** lo, 10.0 ** max(hi, lo + 1e-300), n, log=True)
        half = 0.5 * shrink * (self.hi - self.lo)
        lo = min(max(center - half, self.lo), self.hi)
        hi = max(min(center + half, self.hi), lo)
        return Axis(lo, hi, n)


@dataclass(frozen=True)
class SearchSpec:
    axes: tuple[Axis, ...]
    rounds: int = 3
    shrink: float = 0.2
    refine_n: int = 11

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if not 0 < self.shrink < 1:
            raise ValueError("shrink factor must be in (0, 1)")


@dataclass(frozen=True)
class SearchResult:
    point: tuple[float, ...]
    value: float
    feasible: bool


def _product(grids: Sequence[np.ndarray]) -> np.ndarray:
    mesh = np.meshgrid(*grids, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _scan_best(objective, grids) -> tuple[np.ndarray | None, float]:
    """Best (point, value) over the grid product; first index wins ties."""
    counts = [len(g) for g in grids]
    total = int(np.prod(counts))
    best_val = -np.inf
    best_pt = None
    if total <= _CHUNK_LIMIT or len(grids) == 1:
        pts = _product(grids)
        vals = np.asarray(objective(pts), dtype=np.float64)
        k = int(np.argmax(vals))
        if np.isfinite(vals[k]):
            return pts[k], float(vals[k])
        return None, -np.inf
    sub = _product(grids[1:])
    for x0 in grids[0]:
        pts = np.concatenate([np.full((len(sub), 1), x0), sub], axis=1)
        vals = np.asarray(objective(pts), dtype=np.float64)
        k = int(np.argmax(vals))
        if np.isfinite(vals[k]) and vals[k] > best_val:
            best_val = float(vals[k])
            best_pt = pts[k]
    return best_pt, best_val


def _refine(objective, spec: SearchSpec, point: np.ndarray, value: float):
    axes = spec.axes
    for _ in range(spec.rounds):
        axes = tuple(
            ax.shrunk(c, spec.shrink, spec.refine_n) for ax, c in zip(axes, point)
        )
        pt, val = _scan_best(objective, [ax.grid() for ax in axes])
        if pt is not None and val > value:
            point, value = pt, val
    return point, value


def grid_maximize(objective: Callable[[np.ndarray], np.ndarray], spec: SearchSpec) -> SearchResult:
    """Exhaustive grid pass plus shrinking local refinements.

    The objective must be total: return -inf for infeasible points rather
    than raising.  An empty feasible set yields feasible=False.
    """
    point, value = _scan_best(objective, [ax.grid() for ax in spec.axes])
    if point is None:
        nan = tuple(float("nan") for _ in spec.axes)
        return SearchResult(nan, -np.inf, feasible=False)
    point, value = _refine(objective, spec, point, value)
    return SearchResult(tuple(float(x) for x in point), float(value), feasible=True)


def feasibility_scan(slack: Callable[[np.ndarray], np.ndarray], spec: SearchSpec):
    """First grid point (lexicographic order) with slack >= 0, refined.

    The refinement locally maximizes the slack around the first hit, so the
    returned witness satisfies the constraint at least as well as the raw
    grid point.  Returns None when no grid point satisfies the constraint.
    """
    grids = [ax.grid() for ax in spec.axes]
    counts = [len(g) for g in grids]
    total = int(np.prod(counts))
    hit = None
    if total <= _CHUNK_LIMIT or len(grids) == 1:
        pts = _product(grids)
        vals = np.asarray(slack(pts), dtype=np.float64)
        ok = np.flatnonzero(vals >= 0.0)
        if ok.size:
            hit = pts[ok[0]], float(vals[ok[0]])
    else:
        sub = _product(grids[1:])
        for x0 in grids[0]:
            pts = np.concatenate([np.full((len(sub), 1), x0), sub], axis=1)
            vals = np.asarray(slack(pts), dtype=np.float64)
            ok = np.flatnonzero(vals >= 0.0)
            if ok.size:
                hit = pts[ok[0]], float(vals[ok[0]])
                break
    if hit is None:
        return None
    point, value = _refine(slack, spec, hit[0], hit[1])
    return tuple(float(x) for x in point)
