"""Sum-capacity upper bounds, the cut-set bound, and high-SNR slope estimates.

The tight bounds come from the channel with unbounded relay power, which is
equivalent to letting both destinations observe the relay's input Y_R
noiselessly (out-of-band).  Evaluations therefore run on the in-band model:
relay-to-destination gains removed, Y_R added to each destination's
observation set.  Any capacity statement for that limit channel upper-bounds
the finite-relay-power channel.

Closed forms are kept next to their engine evaluations and cross-checked in
the tests: the weak-interference sum bound (valid as capacity only when the
genie conditions of :mod:`gifrc.channel` hold) and the strong-interference
region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import Channel, Regime, classify_strong, weak_feasibility_search
from .schemes import _evaluator, optimize_scheme
from .search import Axis, SearchSpec, grid_maximize

__all__ = [
    "CutsetParams",
    "DofEstimate",
    "potent_weak_sum",
    "potent_weak_closed_form",
    "potent_strong_region",
    "potent_strong_engine",
    "potent_strong_sum",
    "cutset_region",
    "cutset_sum_max",
    "dof_estimate",
]


@dataclass(frozen=True)
class CutsetParams:
    """Correlation coefficients between the relay input and each source."""

    rhoR1: float
    rhoR2: float

    def __post_init__(self):
        if not (0.0 <= self.rhoR1 <= 1.0 and 0.0 <= self.rhoR2 <= 1.0):
            raise ValueError("correlation coefficients must lie in [0, 1]")
        if self.rhoR1 ** 2 + self.rhoR2 ** 2 > 1.0 + 1e-12:
            raise ValueError("rhoR1^2 + rhoR2^2 must not exceed 1")


@dataclass(frozen=True)
class DofEstimate:
    """High-SNR slope of the sum rate against 1/2 log2 P."""

    k: float
    slope: float
    p_grid_db: tuple[float, ...]
    rates: tuple[float, ...]


def _full_power_rows(ev) -> np.ndarray:
    return ev.var_rows(0.0, 0.0, 1.0)


def potent_weak_sum(
    ch: Channel, grid_n: int = 64, regime: Regime | None = None
) -> tuple[float, Regime]:
    """Sum bound I(X1; Y1 YR) + I(X2; Y2 YR) on the in-band model, plus regime.

    The value is the sum capacity of the unbounded-relay-power channel when
    the returned regime is WeakPotentFeasible; otherwise it is reported as
    an expression only (the genie argument does not certify it).  A known
    regime can be passed in to skip the feasibility search.
    """
    ev = _evaluator(ch, potent=True)
    rows = _full_power_rows(ev)
    value = float(ev.q(("X1",), ("Y1", "YR"))(rows)[0]) + float(
        ev.q(("X2",), ("Y2", "YR"))(rows)[0]
    )
    if regime is None:
        regime = weak_feasibility_search(ch, grid_n=grid_n)
    return value, regime


def potent_weak_closed_form(ch: Channel) -> float:
    """Closed form of the weak-interference sum bound (unit direct gains).

    General channels are first normalized to h11 = h22 = 1 (an invariant
    reparametrization).  The second numerator uses (h12 h2R - h1R)^2, the
    unit-direct-gain specialization of the cross-term pattern in the strong
    region; it matches the engine evaluation to full precision.
    """
    n = ch.normalized()
    t1 = 0.5 * math.log2(
        1.0
        + ((n.h21 * n.h1R - n.h2R) ** 2 * n.P1 * n.P2 + (1.0 + n.h1R ** 2) * n.P1)
        / ((n.h21 ** 2 + n.h2R ** 2) * n.P2 + 1.0)
    )
    t2 = 0.5 * math.log2(
        1.0
        + ((n.h12 * n.h2R - n.h1R) ** 2 * n.P1 * n.P2 + (1.0 + n.h2R ** 2) * n.P2)
        / ((n.h1R ** 2 + n.h12 ** 2) * n.P1 + 1.0)
    )
    return t1 + t2


def potent_strong_region(ch: Channel) -> tuple[float, float, float]:
    """Strong-interference capacity region of the unbounded-relay channel.

    Returns (R1max, R2max, Rsum).  This is the capacity region only when
    h12 >= h11 and h21 >= h22; callers report it as an expression otherwise.
    """
    r1 = 0.5 * math.log2(1.0 + (ch.h11 ** 2 + ch.h1R ** 2) * ch.P1)
    r2 = 0.5 * math.log2(1.0 + (ch.h22 ** 2 + ch.h2R ** 2) * ch.P2)
    t1 = (
        (ch.h21 * ch.h1R - ch.h11 * ch.h2R) ** 2 * ch.P1 * ch.P2
        + (ch.h1R ** 2 + ch.h11 ** 2) * ch.P1
        + (ch.h2R ** 2 + ch.h21 ** 2) * ch.P2
    )
    t2 = (
        (ch.h12 * ch.h2R - ch.h1R * ch.h22) ** 2 * ch.P1 * ch.P2
        + (ch.h1R ** 2 + ch.h12 ** 2) * ch.P1
        + (ch.h2R ** 2 + ch.h22 ** 2) * ch.P2
    )
    rsum = 0.5 * math.log2(1.0 + min(t1, t2))
    return r1, r2, rsum


def potent_strong_engine(ch: Channel) -> tuple[float, float, float]:
    """Engine evaluation of the strong region on the in-band model."""
    ev = _evaluator(ch, potent=True)
    rows = _full_power_rows(ev)
    r1 = float(ev.q(("X1",), ("Y1", "YR"), ("X2",))(rows)[0])
    r2 = float(ev.q(("X2",), ("Y2", "YR"), ("X1",))(rows)[0])
    rsum = min(
        float(ev.q(("X1", "X2"), ("Y1", "YR"))(rows)[0]),
        float(ev.q(("X1", "X2"), ("Y2", "YR"))(rows)[0]),
    )
    return r1, r2, rsum


def potent_strong_sum(ch: Channel) -> float:
    """Maximum R1 + R2 inside the strong-interference region."""
    r1, r2, rsum = potent_strong_region(ch)
    return min(rsum, r1 + r2)


def _cutset_coeffs(ch: Channel, rho1, rho2):
    """Coefficient batch and relay leftover variance for correlated relaying."""
    rho1 = np.atleast_1d(np.asarray(rho1, float))
    rho2 = np.atleast_1d(np.asarray(rho2, float))
    c1 = rho1 * math.sqrt(ch.PR / ch.P1) if ch.P1 > 0 else np.zeros_like(rho1)
    c2 = rho2 * math.sqrt(ch.PR / ch.P2) if ch.P2 > 0 else np.zeros_like(rho2)
    ev = _evaluator(ch)
    base = ev.table.coeffs
    n = len(rho1)
    coeffs = np.broadcast_to(base, (n,) + base.shape).copy()
    # source columns: U1,V1 = 0,1; U2,V2 = 2,3 — observable rows: XR=2, Y1=3, Y2=4
    coeffs[:, 2, 0] = coeffs[:, 2, 1] = c1
    coeffs[:, 2, 2] = coeffs[:, 2, 3] = c2
    coeffs[:, 3, 0] = coeffs[:, 3, 1] = ch.h11 + ch.hR1 * c1
    coeffs[:, 3, 2] = coeffs[:, 3, 3] = ch.h21 + ch.hR1 * c2
    coeffs[:, 4, 0] = coeffs[:, 4, 1] = ch.h12 + ch.hR2 * c1
    coeffs[:, 4, 2] = coeffs[:, 4, 3] = ch.h22 + ch.hR2 * c2
    v_own = np.maximum(ch.PR - c1 * c1 * ch.P1 - c2 * c2 * ch.P2, 0.0)
    return coeffs, v_own


def _cutset_rows(ev, v_own) -> np.ndarray:
    rows = ev.var_rows(np.zeros_like(v_own), 0.0, 1.0)
    rows[:, 4] = v_own
    return rows


def cutset_region(ch: Channel, cp: CutsetParams) -> tuple[float, float, float]:
    """Max-flow outer bound (R1, R2, Rsum) at one relay-correlation point."""
    ev = _evaluator(ch)
    coeffs, v_own = _cutset_coeffs(ch, cp.rhoR1, cp.rhoR2)
    rows = _cutset_rows(ev, v_own)
    q = ev.q
    r1 = min(
        float(q(("X1", "XR"), ("Y1",), ("X2",))(rows, coeffs)[0]),
        float(q(("X1",), ("Y1", "YR"), ("X2", "XR"))(rows, coeffs)[0]),
    )
    r2 = min(
        float(q(("X2", "XR"), ("Y2",), ("X1",))(rows, coeffs)[0]),
        float(q(("X2",), ("Y2", "YR"), ("X1", "XR"))(rows, coeffs)[0]),
    )
    rsum = min(
        float(q(("X1", "X2"), ("Y1", "Y2", "YR"), ("XR",))(rows, coeffs)[0]),
        float(q(("X1", "X2", "XR"), ("Y1", "Y2"))(rows, coeffs)[0]),
    )
    return r1, r2, rsum


def _cutset_sum_batch(ch: Channel, rho1, rho2) -> np.ndarray:
    ev = _evaluator(ch)
    coeffs, v_own = _cutset_coeffs(ch, rho1, rho2)
    rows = _cutset_rows(ev, v_own)
    sa = ev.q(("X1", "X2"), ("Y1", "Y2", "YR"), ("XR",))(rows, coeffs)
    sb = ev.q(("X1", "X2", "XR"), ("Y1", "Y2"))(rows, coeffs)
    return np.minimum(sa, sb)


def cutset_sum_max(ch: Channel, grid_n: int = 65) -> tuple[float, CutsetParams]:
    """Cut-set sum bound maximized over the correlation quarter disc.

    Grid over (rhoR1, rhoR2) in [0,1]^2 restricted to rhoR1^2+rhoR2^2 <= 1,
    with shrinking refinement; ties break toward smaller rhoR1 then rhoR2.
    """
    def objective(points: np.ndarray) -> np.ndarray:
        r1, r2 = points[:, 0], points[:, 1]
        ok = r1 * r1 + r2 * r2 <= 1.0 + 1e-12
        out = np.full(len(points), -np.inf)
        if np.any(ok):
            out[ok] = _cutset_sum_batch(ch, r1[ok], r2[ok])
        return out

    spec = SearchSpec(axes=(Axis(0.0, 1.0, grid_n), Axis(0.0, 1.0, grid_n)))
    res = grid_maximize(objective, spec)
    return res.value, CutsetParams(min(res.point[0], 1.0), min(res.point[1], 1.0))


def dof_estimate(
    template: Channel,
    k: float,
    p_db_hi: float,
    scheme: str = "gcf2",
) -> DofEstimate:
    """Estimated degrees of freedom with relay power tracking PR = P^k.

    Sets P1 = P2 = P (users with zero template power stay silent) and
    PR = P^k, evaluates the optimized scheme sum rate at p_db_hi - 10 and
    p_db_hi, and returns the slope against 1/2 log2 P.
    """
    if p_db_hi < 40:
        raise ValueError("p_db_hi must be at least 40 for a high-SNR slope")
    p_points = (p_db_hi - 10.0, p_db_hi)
    rates = []
    for p_db in p_points:
        p = 10.0 ** (p_db / 10.0)
        ch = template.replace(
            P1=p if template.P1 > 0 else 0.0,
            P2=p if template.P2 > 0 else 0.0,
            PR=p ** k,
        )
        rates.append(optimize_scheme(ch, scheme).value)
    dlog = 0.5 * (math.log2(10.0 ** (p_points[1] / 10.0)) - math.log2(10.0 ** (p_points[0] / 10.0)))
    slope = max((rates[1] - rates[0]) / dlog, 0.0)
    return DofEstimate(k=k, slope=slope, p_grid_db=p_points, rates=tuple(rates))
