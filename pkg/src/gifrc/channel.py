"""Channel instances, unit conventions and interference-regime classification.

A :class:`Channel` is one Gaussian interference relay channel: two
source-destination pairs plus a relay, with amplitude gains and transmit
powers normalized so every receiver noise has unit variance.  Gains use the
transmitter-first index convention: ``h12`` is the gain from source 1 into
destination 2, ``h1R`` from source 1 into the relay, ``hR1`` from the relay
into destination 1.

Powers are stored linear; decibels are accepted only at the boundary
(:func:`from_db`, CLI flags, config files).

The weak-interference regime test asks whether genie correlation
coefficients (rho1..rho4) exist satisfying the two coupled inequalities

    rho1^2/(1+h21^2 P2)^2 + h1R^2 rho3^2/(1+h2R^2 P2)^2
        >= h12^2/(1-rho2^2) + h1R^2/(1-rho4^2)
    rho2^2/(1+h12^2 P1)^2 + h2R^2 rho4^2/(1+h1R^2 P1)^2
        >= h21^2/(1-rho1^2) + h2R^2/(1-rho3^2)

stated for channels normalized to unit direct gains.  When they hold, the
unbounded-relay-power sum bound computed in :mod:`gifrc.bounds` is the sum
capacity of that limit channel rather than merely an upper bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .search import Axis, SearchSpec, feasibility_scan

__all__ = [
    "Channel",
    "SymmetricChannel",
    "Regime",
    "RegimeTag",
    "db_to_linear",
    "from_db",
    "classify_strong",
    "symmetric_weak_threshold",
    "weak_feasibility_search",
    "classify",
]

RHO_MAX = 0.999  # guard for the 1/(1-rho^2) poles


@dataclass(frozen=True)
class Channel:
    """One channel instance: eight amplitude gains and three power budgets."""

    h11: float
    h21: float
    h12: float
    h22: float
    h1R: float
    h2R: float
    hR1: float
    hR2: float
    P1: float
    P2: float
    PR: float

    def __post_init__(self):
        for name in ("h11", "h21", "h12", "h22", "h1R", "h2R", "hR1", "hR2"):
            g = getattr(self, name)
            if not (math.isfinite(g) and g >= 0):
                raise ValueError(f"gain {name} must be finite and >= 0, got {g}")
        for name in ("P1", "P2", "PR"):
            p = getattr(self, name)
            if not (math.isfinite(p) and p >= 0):
                raise ValueError(f"power {name} must be finite and >= 0, got {p}")

    def gains(self) -> tuple[float, ...]:
        return (self.h11, self.h21, self.h12, self.h22,
                self.h1R, self.h2R, self.hR1, self.hR2)

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return (
            abs(self.h11 - self.h22) <= tol
            and abs(self.h12 - self.h21) <= tol
            and abs(self.h1R - self.h2R) <= tol
            and abs(self.hR1 - self.hR2) <= tol
            and abs(self.P1 - self.P2) <= tol
        )

    def normalized(self) -> "Channel":
        """Equivalent channel with unit direct gains (h11 = h22 = 1).

        Rescales each source's amplitude into its power (P_i' = h_ii^2 P_i)
        and divides the gains out of that source's other links.  The map is
        an invertible reparametrization: all mutual informations between
        inputs and outputs are unchanged.
        """
        if self.h11 <= 0 or self.h22 <= 0:
            raise ValueError("normalization requires positive direct gains")
        return Channel(
            1.0, self.h21 / self.h22, self.h12 / self.h11, 1.0,
            self.h1R / self.h11, self.h2R / self.h22, self.hR1, self.hR2,
            self.h11 ** 2 * self.P1, self.h22 ** 2 * self.P2, self.PR,
        )

    def replace(self, **kw) -> "Channel":
        d = {f: getattr(self, f) for f in (
            "h11", "h21", "h12", "h22", "h1R", "h2R", "hR1", "hR2", "P1", "P2", "PR")}
        d.update(kw)
        return Channel(**d)


@dataclass(frozen=True)
class SymmetricChannel:
    """Symmetric shorthand: direct hd, cross hc, source-relay hs, relay-destination hR."""

    hd: float
    hc: float
    hs: float
    hR: float
    P: float
    PR: float

    def expand(self) -> Channel:
        return Channel(
            self.hd, self.hc, self.hc, self.hd,
            self.hs, self.hs, self.hR, self.hR,
            self.P, self.P, self.PR,
        )


class RegimeTag(enum.Enum):
    STRONG = "StrongInterference"
    WEAK_POTENT_FEASIBLE = "WeakPotentFeasible"
    UNCLASSIFIED = "Unclassified"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    witness: tuple[float, float, float, float] | None = None


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def from_db(
    gains: Mapping[str, float],
    powers_db: Mapping[str, float],
    gains_in_db: bool = False,
) -> Channel:
    """Build a Channel from gain and power mappings, powers given in dB.

    Gains are taken linear unless gains_in_db is set.  Gain keys are the
    Channel field names; power keys are P1, P2, PR.
    """
    g = {k: (db_to_linear(v) if gains_in_db else v) for k, v in gains.items()}
    p = {k: db_to_linear(v) for k, v in powers_db.items()}
    return Channel(
        g["h11"], g["h21"], g["h12"], g["h22"],
        g["h1R"], g["h2R"], g["hR1"], g["hR2"],
        p["P1"], p["P2"], p["PR"],
    )


def classify_strong(ch: Channel) -> bool:
    """Strong interference: each source interferes at least as strongly as it speaks.

    Both inequalities are non-strict, so the boundary h12 = h11 counts as
    strong.
    """
    return ch.h12 >= ch.h11 and ch.h21 >= ch.h22


def symmetric_weak_threshold(hc: float, P: float) -> float | None:
    """Largest hs^2 for which the symmetric genie conditions are satisfiable.

    Closed form for symmetric channels with unit direct gains: restricting
    the four correlations to (rho, rho, rho_R, rho_R), both genie
    inequalities reduce to one condition whose left side is maximized at
    rho^2 = 1 - hc (1 + hc^2 P) and rho_R = 0, giving

        hs^2 <= (1 - 2 hc (1 + hc^2 P)) / (1 + hc^2 P)^2.

    Returns None when the numerator is nonpositive (no hs works).  The
    symmetry of the conditions makes the restricted search lossless, so
    this threshold is exact, not just sufficient.
    """
    if hc <= 0:
        raise ValueError("threshold defined for hc > 0")
    if P < 0:
        raise ValueError("P must be >= 0")
    a = 1.0 + hc * hc * P
    num = 1.0 - 2.0 * hc * a
    if num <= 0:
        return None
    return num / (a * a)


def _genie_slack(ch: Channel, rho: np.ndarray) -> np.ndarray:
    """Min slack of the two genie inequalities at rho rows (rho1..rho4).

    Expects a channel already normalized to h11 = h22 = 1.
    """
    r1, r2, r3, r4 = rho[:, 0], rho[:, 1], rho[:, 2], rho[:, 3]
    h21, h12, h1R, h2R = ch.h21, ch.h12, ch.h1R, ch.h2R
    P1, P2 = ch.P1, ch.P2
    lhs1 = r1**2 / (1 + h21**2 * P2) ** 2 + h1R**2 * r3**2 / (1 + h2R**2 * P2) ** 2
    rhs1 = h12**2 / (1 - r2**2) + h1R**2 / (1 - r4**2)
    lhs2 = r2**2 / (1 + h12**2 * P1) ** 2 + h2R**2 * r4**2 / (1 + h1R**2 * P1) ** 2
    rhs2 = h21**2 / (1 - r1**2) + h2R**2 / (1 - r3**2)
    return np.minimum(lhs1 - rhs1, lhs2 - rhs2)


def weak_feasibility_search(ch: Channel, grid_n: int = 64) -> Regime:
    """Search for genie correlations certifying the weak-interference regime.

    Symmetric channels use the exact closed-form threshold as a fast path
    (and its maximizing correlations as the witness); general channels scan
    (rho1..rho4) on a grid over [0, 0.999]^4 and refine the first satisfying
    point by local slack maximization.  Infeasible is a valid outcome and
    yields the Unclassified tag.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    if ch.h11 <= 0 or ch.h22 <= 0:
        return Regime(RegimeTag.UNCLASSIFIED)
    n = ch.normalized()
    if n.is_symmetric() and n.h21 > 0:
        thr = symmetric_weak_threshold(n.h21, n.P1)
        if thr is None or n.h1R ** 2 > thr:
            return Regime(RegimeTag.UNCLASSIFIED)
        t_star = min(max(1.0 - n.h21 * (1.0 + n.h21 ** 2 * n.P1), 0.0), RHO_MAX**2)
        r = math.sqrt(t_star)
        witness = (r, r, 0.0, 0.0)
        if float(_genie_slack(n, np.array([witness]))[0]) >= 0:
            return Regime(RegimeTag.WEAK_POTENT_FEASIBLE, witness)
        # fall through to the scan if clipping spoiled the closed-form point
    spec = SearchSpec(axes=tuple(Axis(0.0, RHO_MAX, grid_n) for _ in range(4)))
    witness = feasibility_scan(lambda pts: _genie_slack(n, pts), spec)
    if witness is None:
        return Regime(RegimeTag.UNCLASSIFIED)
    return Regime(RegimeTag.WEAK_POTENT_FEASIBLE, witness)


def classify(ch: Channel, grid_n: int = 64) -> Regime:
    """Full regime classification: strong first, then the weak genie search."""
    if classify_strong(ch):
        return Regime(RegimeTag.STRONG)
    return weak_feasibility_search(ch, grid_n=grid_n)
