"""Achievable rate regions for the interference relay channel.

All schemes here share one signal model: sources split their Gaussian
codebooks into common parts U_i (decoded by both destinations) and private
parts V_i, the relay transmits an independent Gaussian X_R (optionally
correlated with the sources for outer-bound evaluation), and the relay's
observation Y_R is quantized as Yc = Y_R + Zc with compression noise
variance sigma2.  Every rate expression is evaluated through the Gaussian
mutual-information engine rather than as a hand-expanded closed form.

Schemes:

* ``cf``   -- relay quantization with binning; destinations recover the
              compression index; source messages are rate-split (alpha, beta).
* ``gcf``  -- destinations decode only the bin index and jointly decode over
              the bin; variant 1 treats interference as noise, variant 2
              decodes it.
* ``ghf``  -- hash-and-forward: destinations keep a list of compression
              indices; valid when the bin rate is below the list threshold.
* ``nnc``  -- noisy network coding: no binning; the relay-link rate enters
              jointly with the channel observation.
* ``lattice`` -- compute-and-forward over nested lattices for symmetric
              channels; the relay decodes the modulo-sum of the codewords.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from .channel import Channel, SymmetricChannel
from .gaussian import GaussianSystem, ObservableTable
from .search import Axis, SearchSpec, grid_maximize

__all__ = [
    "CFParams",
    "RateResult",
    "build_system",
    "cf_feasible",
    "cf_rates",
    "optimize_cf",
    "gcf1_rates",
    "gcf2_rates",
    "ghf_rates",
    "nnc_rates",
    "lattice_caf_rate",
    "optimize_scheme",
    "evaluate_scheme",
    "SCHEME_NAMES",
    "EVAL_SCHEMES",
]

SOURCES = ("U1", "V1", "U2", "V2", "XtR", "Z1", "Z2", "ZR", "Zc")
OBSERVABLES = ("X1", "X2", "XR", "Y1", "Y2", "YR", "Yc", "U1", "U2")

FEAS_TOL = 1e-12
SIGMA_AXIS = Axis(1e-3, 1e3, 61, log=True)
ALPHA_AXIS = Axis(0.0, 1.0, 101)

CF_LABELS = (
    "R11<=a1", "R10+R11<=b1", "R11+R20<=c1", "R10+R11+R20<=d1",
    "R22<=a2", "R20+R22<=b2", "R22+R10<=c2", "R20+R22+R10<=d2",
)


@dataclass(frozen=True)
class CFParams:
    """Free parameters of a compress-and-forward style scheme.

    alpha and beta are the common-message power fractions of users 1 and 2
    (meaningful for the rate-splitting scheme only); sigma2 is the variance
    of the relay's compression noise.
    """

    alpha: float
    beta: float
    sigma2: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 and 0.0 <= self.beta <= 1.0):
            raise ValueError("alpha and beta must lie in [0, 1]")
        if not (self.sigma2 > 0 and math.isfinite(self.sigma2)):
            raise ValueError("sigma2 must be positive and finite")


@dataclass(frozen=True)
class RateResult:
    """A rate in bits/channel-use plus the achieving parameters and flags."""

    value: float
    params: CFParams | None = None
    feasible: bool = True
    binding: str = ""


def _coeff_matrix(ch: Channel, potent: bool = False, c1: float = 0.0, c2: float = 0.0):
    """Observable coefficient rows over SOURCES for one channel.

    ``potent`` drops the relay-to-destination terms (the destinations are
    assumed to observe Y_R directly instead); c1, c2 are the coefficients of
    X1, X2 inside X_R for correlated relay transmission.
    """
    r1 = 0.0 if potent else ch.hR1
    r2 = 0.0 if potent else ch.hR2
    rows = {
        "X1": {"U1": 1, "V1": 1},
        "X2": {"U2": 1, "V2": 1},
        "XR": {"U1": c1, "V1": c1, "U2": c2, "V2": c2, "XtR": 1},
        "Y1": {"U1": ch.h11 + r1 * c1, "V1": ch.h11 + r1 * c1,
               "U2": ch.h21 + r1 * c2, "V2": ch.h21 + r1 * c2,
               "XtR": r1, "Z1": 1},
        "Y2": {"U1": ch.h12 + r2 * c1, "V1": ch.h12 + r2 * c1,
               "U2": ch.h22 + r2 * c2, "V2": ch.h22 + r2 * c2,
               "XtR": r2, "Z2": 1},
        "YR": {"U1": ch.h1R, "V1": ch.h1R, "U2": ch.h2R, "V2": ch.h2R, "ZR": 1},
        "Yc": {"U1": ch.h1R, "V1": ch.h1R, "U2": ch.h2R, "V2": ch.h2R,
               "ZR": 1, "Zc": 1},
        "U1": {"U1": 1},
        "U2": {"U2": 1},
    }
    return [(name, rows[name]) for name in OBSERVABLES]


class Evaluator:
    """Compiled-query bundle for one channel (internal hot path)."""

    def __init__(self, ch: Channel, potent: bool = False):
        self.ch = ch
        self.potent = potent
        self.table = ObservableTable(SOURCES, _coeff_matrix(ch, potent))
        self._queries = {}

    def q(self, a, b, given=()):
        key = (a, b, given)
        cq = self._queries.get(key)
        if cq is None:
            cq = self.table.compile(a, b, given)
            self._queries[key] = cq
        return cq

    def var_rows(self, alpha, beta, sigma2) -> np.ndarray:
        """Source-variance rows for (possibly broadcast) parameter arrays."""
        alpha, beta, sigma2 = np.broadcast_arrays(
            np.asarray(alpha, float), np.asarray(beta, float), np.asarray(sigma2, float)
        )
        n = alpha.size
        rows = np.empty((n, len(SOURCES)))
        rows[:, 0] = alpha.ravel() * self.ch.P1
        rows[:, 1] = (1.0 - alpha.ravel()) * self.ch.P1
        rows[:, 2] = beta.ravel() * self.ch.P2
        rows[:, 3] = (1.0 - beta.ravel()) * self.ch.P2
        rows[:, 4] = self.ch.PR
        rows[:, 5:8] = 1.0
        rows[:, 8] = sigma2.ravel()
        return rows

    def r0(self) -> float:
        """Relay-link rate min_i I(XR; Y_i); independent of the scheme parameters."""
        v = self.var_rows(0.0, 0.0, 1.0)
        return min(float(self.q(("XR",), ("Y1",))(v)[0]),
                   float(self.q(("XR",), ("Y2",))(v)[0]))


@lru_cache(maxsize=128)
def _evaluator(ch: Channel, potent: bool = False) -> Evaluator:
    return Evaluator(ch, potent)


def build_system(
    ch: Channel,
    p: CFParams,
    split: bool = True,
    relay_corr: tuple[float, float] | None = None,
) -> GaussianSystem:
    """Full Gaussian system for a channel and scheme parameters.

    With ``relay_corr`` = (c1, c2) the relay signal is X_R = c1 X1 + c2 X2 +
    X~R; the leftover variance PR - c1^2 P1 - c2^2 P2 must be nonnegative.
    ``split=False`` ignores alpha/beta and puts all source power in the
    private components.
    """
    c1, c2 = relay_corr if relay_corr is not None else (0.0, 0.0)
    v_own = ch.PR - c1 * c1 * ch.P1 - c2 * c2 * ch.P2
    if v_own < -1e-9 * max(ch.PR, 1.0):
        raise ValueError("relay correlation exceeds the relay power budget")
    alpha, beta = (p.alpha, p.beta) if split else (0.0, 0.0)
    sources = [
        ("U1", alpha * ch.P1), ("V1", (1 - alpha) * ch.P1),
        ("U2", beta * ch.P2), ("V2", (1 - beta) * ch.P2),
        ("XtR", max(v_own, 0.0)),
        ("Z1", 1.0), ("Z2", 1.0), ("ZR", 1.0), ("Zc", p.sigma2),
    ]
    return GaussianSystem(sources, _coeff_matrix(ch, c1=c1, c2=c2))


# ---------------------------------------------------------------------------
# compress-and-forward with rate splitting
# ---------------------------------------------------------------------------

def _cf_feasible_mask(ev: Evaluator, sigma2s: np.ndarray) -> np.ndarray:
    """Wyner-Ziv support condition: min_i I(XR;Y_i) >= max_i I(YR;Yc|XR,Y_i)."""
    v = ev.var_rows(0.0, 0.0, np.asarray(sigma2s, float))
    rhs1 = ev.q(("YR",), ("Yc",), ("XR", "Y1"))(v)
    rhs2 = ev.q(("YR",), ("Yc",), ("XR", "Y2"))(v)
    return ev.r0() + FEAS_TOL >= np.maximum(rhs1, rhs2)


def cf_feasible(ch: Channel, p: CFParams) -> bool:
    """True when the compression index is decodable at both destinations."""
    return bool(_cf_feasible_mask(_evaluator(ch), np.array([p.sigma2]))[0])


def _cf_terms(ev: Evaluator, rows: np.ndarray):
    """The eight rate-splitting constraint terms (a_i, b_i, c_i, d_i)."""
    out = []
    for i, j in ((1, 2), (2, 1)):
        yi, ui, uj, xi = f"Y{i}", f"U{i}", f"U{j}", f"X{i}"
        out.append((
            ev.q((xi,), ("Yc", yi), (ui, uj, "XR"))(rows),
            ev.q((xi,), ("Yc", yi), (uj, "XR"))(rows),
            ev.q((uj, xi), ("Yc", yi), (ui, "XR"))(rows),
            ev.q((uj, xi), ("Yc", yi), ("XR",))(rows),
        ))
    return out


def _cf_sum_from_terms(t1, t2):
    """Max R1+R2 over the rate-splitting polytope.

    The polytope over (R10, R11, R20, R22) defined by the eight constraints
    admits exactly four binding sum-rate covers; the minimum of those is the
    linear-program optimum (cross-checked against an LP solver in the tests).
    """
    a1, b1, c1, d1 = t1
    a2, b2, c2, d2 = t2
    s = np.minimum(np.minimum(b1 + b2, c1 + c2), np.minimum(d1 + a2, a1 + d2))
    return np.maximum(s, 0.0)


def _cf_sum_batch(ev: Evaluator, alphas, betas, sigma2s) -> np.ndarray:
    rows = ev.var_rows(alphas, betas, sigma2s)
    t1, t2 = _cf_terms(ev, rows)
    return _cf_sum_from_terms(t1, t2)


def _cf_corner(t1, t2):
    """Corner of the rate-splitting polytope: max sum, then max R1.

    Returns (r1, r2, binding labels).  Solved as two small LPs over
    (R10, R11, R20, R22).
    """
    a1, b1, c1, d1 = t1
    a2, b2, c2, d2 = t2
    a_ub = np.array([
        [0, 1, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [1, 1, 1, 0],
        [0, 0, 0, 1], [0, 0, 1, 1], [1, 0, 0, 1], [1, 0, 1, 1],
    ], dtype=float)
    b_ub = np.array([a1, b1, c1, d1, a2, b2, c2, d2])
    bounds = [(0, None)] * 4
    first = linprog(c=[-1.0, -1.0, -1.0, -1.0], A_ub=a_ub, b_ub=b_ub,
                    bounds=bounds, method="highs")
    if not first.success:
        return 0.0, 0.0, "infeasible polytope"
    total = -first.fun
    second = linprog(c=[-1.0, -1.0, 0.0, 0.0], A_ub=a_ub, b_ub=b_ub,
                     A_eq=[[1.0, 1.0, 1.0, 1.0]], b_eq=[total],
                     bounds=bounds, method="highs")
    x = second.x if second.success else first.x
    r1 = float(x[0] + x[1])
    r2 = float(x[2] + x[3])
    slack = b_ub - a_ub @ x
    binding = ";".join(lbl for lbl, s in zip(CF_LABELS, slack) if s < 1e-9)
    return r1, r2, binding


def cf_rates(ch: Channel, p: CFParams) -> tuple[RateResult, RateResult]:
    """Best (R1, R2) split of the rate-splitting polytope corner.

    The reported corner maximizes R1+R2 and, among sum-equal corners, R1.
    Parameters failing the compression-support condition report zero rates
    with feasible=False.
    """
    ev = _evaluator(ch)
    if not cf_feasible(ch, p):
        bad = RateResult(0.0, p, feasible=False, binding="compression unsupported")
        return bad, bad
    rows = ev.var_rows(p.alpha, p.beta, p.sigma2)
    t1, t2 = _cf_terms(ev, rows)
    r1, r2, binding = _cf_corner([float(x[0]) for x in t1], [float(x[0]) for x in t2])
    return (
        RateResult(r1, p, True, binding),
        RateResult(r2, p, True, binding),
    )


def optimize_cf(
    ch: Channel,
    mode: str = "split",
    spec: SearchSpec | None = None,
) -> RateResult:
    """Maximize the rate-splitting sum rate over (alpha, beta, sigma2).

    mode='noise' pins alpha = beta = 0 (interference treated as noise),
    mode='decode' pins alpha = beta = 1 (all power on common messages),
    mode='split' searches both fractions.  Ties break toward smaller alpha,
    then beta, then sigma2.
    """
    if mode not in ("noise", "decode", "split"):
        raise ValueError(f"unknown mode {mode!r}")
    ev = _evaluator(ch)
    pinned = {"noise": 0.0, "decode": 1.0}.get(mode)

    def objective(points: np.ndarray) -> np.ndarray:
        sig = points[:, -1]
        uniq, inverse = np.unique(sig, return_inverse=True)
        feas = _cf_feasible_mask(ev, uniq)[inverse]
        out = np.full(len(points), -np.inf)
        if np.any(feas):
            if pinned is None:
                al, be = points[feas, 0], points[feas, 1]
            else:
                al = be = np.full(int(np.sum(feas)), pinned)
            out[feas] = _cf_sum_batch(ev, al, be, sig[feas])
        return out

    if spec is None:
        axes = (ALPHA_AXIS, ALPHA_AXIS, SIGMA_AXIS) if pinned is None else (SIGMA_AXIS,)
        spec = SearchSpec(axes=axes)
    res = grid_maximize(objective, spec)
    if not res.feasible:
        return RateResult(0.0, None, feasible=False, binding="compression unsupported")
    if pinned is None:
        params = CFParams(res.point[0], res.point[1], res.point[2])
    else:
        params = CFParams(pinned, pinned, res.point[0])
    r1, r2 = cf_rates(ch, params)
    return RateResult(res.value, params, True, r1.binding)


# ---------------------------------------------------------------------------
# generalized compress-and-forward
# ---------------------------------------------------------------------------

def _min_term(first, second, labels=("joint", "relay-link")):
    """max(0, min(first, second)) plus the label of the binding term."""
    val = min(first, second)
    if val <= 0:
        return 0.0, "zero"
    return val, labels[0] if first <= second else labels[1]


def _gcf1_pieces(ev: Evaluator, sigma2s) -> tuple[np.ndarray, np.ndarray]:
    rows = ev.var_rows(0.0, 0.0, np.asarray(sigma2s, float))
    r0 = ev.r0()
    firsts, seconds = [], []
    for i in (1, 2):
        yi, xi = f"Y{i}", f"X{i}"
        firsts.append(ev.q((xi,), ("Yc", yi), ("XR",))(rows))
        pen = ev.q(("YR",), ("Yc",), (xi, "XR", yi))(rows)
        seconds.append(ev.q((xi,), (yi,), ("XR",))(rows) + r0 - pen)
    return np.array(firsts), np.array(seconds)


def gcf1_rates(ch: Channel, sigma2: float) -> tuple[RateResult, RateResult]:
    """Per-user rates when destinations treat interference as noise."""
    f, s = _gcf1_pieces(_evaluator(ch), [sigma2])
    p = CFParams(0.0, 0.0, sigma2)
    out = []
    for i in (0, 1):
        val, lbl = _min_term(float(f[i, 0]), float(s[i, 0]))
        out.append(RateResult(val, p, True, lbl))
    return tuple(out)


def _gcf1_sum_batch(ev: Evaluator, sigma2s) -> np.ndarray:
    f, s = _gcf1_pieces(ev, sigma2s)
    per_user = np.maximum(np.minimum(f, s), 0.0)
    return per_user.sum(axis=0)


def _gcf2_pieces(ev: Evaluator, sigma2s):
    rows = ev.var_rows(0.0, 0.0, np.asarray(sigma2s, float))
    r0 = ev.r0()
    user_first, user_second, sum_first, sum_second = [], [], [], []
    for i, j in ((1, 2), (2, 1)):
        yi, xi, xj = f"Y{i}", f"X{i}", f"X{j}"
        pen = ev.q(("YR",), ("Yc",), ("X1", "X2", "XR", yi))(rows)
        user_first.append(ev.q((xi,), ("Yc", yi), (xj, "XR"))(rows))
        user_second.append(ev.q((xi,), (yi,), (xj, "XR"))(rows) + r0 - pen)
        sum_first.append(ev.q(("X1", "X2"), ("Yc", yi), ("XR",))(rows))
        sum_second.append(ev.q(("X1", "X2"), (yi,), ("XR",))(rows) + r0 - pen)
    return (np.array(user_first), np.array(user_second),
            np.array(sum_first), np.array(sum_second))


def _region_rates(a1: float, a2: float, s: float, p, labels) -> tuple[RateResult, ...]:
    """Operating point of {R1<=a1, R2<=a2, R1+R2<=s} maximizing R1+R2 then R1."""
    total = min(a1 + a2, s)
    r1 = min(a1, total)
    r2 = total - r1
    binding = labels[0] if a1 + a2 <= s else labels[1]
    return (
        RateResult(r1, p, True, binding),
        RateResult(r2, p, True, binding),
        RateResult(total, p, True, binding),
    )


def gcf2_rates(ch: Channel, sigma2: float) -> tuple[RateResult, RateResult, RateResult]:
    """Rates when destinations decode the interference; returns (R1, R2, Rsum).

    The reported operating point maximizes R1+R2 within the region (ties
    toward larger R1).
    """
    uf, us, sf, ss = _gcf2_pieces(_evaluator(ch), [sigma2])
    p = CFParams(0.0, 0.0, sigma2)
    a = np.maximum(np.minimum(uf, us), 0.0)[:, 0]
    s = float(np.maximum(np.minimum(sf, ss), 0.0).min(axis=0)[0])
    return _region_rates(float(a[0]), float(a[1]), s, p, ("per-user", "sum"))


def _gcf2_sum_batch(ev: Evaluator, sigma2s) -> np.ndarray:
    uf, us, sf, ss = _gcf2_pieces(ev, sigma2s)
    a = np.maximum(np.minimum(uf, us), 0.0)
    s = np.maximum(np.minimum(sf, ss), 0.0).min(axis=0)
    return np.minimum(a.sum(axis=0), s)


# ---------------------------------------------------------------------------
# generalized hash-and-forward
# ---------------------------------------------------------------------------

def _ghf_feasible_mask(ev: Evaluator, sigma2s) -> np.ndarray:
    """List-decoding regime: bin rate below min_i I(YR;Yc|XR,Y_i)."""
    rows = ev.var_rows(0.0, 0.0, np.asarray(sigma2s, float))
    lim1 = ev.q(("YR",), ("Yc",), ("XR", "Y1"))(rows)
    lim2 = ev.q(("YR",), ("Yc",), ("XR", "Y2"))(rows)
    return ev.r0() <= np.minimum(lim1, lim2) + FEAS_TOL


def ghf_rates(ch: Channel, sigma2: float, mode: str = "decode"):
    """Hash-and-forward rates; sigma2 outside the list regime is infeasible.

    decode mode returns (R1, R2, Rsum); noise mode returns (R1, R2) with no
    sum-rate constraint.
    """
    if mode not in ("noise", "decode"):
        raise ValueError(f"unknown mode {mode!r}")
    ev = _evaluator(ch)
    p = CFParams(0.0, 0.0, sigma2)
    if not bool(_ghf_feasible_mask(ev, [sigma2])[0]):
        bad = RateResult(0.0, p, feasible=False, binding="outside list regime")
        return (bad, bad, bad) if mode == "decode" else (bad, bad)
    if mode == "decode":
        _, us, _, ss = _gcf2_pieces(ev, [sigma2])
        a = np.maximum(us, 0.0)[:, 0]
        s = float(np.maximum(ss, 0.0).min(axis=0)[0])
        return _region_rates(float(a[0]), float(a[1]), s, p, ("per-user", "sum"))
    _, seconds = _gcf1_pieces(ev, [sigma2])
    return tuple(
        RateResult(float(max(s[0], 0.0)), p, True, "relay-link" if s[0] > 0 else "zero")
        for s in seconds
    )


def _ghf_sum_batch(ev: Evaluator, sigma2s, mode: str) -> np.ndarray:
    feas = _ghf_feasible_mask(ev, sigma2s)
    if mode == "decode":
        _, us, _, ss = _gcf2_pieces(ev, sigma2s)
        a = np.maximum(us, 0.0)
        s = np.maximum(ss, 0.0).min(axis=0)
        out = np.minimum(a.sum(axis=0), s)
    else:
        _, seconds = _gcf1_pieces(ev, sigma2s)
        out = np.maximum(seconds, 0.0).sum(axis=0)
    out[~feas] = -np.inf
    return out


# ---------------------------------------------------------------------------
# noisy network coding
# ---------------------------------------------------------------------------

def _nnc_pieces(ev: Evaluator, sigma2s, mode: str):
    """GCF pieces with the relay-link term folded into the channel observation.

    Each bin-rate term I(.;Y_i|.,XR) + R0 - pen is replaced by
    I(., XR; Y_i | .) - pen; no binning support condition applies.
    """
    rows = ev.var_rows(0.0, 0.0, np.asarray(sigma2s, float))
    user_first, user_second, sum_first, sum_second = [], [], [], []
    for i, j in ((1, 2), (2, 1)):
        yi, xi, xj = f"Y{i}", f"X{i}", f"X{j}"
        if mode == "noise":
            pen = ev.q(("YR",), ("Yc",), (xi, "XR", yi))(rows)
            user_first.append(ev.q((xi,), ("Yc", yi), ("XR",))(rows))
            user_second.append(ev.q((xi, "XR"), (yi,))(rows) - pen)
        else:
            pen = ev.q(("YR",), ("Yc",), ("X1", "X2", "XR", yi))(rows)
            user_first.append(ev.q((xi,), ("Yc", yi), (xj, "XR"))(rows))
            user_second.append(ev.q((xi, "XR"), (yi,), (xj,))(rows) - pen)
            sum_first.append(ev.q(("X1", "X2"), ("Yc", yi), ("XR",))(rows))
            sum_second.append(ev.q(("X1", "X2", "XR"), (yi,))(rows) - pen)
    return (np.array(user_first), np.array(user_second),
            np.array(sum_first) if sum_first else None,
            np.array(sum_second) if sum_second else None)


def nnc_rates(ch: Channel, sigma2: float, mode: str = "decode"):
    """Noisy-network-coding rates (no binning feasibility constraint).

    decode mode returns (R1, R2, Rsum); noise mode returns (R1, R2).  The
    per-user expressions apply the same substitution as the sum rate; this
    is the natural reading of the scheme and is flagged in reports.
    """
    if mode not in ("noise", "decode"):
        raise ValueError(f"unknown mode {mode!r}")
    ev = _evaluator(ch)
    p = CFParams(0.0, 0.0, sigma2)
    uf, us, sf, ss = _nnc_pieces(ev, [sigma2], mode)
    if mode == "noise":
        out = []
        for i in (0, 1):
            val, lbl = _min_term(float(uf[i, 0]), float(us[i, 0]))
            out.append(RateResult(val, p, True, lbl))
        return tuple(out)
    a = np.maximum(np.minimum(uf, us), 0.0)[:, 0]
    s = float(np.maximum(np.minimum(sf, ss), 0.0).min(axis=0)[0])
    return _region_rates(float(a[0]), float(a[1]), s, p, ("per-user", "sum"))


def _nnc_sum_batch(ev: Evaluator, sigma2s, mode: str) -> np.ndarray:
    uf, us, sf, ss = _nnc_pieces(ev, sigma2s, mode)
    per_user = np.maximum(np.minimum(uf, us), 0.0)
    if mode == "noise":
        return per_user.sum(axis=0)
    s = np.maximum(np.minimum(sf, ss), 0.0).min(axis=0)
    return np.minimum(per_user.sum(axis=0), s)


# ---------------------------------------------------------------------------
# lattice compute-and-forward
# ---------------------------------------------------------------------------

def lattice_caf_rate(sc: SymmetricChannel) -> RateResult:
    """Symmetric rate of nested-lattice compute-and-forward relaying.

    The relay decodes the modulo-lattice sum of the two codewords (possible
    when the fourth term is positive) and forwards it; each destination
    treats its direct signal as noise and decodes interference plus relay
    signal as a multiple-access pair.
    """
    denom = 1.0 + sc.hd ** 2 * sc.P
    terms = (
        0.5 * math.log2(1.0 + sc.hc ** 2 * sc.P / denom),
        0.5 * math.log2(1.0 + sc.hR ** 2 * sc.PR / denom),
        0.25 * math.log2(1.0 + (sc.hc ** 2 * sc.P + sc.hR ** 2 * sc.PR) / denom),
        max(0.0, 0.5 * math.log2(0.5 + sc.hs ** 2 * sc.P)),
    )
    labels = ("interference-link", "relay-link", "mac-sum", "lattice-decoding")
    k = int(np.argmin(terms))
    return RateResult(max(terms[k], 0.0), None, True, labels[k])


# ---------------------------------------------------------------------------
# sigma2 optimization front-end
# ---------------------------------------------------------------------------

SCHEME_NAMES = ("cf", "gcf1", "gcf2", "ghf", "nnc")

EVAL_SCHEMES = (
    "cf_noise", "cf_decode", "cf_split", "gcf1", "gcf2",
    "ghf_noise", "ghf_decode", "nnc_noise", "nnc_decode", "lattice",
)


def evaluate_scheme(ch: Channel, name: str, spec: SearchSpec | None = None) -> RateResult:
    """Optimized sum rate of a named scheme variant (CLI / sweep entry point).

    Names: cf_{noise,decode,split}, gcf1, gcf2, ghf_{noise,decode},
    nnc_{noise,decode}, lattice.  The lattice row reports the sum rate
    (twice the symmetric per-user rate) and requires a symmetric channel.
    """
    if name == "lattice":
        if not ch.is_symmetric():
            return RateResult(0.0, None, False, "requires symmetric channel")
        sym = SymmetricChannel(ch.h11, ch.h21, ch.h1R, ch.hR1, ch.P1, ch.PR)
        per_user = lattice_caf_rate(sym)
        return RateResult(2.0 * per_user.value, None, per_user.feasible, per_user.binding)
    if name not in EVAL_SCHEMES:
        raise ValueError(f"unknown scheme {name!r}; known: {EVAL_SCHEMES}")
    base, _, mode = name.partition("_")
    return optimize_scheme(ch, base, mode or None, spec=spec)


def _sum_batch(ev: Evaluator, scheme: str, mode: str | None, sigma2s) -> np.ndarray:
    if scheme == "gcf1":
        return _gcf1_sum_batch(ev, sigma2s)
    if scheme == "gcf2":
        return _gcf2_sum_batch(ev, sigma2s)
    if scheme == "ghf":
        return _ghf_sum_batch(ev, sigma2s, mode or "decode")
    if scheme == "nnc":
        return _nnc_sum_batch(ev, sigma2s, mode or "decode")
    raise ValueError(f"unknown scheme {scheme!r}")


def optimize_scheme(
    ch: Channel,
    scheme: str,
    mode: str | None = None,
    spec: SearchSpec | None = None,
) -> RateResult:
    """Maximize a scheme's sum rate over the compression noise variance.

    ``cf`` delegates to :func:`optimize_cf` (mode noise/decode/split); the
    other schemes search sigma2 on a log grid with shrinking refinement.
    Ties break toward smaller sigma2.
    """
    if scheme == "cf":
        return optimize_cf(ch, mode or "split", spec=spec)
    if scheme == "lattice":
        raise ValueError("lattice rate has no free parameters; call lattice_caf_rate")
    ev = _evaluator(ch)
    if spec is None:
        spec = SearchSpec(axes=(SIGMA_AXIS,))

    def objective(points: np.ndarray) -> np.ndarray:
        return _sum_batch(ev, scheme, mode, points[:, 0])

    res = grid_maximize(objective, spec)
    if not res.feasible:
        return RateResult(0.0, None, feasible=False, binding="no feasible compression noise")
    params = CFParams(0.0, 0.0, res.point[0])
    return RateResult(res.value, params, True, "")
