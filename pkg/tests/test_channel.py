"""Channel types, unit conversion, and regime classification."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gifrc.channel import (
    Channel,
    RegimeTag,
    SymmetricChannel,
    classify,
    classify_strong,
    db_to_linear,
    from_db,
    symmetric_weak_threshold,
    weak_feasibility_search,
)


def genie_slack(ch, rho):
    """Direct evaluation of the two genie inequalities (unit direct gains)."""
    r1, r2, r3, r4 = rho
    lhs1 = r1**2 / (1 + ch.h21**2 * ch.P2) ** 2 + ch.h1R**2 * r3**2 / (1 + ch.h2R**2 * ch.P2) ** 2
    rhs1 = ch.h12**2 / (1 - r2**2) + ch.h1R**2 / (1 - r4**2)
    lhs2 = r2**2 / (1 + ch.h12**2 * ch.P1) ** 2 + ch.h2R**2 * r4**2 / (1 + ch.h1R**2 * ch.P1) ** 2
    rhs2 = ch.h21**2 / (1 - r1**2) + ch.h2R**2 / (1 - r3**2)
    return min(lhs1 - rhs1, lhs2 - rhs2)


def test_db_conversion():
    assert db_to_linear(0) == pytest.approx(1.0)
    assert db_to_linear(10) == pytest.approx(10.0)
    assert db_to_linear(1) == pytest.approx(1.258925, abs=1e-6)


def test_from_db():
    gains = dict(h11=1, h21=2, h12=2, h22=1, h1R=0.5, h2R=0.5, hR1=1, hR2=1)
    ch = from_db(gains, {"P1": 0, "P2": 10, "PR": 1})
    assert ch.P1 == pytest.approx(1.0)
    assert ch.P2 == pytest.approx(10.0)
    assert ch.PR == pytest.approx(1.258925, abs=1e-6)
    assert ch.h21 == 2  # gains taken linear by default
    ch_db = from_db({k: 0.0 for k in gains}, {"P1": 0, "P2": 0, "PR": 0}, gains_in_db=True)
    assert ch_db.h11 == pytest.approx(1.0)


def test_channel_validation():
    with pytest.raises(ValueError):
        Channel(-1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        Channel(1, 1, 1, 1, 1, 1, 1, 1, -0.5, 1, 1)


def test_classify_strong_examples():
    strong = SymmetricChannel(1.0, 2.0, 2.0, 1.0, 1.0, 1.0).expand()
    assert classify_strong(strong)
    weakish = SymmetricChannel(1.0, math.sqrt(0.1), 1.0, 1.0, 1.0, 1.0).expand()
    assert not classify_strong(weakish)
    boundary = Channel(1.0, 1.0, 1.0, 1.0, 1, 1, 1, 1, 1, 1, 1)
    assert classify_strong(boundary)  # non-strict inequalities


def test_classify_strong_user_swap_invariant(rng):
    for _ in range(50):
        g = rng.uniform(0.05, 3.0, size=8)
        p = rng.uniform(0.1, 10, size=3)
        ch = Channel(*g, *p)
        swapped = Channel(
            ch.h22, ch.h12, ch.h21, ch.h11, ch.h2R, ch.h1R, ch.hR2, ch.hR1,
            ch.P2, ch.P1, ch.PR,
        )
        assert classify_strong(ch) == classify_strong(swapped)


def test_symmetric_weak_threshold_values():
    # exact closed form; the one-power-of-(1+hc^2 P) variant overstates the
    # satisfiable range (see the grid cross-check below)
    t = symmetric_weak_threshold(0.1, 1.0)
    a = 1.01
    assert t == pytest.approx((1 - 2 * 0.1 * a) / a**2, abs=1e-12)
    assert t == pytest.approx(0.7822762, abs=1e-6)
    # vanishing interference: threshold tends to 1 (source-relay links at
    # most unit-strength in the weak regime)
    assert symmetric_weak_threshold(1e-9, 1.0) == pytest.approx(1.0, abs=1e-6)
    # no satisfiable strength when interference is too strong
    assert symmetric_weak_threshold(0.5, db_to_linear(1)) is None


def test_symmetric_weak_threshold_monotone():
    hcs = np.linspace(0.02, 0.3, 15)
    ts = [symmetric_weak_threshold(h, 1.0) for h in hcs]
    assert all(a > b for a, b in zip(ts, ts[1:]))
    ps = np.linspace(0.1, 5.0, 15)
    ts = [symmetric_weak_threshold(0.1, p) for p in ps]
    assert all(a > b for a, b in zip(ts, ts[1:]))


def test_threshold_matches_grid_scan():
    """The closed form separates feasible from infeasible on either side."""
    hc, p = 0.1, 1.0
    t = symmetric_weak_threshold(hc, p)
    below = SymmetricChannel(1.0, hc, math.sqrt(0.98 * t), 1.0, p, 1.0).expand()
    above = SymmetricChannel(1.0, hc, math.sqrt(1.02 * t), 1.0, p, 1.0).expand()
    assert weak_feasibility_search(below, grid_n=8).tag is RegimeTag.WEAK_POTENT_FEASIBLE
    assert weak_feasibility_search(above, grid_n=8).tag is RegimeTag.UNCLASSIFIED
    # brute grid over the reduced symmetric conditions agrees on both sides
    grid = np.linspace(0, 0.999, 201)
    for ch, expect in ((below, True), (above, False)):
        best = max(
            genie_slack(ch, (r, r, rr, rr)) for r in grid for rr in (0.0, 0.3)
        )
        assert (best >= 0) == expect


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.02, 0.3),
    st.floats(0.05, 5.0),
    st.floats(0.05, 0.95),
)
def test_threshold_implies_search_feasible(hc, p, frac):
    t = symmetric_weak_threshold(hc, p)
    if t is None:
        return
    ch = SymmetricChannel(1.0, hc, math.sqrt(frac * t), 1.0, p, 1.0).expand()
    regime = weak_feasibility_search(ch, grid_n=8)
    assert regime.tag is RegimeTag.WEAK_POTENT_FEASIBLE
    assert genie_slack(ch, regime.witness) >= 0
    assert ch.h1R**2 <= 1.0 + 1e-12  # weak regime keeps source-relay links weak


def test_weak_search_vanishing_interference():
    ch = SymmetricChannel(1.0, 1e-6, 1e-3, 1.0, 1.0, 1.0).expand()
    assert weak_feasibility_search(ch, grid_n=8).tag is RegimeTag.WEAK_POTENT_FEASIBLE


def test_weak_search_asymmetric_scan():
    # slightly asymmetric channel in the feasible range: the 4-d scan runs
    # and its witness satisfies the inequalities
    ch = Channel(1.0, 0.1, 0.11, 1.0, 0.4, 0.38, 1.0, 1.0, 1.0, 1.1, 1.0)
    regime = weak_feasibility_search(ch, grid_n=24)
    assert regime.tag is RegimeTag.WEAK_POTENT_FEASIBLE
    assert genie_slack(ch.normalized(), regime.witness) >= 0
    hopeless = Channel(1.0, 0.9, 0.95, 1.0, 1.4, 1.5, 1.0, 1.0, 2.0, 2.0, 1.0)
    assert weak_feasibility_search(hopeless, grid_n=12).tag is RegimeTag.UNCLASSIFIED


def test_normalized_is_invariant_reparametrization():
    from gifrc.bounds import potent_strong_engine, potent_weak_sum

    ch = Channel(0.7, 0.2, 0.25, 1.4, 0.5, 0.6, 1.0, 0.8, 2.0, 1.5, 5.0)
    n = ch.normalized()
    assert n.h11 == 1.0 and n.h22 == 1.0
    v1, _ = potent_weak_sum(ch, grid_n=8)
    v2, _ = potent_weak_sum(n, grid_n=8)
    assert v1 == pytest.approx(v2, abs=1e-9)
    np.testing.assert_allclose(potent_strong_engine(ch), potent_strong_engine(n), atol=1e-9)


def test_classify_order():
    strong = SymmetricChannel(1.0, 2.0, 2.0, 1.0, 1.0, 1.0).expand()
    assert classify(strong).tag is RegimeTag.STRONG
    weak = SymmetricChannel(1.0, 0.1, math.sqrt(0.2), 1.0, 1.0, 1.0).expand()
    assert classify(weak).tag is RegimeTag.WEAK_POTENT_FEASIBLE
    neither = SymmetricChannel(1.0, 0.99, 2.0, 1.0, 1.0, 1.0).expand()
    assert classify(neither, grid_n=12).tag is RegimeTag.UNCLASSIFIED
