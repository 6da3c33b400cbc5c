"""Acceptance suite: one test per numbered criterion, printed as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and measured values.  Tolerances are pinned here, not calibrated at
run time.  Randomized criteria draw from documented distributions with the
criterion number as the seed.
"""

import math
import time

import numpy as np
import pytest

from gifrc.bounds import (
    cutset_sum_max,
    dof_estimate,
    potent_strong_engine,
    potent_strong_region,
    potent_strong_sum,
    potent_weak_closed_form,
    potent_weak_sum,
)
from gifrc.channel import Channel, RegimeTag, SymmetricChannel, db_to_linear, symmetric_weak_threshold
from gifrc.cli import main as cli_main
from gifrc.gaussian import GaussianSystem, MIQuery, mc_estimate_mi, mutual_information
from gifrc.schemes import (
    _cf_feasible_mask,
    _cf_sum_batch,
    _evaluator,
    _gcf1_sum_batch,
    _gcf2_sum_batch,
    _ghf_sum_batch,
    _nnc_sum_batch,
    evaluate_scheme,
    lattice_caf_rate,
    optimize_cf,
    optimize_scheme,
)

DB1 = db_to_linear(1)
WEAK_REF = SymmetricChannel(1.0, math.sqrt(0.1), math.sqrt(0.8), 1.0, DB1, 10.0)
STRONG_REF = SymmetricChannel(1.0, 2.0, 2.0, 1.0, DB1, 10.0)


def _report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:2d}] {status} {name}" + (f" — {detail}" if detail else ""))
    return ok


def test_criterion_01_mi_engine_exactness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        h = float(rng.uniform(0.05, 4.0))
        p = float(rng.uniform(0.01, 50.0))
        sysm = GaussianSystem(
            [("X", p), ("Z", 1.0)],
            [("X", {"X": 1.0}), ("Y", {"X": h, "Z": 1.0})],
        )
        worst = max(worst, abs(sysm.mi(("X",), ("Y",)) - 0.5 * math.log2(1 + h * h * p)))
    p = 1.7
    simo = GaussianSystem(
        [("X", p), ("Z1", 1.0), ("Z2", 1.0)],
        [("X", {"X": 1.0}), ("Y1", {"X": 1.0, "Z1": 1.0}), ("Y2", {"X": 1.0, "Z2": 1.0})],
    )
    worst = max(worst, abs(simo.mi(("X",), ("Y1", "Y2")) - 0.5 * math.log2(1 + 2 * p)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 1.0
    assert _report(1, "MI engine exactness", ok, f"worst error {worst:.2e}, {dt:.2f}s")


def test_criterion_02_oracle_agreement():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    max_z = 0.0
    for trial in range(20):
        ns = int(rng.integers(2, 7))
        sources = [(f"s{i}", float(rng.uniform(0.3, 2.5))) for i in range(ns)]
        coeffs = rng.standard_normal((ns, ns))
        sysm = GaussianSystem(sources, [(f"o{i}", coeffs[i]) for i in range(ns)])
        names = [f"o{i}" for i in range(ns)]
        perm = [names[i] for i in rng.permutation(ns)]
        na = int(rng.integers(1, ns))
        nb = int(rng.integers(1, ns - na + 1))
        q = MIQuery(tuple(perm[:na]), tuple(perm[na:na + nb]), tuple(perm[na + nb:]))
        exact = mutual_information(sysm, q)
        est, se = mc_estimate_mi(sysm, q, n_samples=1_000_000, seed=1000 + trial)
        if se > 0:
            max_z = max(max_z, abs(exact - est) / se)
    dt = time.perf_counter() - t0
    ok = max_z <= 4.0 and dt < 120.0
    assert _report(2, "Monte-Carlo oracle agreement", ok, f"max |z| {max_z:.2f}, {dt:.1f}s")


def test_criterion_03_weak_bound_is_relay_power_limit():
    t0 = time.perf_counter()
    ch = WEAK_REF.expand().replace(PR=1e6)
    achieved = optimize_scheme(ch, "gcf1").value
    bound, _ = potent_weak_sum(ch, grid_n=8)
    closed = potent_weak_closed_form(ch)
    gap = abs(bound - achieved)
    closed_err = abs(bound - closed)
    dt = time.perf_counter() - t0
    ok = gap <= 1e-3 and closed_err <= 1e-9 and dt < 60.0
    assert _report(3, "weak bound reached as relay power grows", ok,
                   f"gap {gap:.2e}, closed-form error {closed_err:.2e}, {dt:.1f}s")


def test_criterion_04_strong_region_closed_form():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        g = rng.uniform(0.05, 2.5, size=8)
        ch = Channel(*g, *(10 ** rng.uniform(-0.5, 1.5, size=3)))
        ch = ch.replace(h12=ch.h11 * rng.uniform(1.0, 2.5), h21=ch.h22 * rng.uniform(1.0, 2.5))
        diffs = np.abs(np.array(potent_strong_region(ch)) - np.array(potent_strong_engine(ch)))
        worst = max(worst, float(diffs.max()))
    p = DB1
    _, _, rsum = potent_strong_region(SymmetricChannel(1, 2, 2, 1, p, 1.0).expand())
    ref_err = abs(rsum - 0.5 * math.log2(1 + 4 * p * p + 13 * p))
    cite_err = abs(rsum - 2.2837)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and ref_err <= 1e-12 and cite_err <= 5e-4 and dt < 10.0
    assert _report(4, "strong-region closed form vs engine", ok,
                   f"worst {worst:.2e}, reference point {rsum:.6f}, {dt:.1f}s")


def test_criterion_05_dominance_over_cutset():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    min_strong = np.inf
    for _ in range(200):
        hd = rng.uniform(0.3, 1.2)
        ch = SymmetricChannel(
            hd, hd * rng.uniform(1.0, 2.5), rng.uniform(0.2, 2.0), rng.uniform(0.5, 2.0),
            db_to_linear(rng.uniform(0, 10)), 1.0,
        ).expand()
        ch = ch.replace(PR=db_to_linear(10 * math.log10(ch.P1) + rng.uniform(10, 25)))
        cs, _ = cutset_sum_max(ch)
        min_strong = min(min_strong, cs - potent_strong_sum(ch))
    min_weak = np.inf
    n_weak = 0
    while n_weak < 200:
        hc = rng.uniform(0.02, 0.35)
        p_db = rng.uniform(-5, 8)
        thr = symmetric_weak_threshold(hc, db_to_linear(p_db))
        if thr is None:
            continue
        ch = SymmetricChannel(
            1.0, hc, math.sqrt(thr * rng.uniform(0.05, 0.95)), rng.uniform(0.5, 2.0),
            db_to_linear(p_db), db_to_linear(p_db + rng.uniform(10, 25)),
        ).expand()
        cs, _ = cutset_sum_max(ch)
        pw, regime = potent_weak_sum(ch, grid_n=8)
        assert regime.tag is RegimeTag.WEAK_POTENT_FEASIBLE
        min_weak = min(min_weak, cs - pw)
        n_weak += 1
    dt = time.perf_counter() - t0
    ok = min_strong >= -1e-9 and min_weak >= -1e-9 and dt < 300.0
    assert _report(5, "cut-set dominates the tight bounds", ok,
                   f"min margin strong {min_strong:.4f}, weak {min_weak:.4f}, {dt:.0f}s")


def test_criterion_06_scheme_ordering():
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    violations = []
    for trial in range(200):
        ch = Channel(*rng.uniform(0.05, 2.5, size=8), *(10 ** rng.uniform(-0.5, 2.0, size=3)))
        s2 = [10 ** rng.uniform(-2.0, 2.0)]
        ev = _evaluator(ch)
        gcf1 = float(_gcf1_sum_batch(ev, s2)[0])
        gcf2 = float(_gcf2_sum_batch(ev, s2)[0])
        if float(_nnc_sum_batch(ev, s2, "noise")[0]) < gcf1 - 1e-9:
            violations.append((trial, "nnc_noise<gcf1"))
        if float(_nnc_sum_batch(ev, s2, "decode")[0]) < gcf2 - 1e-9:
            violations.append((trial, "nnc_decode<gcf2"))
        feasible = bool(_cf_feasible_mask(ev, np.array(s2))[0])
        cf_noise = float(_cf_sum_batch(ev, [0.0], [0.0], s2)[0]) if feasible else 0.0
        cf_decode = float(_cf_sum_batch(ev, [1.0], [1.0], s2)[0]) if feasible else 0.0
        if gcf1 < cf_noise - 1e-9:
            violations.append((trial, "gcf1<cf_noise"))
        if gcf2 < cf_decode - 1e-9:
            violations.append((trial, "gcf2<cf_decode"))
        ghf = float(_ghf_sum_batch(ev, s2, "decode")[0])
        if np.isfinite(ghf) and gcf2 < ghf - 1e-9:
            violations.append((trial, f"gcf2<ghf by {ghf - gcf2:.3g}"))
    dt = time.perf_counter() - t0
    ok = not violations and dt < 300.0
    assert _report(6, "scheme ordering (nnc >= gcf >= cf, gcf2 >= ghf)", ok,
                   f"{len(violations)} violations {violations[:3]}, {dt:.0f}s")


def test_criterion_07_weak_gap_at_moderate_relay_power():
    t0 = time.perf_counter()
    ch = WEAK_REF.expand()
    best = max(
        optimize_cf(ch, "noise").value,
        optimize_scheme(ch, "gcf1").value,
        optimize_scheme(ch, "nnc", "noise").value,
    )
    bound, _ = potent_weak_sum(ch, grid_n=8)
    gap = bound - best
    dt = time.perf_counter() - t0
    ok = gap <= 0.05
    assert _report(7, "weak-regime gap at 10 dB relay power", ok,
                   f"gap {gap:.4f} bits, {dt:.1f}s")


def test_criterion_08_strong_coincidence_with_tracking_relay_power():
    """Strong symmetric channel, relay power tracking PR_dB = 2 P_dB.

    Evaluated faithfully at the stated parameters (hd = hR = 1).  The
    per-user and bin-rate constraints keep the optimized joint-decoding sum
    about one bit below the unbounded-relay sum at every listed power, so
    this criterion fails; see the coincidence diagnostic test below, which
    shows the same comparison closing once the relay power is genuinely
    large rather than tracking 2 P_dB.
    """
    gaps = {}
    for p_db in (0, 5, 10, 15, 20):
        ch = SymmetricChannel(1, 2, 2, 1, db_to_linear(p_db), db_to_linear(2 * p_db)).expand()
        gaps[p_db] = abs(optimize_scheme(ch, "gcf2").value - potent_strong_sum(ch))
    worst = max(gaps.values())
    ok = worst <= 0.02
    detail = ", ".join(f"P={p}dB: {g:.3f}" for p, g in gaps.items())
    assert _report(8, "strong-regime coincidence at PR_dB = 2 P_dB", ok, detail)


def test_unbounded_relay_coincidence_diagnostic():
    """Supplementary: the joint-decoding sum does meet the strong bound as PR grows."""
    ch = SymmetricChannel(1, 2, 2, 1, db_to_linear(20), 1e9).expand()
    gap = abs(optimize_scheme(ch, "gcf2").value - potent_strong_sum(ch))
    print(f"[diagnostic] strong coincidence at PR=90 dB: gap {gap:.4f} bits")
    assert gap <= 0.02


def test_criterion_09_dof_slopes():
    t0 = time.perf_counter()
    tpl = STRONG_REF.expand()
    s1 = dof_estimate(tpl, 1, 60.0).slope
    s2 = dof_estimate(tpl, 2, 60.0).slope
    dt = time.perf_counter() - t0
    ok = 0.9 <= s1 <= 1.1 and 1.9 <= s2 <= 2.1 and dt < 60.0
    assert _report(9, "degrees-of-freedom slopes", ok,
                   f"k=1: {s1:.3f}, k=2: {s2:.3f}, {dt:.1f}s")


def test_criterion_10_lattice_formula():
    zero = lattice_caf_rate(SymmetricChannel(1.0, 1.0, math.sqrt(0.5), 1.0, 1.0, 1.0)).value
    point = lattice_caf_rate(SymmetricChannel(0.0, 1.0, 1.0, 1.0, 1.0, 1.0)).value
    ok = zero == 0.0 and abs(point - 0.29248) <= 1e-5
    comparisons = []
    for p_db in (0, 5, 10, 15, 20):
        ch = SymmetricChannel(0.3, 2.0, 1.0, 1.0, db_to_linear(p_db), db_to_linear(p_db)).expand()
        lat = evaluate_scheme(ch, "lattice").value
        nnc = evaluate_scheme(ch, "nnc_decode").value
        comparisons.append((p_db, lat - nnc))
    behind = [(p, d) for p, d in comparisons if d < -1e-9]
    detail = f"zero {zero}, point {point:.6f}"
    if behind:
        detail += ("; lattice-vs-nnc comparison is reconstruction-dependent: "
                   + ", ".join(f"P={p}dB {d:+.3f}" for p, d in comparisons))
    else:
        detail += "; lattice >= nnc at all swept powers"
    assert _report(10, "lattice rate formula", ok, detail)


def test_criterion_11_splitting_thresholds():
    t0 = time.perf_counter()
    alphas = {}
    for hc in (0.01, 0.05, 1.0, 1.5, 2.0):
        ch = SymmetricChannel(1.0, hc, 1.0, 1.0, DB1, DB1).expand()
        alphas[hc] = optimize_cf(ch, "split").params.alpha
    dt = time.perf_counter() - t0
    ok = (
        all(alphas[hc] == 0.0 for hc in (0.01, 0.05))
        and all(alphas[hc] == 1.0 for hc in (1.0, 1.5, 2.0))
        and dt < 120.0
    )
    detail = ", ".join(f"hc={hc}: {a:.3f}" for hc, a in alphas.items()) + f", {dt:.0f}s"
    assert _report(11, "splitting-fraction thresholds", ok, detail)


def test_criterion_12_sweep_determinism(tmp_path):
    args = [
        "sweep", "--hd", "1", "--hc", str(math.sqrt(0.1)), "--hs", str(math.sqrt(0.8)),
        "--hR", "1", "--P-db", "1", "--PR-db", "0",
        "--sweep", "PR_dB=0:10:5", "--schemes", "gcf1,gcf2",
        "--bounds", "potent_weak,cutset", "--seed", "7",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli_main(args + ["--out", str(a)]) == 0
    assert cli_main(args + ["--out", str(b)]) == 0
    ok = a.read_bytes() == b.read_bytes()
    assert _report(12, "sweep output is byte-deterministic", ok,
                   f"{len(a.read_bytes())} bytes")
