"""Tabular result rows and deterministic CSV emission.

One row per (sweep point, scheme-or-bound).  Numeric cells are formatted
with 12 significant digits, empty where not applicable, so identical
invocations produce byte-identical files.  A bound value is labeled a
capacity only when the corresponding regime condition was verified for the
channel; otherwise the binding column says "expression-only".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import bounds
from .channel import Channel, Regime, RegimeTag, classify_strong

__all__ = ["Row", "CSV_HEADER", "write_csv", "render_table", "bound_row", "BOUND_NAMES"]

CSV_HEADER = "sweep_var,value,scheme,bits,feasible,alpha,beta,sigma2,rhoR1,rhoR2,regime,binding"

BOUND_NAMES = ("potent_weak", "potent_strong", "cutset")


@dataclass
class Row:
    sweep_var: str
    value: float
    scheme: str
    bits: float
    feasible: bool
    alpha: float | None
    beta: float | None
    sigma2: float | None
    rhoR1: float | None
    rhoR2: float | None
    regime: str
    binding: str


def _num(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def _render_row(r: Row) -> str:
    cells = (
        r.sweep_var, _num(r.value), r.scheme, _num(r.bits),
        "true" if r.feasible else "false",
        _num(r.alpha), _num(r.beta), _num(r.sigma2),
        _num(r.rhoR1), _num(r.rhoR2), r.regime, r.binding,
    )
    for c in cells:
        if "," in c or "\n" in c:
            raise ValueError(f"cell would need quoting: {c!r}")
    return ",".join(cells)


def write_csv(path, rows: Iterable[Row]) -> None:
    lines = [CSV_HEADER] + [_render_row(r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def render_table(rows: Iterable[Row]) -> str:
    """Human-readable fixed-width view of the same rows."""
    out = [f"{'scheme':<22} {'bits':>12} {'feasible':>8} {'binding':<28} regime"]
    for r in rows:
        out.append(
            f"{r.scheme:<22} {r.bits:>12.6f} {('yes' if r.feasible else 'no'):>8} "
            f"{r.binding:<28} {r.regime}"
        )
    return "\n".join(out)


def bound_row(var: str, value: float, ch: Channel, name: str, regime: Regime) -> Row:
    """Evaluate one upper bound and tag whether it is a verified capacity."""
    rho1 = rho2 = None
    if name == "potent_weak":
        bits, _ = bounds.potent_weak_sum(ch, regime=regime)
        label = (
            "potent-sum-capacity"
            if regime.tag is RegimeTag.WEAK_POTENT_FEASIBLE
            else "expression-only"
        )
    elif name == "potent_strong":
        bits = bounds.potent_strong_sum(ch)
        label = "potent-sum-capacity" if classify_strong(ch) else "expression-only"
    elif name == "cutset":
        bits, cp = bounds.cutset_sum_max(ch)
        rho1, rho2 = cp.rhoR1, cp.rhoR2
        label = "cut-set"
    else:
        raise ValueError(f"unknown bound {name!r}; known: {BOUND_NAMES}")
    return Row(
        sweep_var=var, value=value, scheme=name, bits=bits, feasible=True,
        alpha=None, beta=None, sigma2=None, rhoR1=rho1, rhoR2=rho2,
        regime=str(regime.tag), binding=label,
    )
