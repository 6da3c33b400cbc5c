"""Command-line front end: single-point evaluation, sweeps, figures, classification.

Subcommands: ``eval``, ``sweep``, ``figure``, ``classify``, ``dof``.
Channels come from a flat key=value config file (--channel) and/or inline
flags; inline flags override the file.  Powers are accepted linear (--P1)
or in dB (--P1-db); gains are linear.  Exit codes: 0 success, 2 usage or
config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import bounds, figures, schemes
from .channel import Channel, classify, classify_strong, db_to_linear
from .report import BOUND_NAMES, Row, bound_row, render_table, write_csv

GAIN_KEYS = ("h11", "h21", "h12", "h22", "h1R", "h2R", "hR1", "hR2")
SYM_KEYS = ("hd", "hc", "hs", "hR")
POWER_KEYS = ("P1", "P2", "PR")
SWEEP_VARS = ("PR_dB", "P_dB", "hc", "hs")


@dataclass(frozen=True)
class SweepConfig:
    channel: Channel
    var: str
    start: float
    stop: float
    step: float
    schemes: tuple[str, ...]
    bounds: tuple[str, ...]
    out: Path
    seed: int = 0
    grid: int | None = None
    pr_tracks_p: float | None = None

    def points(self) -> list[float]:
        if self.step <= 0:
            raise ValueError("sweep step must be > 0")
        if self.stop < self.start:
            raise ValueError("sweep stop must be >= start")
        vals = []
        v = self.start
        while v <= self.stop + 1e-9 * max(abs(self.stop), 1.0):
            vals.append(round(v, 12))
            v += self.step
        return vals


def _read_config(path: Path) -> dict[str, str]:
    raw = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        raw[key.strip()] = val.strip()
    return raw


def _build_channel(cfg: dict[str, str]) -> Channel:
    vals: dict[str, float] = {}
    for k in GAIN_KEYS + SYM_KEYS + POWER_KEYS + tuple(p + "_dB" for p in POWER_KEYS) + ("P", "P_dB"):
        if k in cfg and cfg[k] != "":
            vals[k] = float(cfg[k])
    gains: dict[str, float] = {}
    sym_map = {"hd": ("h11", "h22"), "hc": ("h12", "h21"),
               "hs": ("h1R", "h2R"), "hR": ("hR1", "hR2")}
    for sk, targets in sym_map.items():
        if sk in vals:
            for t in targets:
                gains[t] = vals[sk]
    for k in GAIN_KEYS:
        if k in vals:
            gains[k] = vals[k]
    missing = [k for k in GAIN_KEYS if k not in gains]
    if missing:
        raise ValueError(f"channel gains missing: {', '.join(missing)}")
    powers: dict[str, float] = {}
    if "P" in vals:
        powers["P1"] = powers["P2"] = vals["P"]
    if "P_dB" in vals:
        if "P" in vals:
            raise ValueError("give P either linear or in dB, not both")
        powers["P1"] = powers["P2"] = db_to_linear(vals["P_dB"])
    for p in POWER_KEYS:
        has_lin, has_db = p in vals, p + "_dB" in vals
        if has_lin and has_db:
            raise ValueError(f"give {p} either linear or in dB, not both")
        if has_lin:
            powers[p] = vals[p]
        elif has_db:
            powers[p] = db_to_linear(vals[p + "_dB"])
    missing = [p for p in POWER_KEYS if p not in powers]
    if missing:
        raise ValueError(f"channel powers missing: {', '.join(missing)}")
    return Channel(**{k: gains[k] for k in GAIN_KEYS},
                   P1=powers["P1"], P2=powers["P2"], PR=powers["PR"])


def _split_names(items: list[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Sort a mixed scheme/bound name list into (schemes, bounds)."""
    sch, bnd = [], []
    for name in items:
        if name in schemes.EVAL_SCHEMES:
            sch.append(name)
        elif name in BOUND_NAMES or name == "potent":
            bnd.append(name)
        else:
            raise ValueError(
                f"unknown scheme or bound {name!r}; schemes: {schemes.EVAL_SCHEMES}, "
                f"bounds: {BOUND_NAMES + ('potent',)}"
            )
    return tuple(sch), tuple(bnd)


def _collect_names(cfg: dict[str, str], args) -> tuple[tuple[str, ...], tuple[str, ...]]:
    items: list[str] = []
    for key in ("scheme", "schemes", "bounds"):
        if cfg.get(key):
            items += [s for s in cfg[key].split(",") if s]
    if args.schemes:
        items += [s for s in args.schemes.split(",") if s]
    if args.bounds:
        items += [s for s in args.bounds.split(",") if s]
    seen = []
    for s in items:
        if s not in seen:
            seen.append(s)
    return _split_names(seen)


def _resolve_bounds(names: tuple[str, ...], ch: Channel) -> tuple[str, ...]:
    out = []
    for b in names:
        if b == "potent":
            b = "potent_strong" if classify_strong(ch) else "potent_weak"
        if b not in out:
            out.append(b)
    return tuple(out)


def _apply_sweep(ch: Channel, var: str, value: float, pr_tracks_p: float | None) -> Channel:
    if var == "PR_dB":
        return ch.replace(PR=db_to_linear(value))
    if var == "P_dB":
        out = ch.replace(P1=db_to_linear(value), P2=db_to_linear(value))
        if pr_tracks_p is not None:
            out = out.replace(PR=db_to_linear(pr_tracks_p * value))
        return out
    if var == "hc":
        return ch.replace(h12=value, h21=value)
    if var == "hs":
        return ch.replace(h1R=value, h2R=value)
    raise ValueError(f"unknown sweep variable {var!r}; known: {SWEEP_VARS}")


def _point_rows(ch: Channel, var: str, value: float, scheme_names, bound_names,
                grid_n: int) -> list[Row]:
    regime = classify(ch, grid_n=grid_n)
    rows = []
    for name in scheme_names:
        res = schemes.evaluate_scheme(ch, name)
        p = res.params
        rows.append(Row(
            sweep_var=var, value=value, scheme=name, bits=res.value,
            feasible=res.feasible,
            alpha=None if p is None else p.alpha,
            beta=None if p is None else p.beta,
            sigma2=None if p is None else p.sigma2,
            rhoR1=None, rhoR2=None, regime=str(regime.tag), binding=res.binding,
        ))
    for name in _resolve_bounds(bound_names, ch):
        rows.append(bound_row(var, value, ch, name, regime))
    return rows


def _add_channel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--channel", type=Path, help="flat key=value channel/config file")
    for k in GAIN_KEYS + SYM_KEYS:
        p.add_argument(f"--{k}", type=float, help=f"gain {k} (linear)")
    for k in POWER_KEYS + ("P",):
        p.add_argument(f"--{k}", type=float, help=f"power {k} (linear)")
        p.add_argument(f"--{k}-db", type=float, help=f"power {k} in dB")


def _cfg_from_args(args) -> dict[str, str]:
    cfg: dict[str, str] = {}
    if args.channel is not None:
        cfg.update(_read_config(args.channel))
    for k in GAIN_KEYS + SYM_KEYS + POWER_KEYS + ("P",):
        v = getattr(args, k.replace("-", "_"), None)
        if v is not None:
            cfg[k] = repr(v)
    for k in POWER_KEYS + ("P",):
        v = getattr(args, f"{k}_db", None)
        if v is not None:
            cfg[k + "_dB"] = repr(v)
    return cfg


def cmd_eval(args) -> int:
    cfg = _cfg_from_args(args)
    ch = _build_channel(cfg)
    scheme_names, bound_names = _collect_names(cfg, args)
    if not scheme_names and not bound_names:
        scheme_names, bound_names = ("gcf1", "gcf2"), ("potent", "cutset")
    rows = _point_rows(ch, "-", 0.0, scheme_names, bound_names, args.grid)
    print(render_table(rows))
    if args.out is not None:
        write_csv(args.out, rows)
    return 0


def cmd_sweep(args) -> int:
    cfg = _cfg_from_args(args)
    ch = _build_channel(cfg)
    scheme_names, bound_names = _collect_names(cfg, args)
    if not scheme_names and not bound_names:
        raise ValueError("sweep needs at least one scheme or bound (--schemes/--bounds)")
    sweep_expr = args.sweep or cfg.get("sweep")
    if not sweep_expr:
        raise ValueError("missing --sweep var=start:stop:step")
    var, _, rng = sweep_expr.partition("=")
    parts = rng.split(":")
    if var not in SWEEP_VARS or len(parts) != 3:
        raise ValueError(f"bad sweep spec {sweep_expr!r}; expected var=start:stop:step "
                         f"with var in {SWEEP_VARS}")
    out = args.out or (Path(cfg["out"]) if cfg.get("out") else None)
    if out is None:
        raise ValueError("missing --out for sweep CSV")
    pr_k = args.pr_tracks_p
    if pr_k is None and cfg.get("pr_tracks_p"):
        pr_k = float(cfg["pr_tracks_p"])
    sc = SweepConfig(
        channel=ch, var=var,
        start=float(parts[0]), stop=float(parts[1]), step=float(parts[2]),
        schemes=scheme_names, bounds=bound_names, out=Path(out),
        seed=args.seed, grid=args.grid, pr_tracks_p=pr_k,
    )
    rows: list[Row] = []
    for value in sc.points():
        point_ch = _apply_sweep(sc.channel, sc.var, value, sc.pr_tracks_p)
        rows += _point_rows(point_ch, sc.var, value, sc.schemes, sc.bounds, args.grid)
    write_csv(sc.out, rows)
    print(f"wrote {sc.out} ({len(rows)} rows)")
    return 0


def cmd_figure(args) -> int:
    csv_path, svg_path = figures.run_figure(args.n, args.out)
    print(f"wrote {csv_path} and {svg_path}")
    return 0


def cmd_classify(args) -> int:
    ch = _build_channel(_cfg_from_args(args))
    regime = classify(ch, grid_n=args.grid)
    if regime.witness is not None:
        ws = ", ".join(format(w, ".6g") for w in regime.witness)
        print(f"{regime.tag} (witness rho1..rho4 = {ws})")
    else:
        print(str(regime.tag))
    return 0


def cmd_dof(args) -> int:
    ch = _build_channel(_cfg_from_args(args))
    est = bounds.dof_estimate(ch, args.k, args.p_db_hi)
    lo, hi = est.p_grid_db
    print(f"relay power tracking PR = P^{est.k:g}")
    print(f"sum rate {est.rates[0]:.4f} bits at P = {lo:g} dB, "
          f"{est.rates[1]:.4f} bits at P = {hi:g} dB")
    print(f"estimated DoF slope: {est.slope:.4f}")
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gifrc",
        description="Rate regions and sum-capacity bounds for the Gaussian "
                    "interference relay channel",
        allow_abbrev=False,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_out=True):
        _add_channel_flags(p)
        p.add_argument("--schemes", help="comma-separated scheme names")
        p.add_argument("--bounds", help="comma-separated bound names")
        p.add_argument("--grid", type=int, default=64, help="grid points per classification axis")
        p.add_argument("--seed", type=int, default=0, help="seed (reserved; outputs are deterministic)")
        if with_out:
            p.add_argument("--out", type=Path, help="output CSV path")

    p_eval = sub.add_parser("eval", help="evaluate one channel point")
    common(p_eval)
    p_eval.set_defaults(fn=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="sweep one variable, write CSV")
    common(p_sweep)
    p_sweep.add_argument("--sweep", help="var=start:stop:step with var in "
                         + ",".join(SWEEP_VARS))
    p_sweep.add_argument("--pr-tracks-p", type=float, default=None,
                         help="while sweeping P_dB, set PR_dB = k * P_dB")
    p_sweep.set_defaults(fn=cmd_sweep)

    p_fig = sub.add_parser("figure", help="reproduce a registered figure")
    p_fig.add_argument("n", type=int, help=f"figure id, one of {sorted(figures.FIGURES)}")
    p_fig.add_argument("--out", type=Path, default=Path("figures"), help="output directory")
    p_fig.set_defaults(fn=cmd_figure)

    p_cls = sub.add_parser("classify", help="print the interference regime")
    common(p_cls, with_out=False)
    p_cls.set_defaults(fn=cmd_classify)

    p_dof = sub.add_parser("dof", help="estimate the high-SNR sum-rate slope")
    common(p_dof, with_out=False)
    p_dof.add_argument("--k", type=float, default=2.0, help="relay power exponent PR = P^k")
    p_dof.add_argument("--p-db-hi", type=float, default=60.0, help="top power in dB")
    p_dof.set_defaults(fn=cmd_dof)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
