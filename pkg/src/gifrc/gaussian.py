"""Exact mutual information between linear observables of independent Gaussians.

A :class:`GaussianSystem` is a list of independent zero-mean Gaussian sources
plus named linear observables.  Every rate expression in this package is a
combination of conditional mutual informations I(A; B | C) between observable
sets, evaluated here from log-determinants of covariance blocks, in bits.

``ObservableTable`` / ``CompiledQuery`` expose the same computation over
batches of source-variance vectors (one fixed coefficient layout, many
variance assignments), which is what the grid optimizers run on.

``mc_estimate_mi`` is an independent Monte-Carlo oracle used by the test
suite to validate the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import backend

__all__ = [
    "MIQuery",
    "ObservableTable",
    "CompiledQuery",
    "GaussianSystem",
    "covariance",
    "mutual_information",
    "mc_estimate_mi",
]

_REL_TOL = 1e-12


@dataclass(frozen=True)
class MIQuery:
    """Query I(a; b | given) between disjoint observable-name sets."""

    a: tuple[str, ...]
    b: tuple[str, ...]
    given: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "given", tuple(self.given))
        if not self.a or not self.b:
            raise ValueError("a and b must be non-empty")
        names = self.a + self.b + self.given
        if len(set(names)) != len(names):
            raise ValueError(f"query sets must be disjoint: {names}")


class ObservableTable:
    """Named linear observables over an ordered list of named sources."""

    def __init__(
        self,
        source_names: Sequence[str],
        observables: Iterable[tuple[str, Mapping[str, float] | Sequence[float]]],
    ):
        self.source_names = tuple(source_names)
        if len(set(self.source_names)) != len(self.source_names):
            raise ValueError("duplicate source names")
        src_index = {n: i for i, n in enumerate(self.source_names)}
        names = []
        rows = []
        for name, coeffs in observables:
            row = np.zeros(len(self.source_names))
            if isinstance(coeffs, Mapping):
                for src, c in coeffs.items():
                    row[src_index[src]] = c
            else:
                if len(coeffs) != len(self.source_names):
                    raise ValueError(f"coefficient vector for {name!r} has wrong length")
                row[:] = coeffs
            names.append(name)
            rows.append(row)
        if len(set(names)) != len(names):
            raise ValueError("duplicate observable names")
        self.observable_names = tuple(names)
        self.coeffs = np.ascontiguousarray(rows, dtype=np.float64)
        self._obs_index = {n: i for i, n in enumerate(names)}

    def rows(self, names: Sequence[str]) -> np.ndarray:
        try:
            idx = [self._obs_index[n] for n in names]
        except KeyError as exc:
            raise KeyError(f"unknown observable {exc.args[0]!r}") from None
        return np.array(idx, dtype=np.intp)

    def compile(
        self, a: Sequence[str], b: Sequence[str], given: Sequence[str] = ()
    ) -> "CompiledQuery":
        return CompiledQuery(self, MIQuery(tuple(a), tuple(b), tuple(given)))


class CompiledQuery:
    """A mutual-information query bound to an observable layout.

    Calling it with a batch of source-variance rows returns I(a; b | given)
    per row, in bits.  An optional coefficient batch (e.g. relay correlation
    sweeps) overrides the table's coefficients row-wise.
    """

    def __init__(self, table: ObservableTable, query: MIQuery):
        self.table = table
        self.query = query
        self._rows = table.rows(query.given + query.a + query.b)
        self._nc = len(query.given)
        self._na = len(query.a)
        self._nb = len(query.b)
        self._coeffs = np.ascontiguousarray(table.coeffs[self._rows])[None]

    def __call__(self, variances, coeffs: np.ndarray | None = None):
        v = np.asarray(variances, dtype=np.float64)
        scalar = v.ndim == 1 and coeffs is None
        if coeffs is None:
            c = self._coeffs
        else:
            c = np.asarray(coeffs, dtype=np.float64)
            if c.ndim == 2:
                c = c[None]
            c = np.ascontiguousarray(c[:, self._rows, :])
            scalar = v.ndim == 1 and c.shape[0] == 1
        out = backend.mi_bits_batch(c, v, self._nc, self._na, self._nb)
        return float(out[0]) if scalar else out


class GaussianSystem:
    """Independent zero-mean Gaussian sources plus named linear observables."""

    def __init__(
        self,
        sources: Iterable[tuple[str, float]],
        observables: Iterable[tuple[str, Mapping[str, float] | Sequence[float]]],
    ):
        src = list(sources)
        self.table = ObservableTable([n for n, _ in src], observables)
        self.variances = np.asarray([v for _, v in src], dtype=np.float64)
        if np.any(self.variances < 0) or not np.all(np.isfinite(self.variances)):
            raise ValueError("source variances must be finite and >= 0")
        self._cache: dict[MIQuery, CompiledQuery] = {}

    @property
    def source_names(self) -> tuple[str, ...]:
        return self.table.source_names

    @property
    def observable_names(self) -> tuple[str, ...]:
        return self.table.observable_names

    def covariance(self, names: Sequence[str]) -> np.ndarray:
        rows = self.table.coeffs[self.table.rows(names)]
        return rows @ (rows * self.variances).T

    def mutual_information(self, query: MIQuery) -> float:
        cq = self._cache.get(query)
        if cq is None:
            cq = CompiledQuery(self.table, query)
            self._cache[query] = cq
        return cq(self.variances)

    def mi(self, a: Sequence[str], b: Sequence[str], given: Sequence[str] = ()) -> float:
        return self.mutual_information(MIQuery(tuple(a), tuple(b), tuple(given)))


def covariance(system: GaussianSystem, names: Sequence[str]) -> np.ndarray:
    """Covariance matrix of the named observables (exact, symmetric PSD)."""
    return system.covariance(names)


def mutual_information(system: GaussianSystem, query: MIQuery) -> float:
    """I(A; B | C) in bits, >= 0, +inf if conditioning removes dimensions of B."""
    return system.mutual_information(query)


def _conditional(cov: np.ndarray, nb: int):
    """Mean map and covariance of the first nb coordinates given the rest."""
    s_bb = cov[:nb, :nb]
    s_bg = cov[:nb, nb:]
    s_gg = cov[nb:, nb:]
    if s_gg.shape[0]:
        gain = np.linalg.solve(s_gg, s_bg.T).T
        resid = s_bb - gain @ s_bg.T
    else:
        gain = np.zeros((nb, 0))
        resid = s_bb
    resid = 0.5 * (resid + resid.T)
    w = np.linalg.eigvalsh(resid)
    if w[0] <= _REL_TOL * max(w[-1], 0.0):
        raise ValueError("degenerate conditional covariance; use the exact path")
    return gain, resid


def mc_estimate_mi(
    system: GaussianSystem,
    query: MIQuery,
    n_samples: int = 1_000_000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte-Carlo estimate of I(A; B | C) with its standard error.

    Draws joint samples of the system and averages
    log2 p(b | a, c) - log2 p(b | c) using the exact Gaussian conditional
    densities.  Deterministic for a fixed seed.  Requires nondegenerate
    conditional covariances (raises ValueError otherwise).
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    names = query.b + query.a + query.given
    nb, na = len(query.b), len(query.a)
    keep_bc = list(range(nb)) + list(range(nb + na, len(names)))
    cov = system.covariance(names)
    gain_bac, resid_bac = _conditional(cov, nb)
    gain_bc, resid_bc = _conditional(cov[np.ix_(keep_bc, keep_bc)], nb)
    prec_bac = np.linalg.inv(resid_bac)
    prec_bc = np.linalg.inv(resid_bc)
    ld_bac = float(np.linalg.slogdet(resid_bac)[1])
    ld_bc = float(np.linalg.slogdet(resid_bc)[1])

    rows = system.table.coeffs[system.table.rows(names)]
    scale = np.sqrt(system.variances)
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    chunk = 1 << 18
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        x = rng.standard_normal((m, len(scale))) * scale
        obs = x @ rows.T
        b, ac, c = obs[:, :nb], obs[:, nb:], obs[:, nb + na :]
        r1 = b - ac @ gain_bac.T
        r2 = b - c @ gain_bc.T
        q1 = np.einsum("ij,jk,ik->i", r1, prec_bac, r1)
        q2 = np.einsum("ij,jk,ik->i", r2, prec_bc, r2)
        vals = 0.5 * (q2 - q1 + ld_bc - ld_bac) / np.log(2.0)
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals * vals))
        done += m
    mean = total / n_samples
    var = max(total_sq / n_samples - mean * mean, 0.0)
    stderr = float(np.sqrt(var / n_samples))
    return mean, stderr
