"""Vectorized numpy kernel for conditional mutual information of Gaussian observables.

This is the pure-Python twin of the compiled kernel in ``_mi_core``.  Both
implement the same contract (see :func:`mi_bits_batch`) and the same
algorithm: a Cholesky fast path over blocks ordered conditioning-first
(``[C..., A..., B...]``, sizes ``(nc, na, nb)``), using

    I(A; B | C) = 1/2 (logdet S_CA + logdet S_CB - logdet S_C - logdet S_CAB)

in nats, converted to bits.  The two leading log-determinants fall out of
one factorization of S_CAB as partial pivot products.  Evaluations whose
pivots fall below 1e-13 of the largest diagonal entry (structural
degeneracies: zero-variance sources, linearly dependent observables) are
rerouted to a Schur-complement path built on pseudo-inverses, with
pseudo-determinants over the eigenvalues above a 1e-12 relative threshold.
A rank drop between S_{B|C} and S_{B|AC} means the mutual information is
infinite.
"""

from __future__ import annotations

import numpy as np

LN2 = np.log(2.0)
REL_TOL = 1e-12
CHOL_TOL = 1e-13
NOISE_REL = 1e-14
_CHUNK = 65536


# ---------------------------------------------------------------------------
# pseudo-determinant fallback (structural degeneracies)
# ---------------------------------------------------------------------------

def _pdet_rank_stack(mats: np.ndarray, floor: np.ndarray):
    """Stacked log pseudo-determinant and rank of symmetric PSD matrices.

    An eigenvalue counts as zero below 1e-12 of the block's largest
    eigenvalue or below the caller's noise floor (cancellation noise scale
    of the parent covariance), whichever is larger.
    """
    n = mats.shape[0]
    if mats.shape[-1] == 0:
        return np.zeros(n), np.zeros(n, dtype=np.intp)
    w = np.linalg.eigvalsh(mats)
    thr = np.maximum(REL_TOL * np.maximum(w[:, -1], 0.0), floor)[:, None]
    keep = w > thr
    logs = np.where(keep, np.log(np.where(keep, w, 1.0)), 0.0)
    return np.sum(logs, axis=1), np.sum(keep, axis=1)


def _pinv_psd_stack(mats: np.ndarray, floor: np.ndarray) -> np.ndarray:
    if mats.shape[-1] == 0:
        return mats
    w, v = np.linalg.eigh(mats)
    thr = np.maximum(REL_TOL * np.maximum(w[:, -1], 0.0), floor)[:, None]
    keep = w > thr
    inv = np.where(keep, 1.0 / np.where(keep, w, 1.0), 0.0)
    return (v * inv[:, None, :]) @ v.transpose(0, 2, 1)


def mi_pseudo_batch(cov: np.ndarray, nc: int, na: int, nb: int) -> np.ndarray:
    """Schur-complement / pseudo-determinant path on [C,A,B]-ordered covariances."""
    floor = NOISE_REL * np.max(np.diagonal(cov, axis1=1, axis2=2), axis=1)
    gain = cov[:, nc:, :nc] @ _pinv_psd_stack(cov[:, :nc, :nc], floor)
    t = cov[:, nc:, nc:] - gain @ cov[:, :nc, nc:]
    l1, r1 = _pdet_rank_stack(t[:, na:, na:], floor)
    gain_a = t[:, na:, :na] @ _pinv_psd_stack(t[:, :na, :na], floor)
    t2 = t[:, na:, na:] - gain_a @ t[:, :na, na:]
    l2, r2 = _pdet_rank_stack(t2, floor)
    out = np.maximum(0.5 * (l1 - l2) / LN2, 0.0)
    out[r1 > r2] = np.inf
    return out


def mi_pseudo(cov: np.ndarray, nc: int, na: int, nb: int) -> float:
    """Single-evaluation wrapper around :func:`mi_pseudo_batch`."""
    return float(mi_pseudo_batch(cov[None], nc, na, nb)[0])


# ---------------------------------------------------------------------------
# batched Cholesky fast path
# ---------------------------------------------------------------------------

def _chol_logdets(cov: np.ndarray, cuts: tuple[int, ...]):
    """Batched lower Cholesky with partial log-determinants.

    Returns (ok, partials) where partials[m] is the log-determinant of the
    leading cuts[m] x cuts[m] block and ok flags evaluations whose pivots
    all stayed above the structural-degeneracy threshold.
    """
    n, k, _ = cov.shape
    if k == 0:
        return np.ones(n, bool), [np.zeros(n) for _ in cuts]
    low = cov.copy()
    tol = CHOL_TOL * np.max(np.abs(np.diagonal(cov, axis1=1, axis2=2)), axis=1)
    ok = np.ones(n, dtype=bool)
    acc = np.zeros(n)
    partials = [np.zeros(n) for _ in cuts]
    for j in range(k):
        piv = low[:, j, j] - np.einsum("nt,nt->n", low[:, j, :j], low[:, j, :j])
        ok &= piv > tol
        piv_safe = np.sqrt(np.where(piv > 0, piv, 1.0))
        low[:, j, j] = piv_safe
        acc = acc + 2.0 * np.log(piv_safe)
        for m, cut in enumerate(cuts):
            if cut == j + 1:
                partials[m] = acc
        if j + 1 < k:
            dot = np.einsum("nit,nt->ni", low[:, j + 1 :, :j], low[:, j, :j])
            low[:, j + 1 :, j] = (low[:, j + 1 :, j] - dot) / piv_safe[:, None]
    return ok, partials


def mi_bits_batch(
    coeffs: np.ndarray, variances: np.ndarray, nc: int, na: int, nb: int
) -> np.ndarray:
    """Conditional mutual information I(A;B|C) in bits for a batch of systems.

    Parameters
    ----------
    coeffs : (m, k, s) array, m in {1, n}
        Observable coefficient rows over the s sources, ordered [C, A, B]
        with k = nc + na + nb.  A single coefficient table (m = 1) is
        broadcast over the variance batch.
    variances : (n, s) array
        Per-evaluation source variances (>= 0).
    nc, na, nb : block sizes.

    Returns
    -------
    (n,) array of bits; +inf where conditioning on A removes dimensions
    of B entirely.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    variances = np.atleast_2d(np.ascontiguousarray(variances, dtype=np.float64))
    k = nc + na + nb
    if coeffs.ndim == 2:
        coeffs = coeffs[None]
    if coeffs.shape[1] != k:
        raise ValueError(f"coeffs have {coeffs.shape[1]} rows, expected {k}")
    n = max(coeffs.shape[0], variances.shape[0])
    out = np.empty(n)
    idx_cb = np.concatenate([np.arange(nc), np.arange(nc + na, k)])
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        c = coeffs if coeffs.shape[0] == 1 else coeffs[lo:hi]
        v = variances if variances.shape[0] == 1 else variances[lo:hi]
        cb = np.broadcast_to(c, (hi - lo, k, c.shape[2]))
        cov = cb @ (cb * v[:, None, :]).transpose(0, 2, 1)
        ok, (l_c, l_ca, l_all) = _chol_logdets(cov, (nc, nc + na, k))
        sub = cov[:, idx_cb[:, None], idx_cb[None, :]]
        ok_cb, (l_cb,) = _chol_logdets(sub, (nc + nb,))
        ok &= ok_cb
        mi = np.maximum(0.5 * (l_ca + l_cb - l_c - l_all) / LN2, 0.0)
        if not np.all(ok):
            rows = np.flatnonzero(~ok)
            mi[rows] = mi_pseudo_batch(cov[rows], nc, na, nb)
        out[lo:hi] = mi
    return out
