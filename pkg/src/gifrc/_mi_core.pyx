# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel for conditional mutual information of Gaussian observables.

Same contract as ``_mi_py.mi_bits_batch`` (blocks ordered [C, A, B]).  The
fast path is a pair of Cholesky factorizations per evaluation; evaluations
with singular covariance fall back to a Jacobi-eigenvalue pseudo-determinant
path that matches the numpy kernel's semantics.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, log, sqrt

cnp.import_array()

DEF KMAX = 12
DEF SMAX = 24

cdef double LN2 = 0.6931471805599453
cdef double REL_TOL = 1e-12
cdef double CHOL_TOL = 1e-13
cdef double NOISE_REL = 1e-14


cdef inline void _build_cov(double* cov, const double* coef, const double* var,
                            int k, int s) noexcept nogil:
    cdef int i, j, t
    cdef double acc
    for i in range(k):
        for j in range(i + 1):
            acc = 0.0
            for t in range(s):
                acc += coef[i * s + t] * coef[j * s + t] * var[t]
            cov[i * k + j] = acc
            cov[j * k + i] = acc


cdef inline int _chol_prefix_logdets(double* a, int k, int nc, int na,
                                     double* l_c, double* l_ca,
                                     double* l_all) noexcept nogil:
    """In-place lower Cholesky; partial log-dets after nc and nc+na pivots."""
    cdef int i, j, t
    cdef double piv, acc, maxd = 0.0
    for i in range(k):
        if a[i * k + i] > maxd:
            maxd = a[i * k + i]
    cdef double tol = CHOL_TOL * maxd
    acc = 0.0
    l_c[0] = 0.0
    l_ca[0] = 0.0
    for j in range(k):
        piv = a[j * k + j]
        for t in range(j):
            piv -= a[j * k + t] * a[j * k + t]
        if piv <= tol:
            return -1
        piv = sqrt(piv)
        a[j * k + j] = piv
        acc += 2.0 * log(piv)
        if j == nc - 1:
            l_c[0] = acc
        if j == nc + na - 1:
            l_ca[0] = acc
        for i in range(j + 1, k):
            for t in range(j):
                a[i * k + j] -= a[i * k + t] * a[j * k + t]
            a[i * k + j] /= piv
    l_all[0] = acc
    if nc == 0:
        l_c[0] = 0.0
    if nc + na == 0:
        l_ca[0] = 0.0
    return 0


cdef inline int _chol_logdet(double* a, int k, double* out) noexcept nogil:
    cdef double dummy_c, dummy_ca
    return _chol_prefix_logdets(a, k, 0, 0, &dummy_c, &dummy_ca, out)


cdef inline void _jacobi(double* a, double* v, double* w, int k,
                         bint want_vecs) noexcept nogil:
    """Cyclic Jacobi eigen-decomposition of a symmetric k x k matrix."""
    cdef int p, q, r, sweep, i
    cdef double off, norm0, apq, app, aqq, theta, t, c, s, arp, arq
    if want_vecs:
        for p in range(k):
            for q in range(k):
                v[p * k + q] = 1.0 if p == q else 0.0
    norm0 = 0.0
    for p in range(k):
        for q in range(k):
            norm0 += a[p * k + q] * a[p * k + q]
    for sweep in range(60):
        off = 0.0
        for p in range(k - 1):
            for q in range(p + 1, k):
                off += a[p * k + q] * a[p * k + q]
        if off <= 1e-28 * norm0 or off == 0.0:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[p * k + q]
                if apq == 0.0:
                    continue
                app = a[p * k + p]
                aqq = a[q * k + q]
                theta = 0.5 * (aqq - app) / apq
                if theta >= 0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                a[p * k + p] = app - t * apq
                a[q * k + q] = aqq + t * apq
                a[p * k + q] = 0.0
                a[q * k + p] = 0.0
                for r in range(k):
                    if r != p and r != q:
                        arp = a[r * k + p]
                        arq = a[r * k + q]
                        a[r * k + p] = c * arp - s * arq
                        a[p * k + r] = a[r * k + p]
                        a[r * k + q] = s * arp + c * arq
                        a[q * k + r] = a[r * k + q]
                if want_vecs:
                    for r in range(k):
                        arp = v[r * k + p]
                        arq = v[r * k + q]
                        v[r * k + p] = c * arp - s * arq
                        v[r * k + q] = s * arp + c * arq
    for i in range(k):
        w[i] = a[i * k + i]


cdef inline void _pinv_from_eig(double* v, double* w, int k, double floor,
                                double* out) noexcept nogil:
    cdef int i, j, t
    cdef double wmax = 0.0, thr, acc
    for i in range(k):
        if w[i] > wmax:
            wmax = w[i]
    thr = REL_TOL * wmax
    if floor > thr:
        thr = floor
    for i in range(k):
        for j in range(i + 1):
            acc = 0.0
            for t in range(k):
                if w[t] > thr:
                    acc += v[i * k + t] * v[j * k + t] / w[t]
            out[i * k + j] = acc
            out[j * k + i] = acc


cdef inline void _pdet_rank(double* w, int k, double floor, double* logdet,
                            int* rank) noexcept nogil:
    cdef int i
    cdef double wmax = 0.0, thr, acc = 0.0
    cdef int r = 0
    for i in range(k):
        if w[i] > wmax:
            wmax = w[i]
    thr = REL_TOL * wmax
    if floor > thr:
        thr = floor
    for i in range(k):
        if w[i] > thr:
            acc += log(w[i])
            r += 1
    logdet[0] = acc
    rank[0] = r


cdef double _mi_pseudo(double* cov, int k, int nc, int na, int nb) noexcept nogil:
    """Schur-complement / pseudo-determinant path on a [C,A,B] covariance.

    Eigenvalues below NOISE_REL of the parent covariance's largest diagonal
    entry are cancellation noise and count as structural zeros.
    """
    cdef double cblk[KMAX * KMAX]
    cdef double vecs[KMAX * KMAX]
    cdef double w[KMAX]
    cdef double pinv[KMAX * KMAX]
    cdef double tmat[KMAX * KMAX]
    cdef double t2[KMAX * KMAX]
    cdef int i, j, t, u, m
    cdef double acc, l1, l2, floor = 0.0
    cdef int r1, r2
    m = na + nb
    for i in range(k):
        if cov[i * k + i] > floor:
            floor = cov[i * k + i]
    floor *= NOISE_REL
    # T = cov[AB,AB] - cov[AB,C] pinv(cov[C,C]) cov[C,AB]
    for i in range(nc):
        for j in range(nc):
            cblk[i * nc + j] = cov[i * k + j]
    _jacobi(cblk, vecs, w, nc, 1)
    _pinv_from_eig(vecs, w, nc, floor, pinv)
    for i in range(m):
        for j in range(m):
            acc = cov[(nc + i) * k + (nc + j)]
            for t in range(nc):
                for u in range(nc):
                    acc -= cov[(nc + i) * k + t] * pinv[t * nc + u] * cov[u * k + (nc + j)]
            tmat[i * m + j] = acc
    # pdet and rank of T_BB
    for i in range(nb):
        for j in range(nb):
            cblk[i * nb + j] = tmat[(na + i) * m + (na + j)]
    _jacobi(cblk, vecs, w, nb, 0)
    _pdet_rank(w, nb, floor, &l1, &r1)
    # T2 = T_BB - T_BA pinv(T_AA) T_AB
    for i in range(na):
        for j in range(na):
            cblk[i * na + j] = tmat[i * m + j]
    _jacobi(cblk, vecs, w, na, 1)
    _pinv_from_eig(vecs, w, na, floor, pinv)
    for i in range(nb):
        for j in range(nb):
            acc = tmat[(na + i) * m + (na + j)]
            for t in range(na):
                for u in range(na):
                    acc -= tmat[(na + i) * m + t] * pinv[t * na + u] * tmat[u * m + (na + j)]
            t2[i * nb + j] = acc
    _jacobi(t2, vecs, w, nb, 0)
    _pdet_rank(w, nb, floor, &l2, &r2)
    if r1 > r2:
        return INFINITY
    acc = 0.5 * (l1 - l2) / LN2
    return acc if acc > 0.0 else 0.0


def mi_bits_batch(coeffs, variances, int nc, int na, int nb):
    """Compiled twin of ``gifrc._mi_py.mi_bits_batch``; same contract."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    if coeffs.ndim == 2:
        coeffs = coeffs[None]
    variances = np.ascontiguousarray(variances, dtype=np.float64)
    if variances.ndim == 1:
        variances = variances[None]
    cdef int k = nc + na + nb
    cdef int s = coeffs.shape[2]
    if coeffs.shape[1] != k:
        raise ValueError(f"coeffs have {coeffs.shape[1]} rows, expected {k}")
    if variances.shape[1] != s:
        raise ValueError("variance rows do not match the source count")
    if k > KMAX or s > SMAX:
        raise ValueError(f"kernel supports at most {KMAX} observables and {SMAX} sources")
    cdef Py_ssize_t n = max(coeffs.shape[0], variances.shape[0])
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef const double[:, :, ::1] cf = coeffs
    cdef const double[:, ::1] vr = variances
    cdef bint coef_batched = coeffs.shape[0] > 1
    cdef bint var_batched = variances.shape[0] > 1
    if coef_batched and coeffs.shape[0] != n:
        raise ValueError("coefficient batch does not match variance batch")
    if var_batched and variances.shape[0] != n:
        raise ValueError("variance batch does not match coefficient batch")

    cdef double cov[KMAX * KMAX]
    cdef double work[KMAX * KMAX]
    cdef double gath[KMAX * KMAX]
    cdef double l_c, l_ca, l_all, l_cb, mi
    cdef Py_ssize_t t
    cdef int i, j, kcb = nc + nb
    cdef int ok
    with nogil:
        for t in range(n):
            _build_cov(cov, &cf[t if coef_batched else 0, 0, 0],
                       &vr[t if var_batched else 0, 0], k, s)
            for i in range(k * k):
                work[i] = cov[i]
            ok = _chol_prefix_logdets(work, k, nc, na, &l_c, &l_ca, &l_all)
            if ok == 0:
                for i in range(kcb):
                    for j in range(kcb):
                        gath[i * kcb + j] = cov[(i if i < nc else i + na) * k
                                                + (j if j < nc else j + na)]
                ok = _chol_logdet(gath, kcb, &l_cb)
            if ok == 0:
                mi = 0.5 * (l_ca + l_cb - l_c - l_all) / LN2
                out[t] = mi if mi > 0.0 else 0.0
            else:
                out[t] = _mi_pseudo(cov, k, nc, na, nb)
    return out_arr
