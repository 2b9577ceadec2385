"""Hot numeric kernels: exact elimination over GF(q) and the MDS column scan.

Two interchangeable backends produce bit-identical results:

* ``numba`` -- the loop kernels below compiled with ``@njit`` (default
  whenever numba imports cleanly);
* ``numpy`` -- vectorized row operations, no compilation step.

``PMDS_BACKEND=numba|numpy`` selects the backend at import time.
``benchmarks/bench_backends.py`` times one against the other.

Kernels take field arithmetic unpacked as ``(p, h, q, log, exp)`` int/array
arguments (see ``GF.tables``): addition is digit-wise mod p on base-p digit
vectors (XOR when p = 2) and multiplication goes through the log/antilog
tables.  All matrices are int64 arrays of element indices.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_requested = os.environ.get("PMDS_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(f"PMDS_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

HAVE_NUMBA = False
if _requested != "numpy":
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise RuntimeError("PMDS_BACKEND=numba but numba is not importable")
        warnings.warn("numba not importable; falling back to the numpy backend")

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# -- scalar element ops (compiled on the numba backend) -----------------------


def _s_add(a, b, p, h):
    if p == 2:
        return a ^ b
    if h == 1:
        return (a + b) % p
    s = 0
    mul = 1
    for _ in range(h):
        s += ((a + b) % p) * mul
        a //= p
        b //= p
        mul *= p
    return s


def _s_sub(a, b, p, h):
    if p == 2:
        return a ^ b
    if h == 1:
        return (a - b) % p
    s = 0
    mul = 1
    for _ in range(h):
        s += ((a - b) % p) * mul
        a //= p
        b //= p
        mul *= p
    return s


def _s_mul(a, b, q, logt, expt):
    if a == 0 or b == 0:
        return 0
    return expt[(logt[a] + logt[b]) % (q - 1)]


def _s_inv(a, q, logt, expt):
    return expt[(q - 1 - logt[a]) % (q - 1)]


# -- loop kernels (the numba backend compiles these) ---------------------------


def _rank_in_place(m, p, h, q, logt, expt):
    """Row rank by Gaussian elimination; m is destroyed.

    Pivoting takes the first nonzero entry scanning top to bottom (exact
    arithmetic needs no magnitude ordering).
    """
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        pinv = _s_inv(m[r, c], q, logt, expt)
        for j in range(c, cols):
            m[r, j] = _s_mul(m[r, j], pinv, q, logt, expt)
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                for j in range(c, cols):
                    m[i, j] = _s_sub(m[i, j], _s_mul(f, m[r, j], q, logt, expt), p, h)
        r += 1
    return r


def _solve_in_place(a, b, p, h, q, logt, expt):
    """Gauss-Jordan on a k x k system with multiple right-hand sides.

    a is k x k and b is k x w; both are destroyed.  Returns 0 and leaves the
    solution in b, or returns 1 if a is singular.
    """
    k = a.shape[0]
    w = b.shape[1]
    for c in range(k):
        piv = -1
        for i in range(c, k):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            return 1
        if piv != c:
            for j in range(k):
                t = a[c, j]
                a[c, j] = a[piv, j]
                a[piv, j] = t
            for j in range(w):
                t = b[c, j]
                b[c, j] = b[piv, j]
                b[piv, j] = t
        pinv = _s_inv(a[c, c], q, logt, expt)
        for j in range(c, k):
            a[c, j] = _s_mul(a[c, j], pinv, q, logt, expt)
        for j in range(w):
            b[c, j] = _s_mul(b[c, j], pinv, q, logt, expt)
        for i in range(k):
            if i != c and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, k):
                    a[i, j] = _s_sub(a[i, j], _s_mul(f, a[c, j], q, logt, expt), p, h)
                for j in range(w):
                    b[i, j] = _s_sub(b[i, j], _s_mul(f, b[c, j], q, logt, expt), p, h)
    return 0


def _matmul(a, b, p, h, q, logt, expt):
    n, inner = a.shape
    cols = b.shape[1]
    out = np.zeros((n, cols), dtype=np.int64)
    for i in range(n):
        for t in range(inner):
            f = a[i, t]
            if f != 0:
                for j in range(cols):
                    out[i, j] = _s_add(out[i, j], _s_mul(f, b[t, j], q, logt, expt), p, h)
    return out


def _mds_scan(m, combo, max_count, p, h, q, logt, expt):
    """Scan k-column subsets in lexicographic order, starting at ``combo``.

    Examines at most max_count subsets (or until the sequence ends).
    Returns (found, checked): found = 1 leaves the first rank-deficient
    subset in ``combo`` with checked counting it; found = 0 means every
    examined subset had full rank.
    """
    k, n = m.shape
    sub = np.empty((k, k), dtype=np.int64)
    checked = 0
    while checked < max_count:
        for i in range(k):
            for j in range(k):
                sub[i, j] = m[i, combo[j]]
        checked += 1
        if _rank_in_place(sub, p, h, q, logt, expt) < k:
            return 1, checked
        i = k - 1
        while i >= 0 and combo[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        combo[i] += 1
        for j in range(i + 1, k):
            combo[j] = combo[j - 1] + 1
    return 0, checked


if HAVE_NUMBA:
    _jit = njit(cache=True, nogil=True)
    _s_add = _jit(_s_add)
    _s_sub = _jit(_s_sub)
    _s_mul = _jit(_s_mul)
    _s_inv = _jit(_s_inv)
    _rank_in_place = _jit(_rank_in_place)
    _solve_in_place = _jit(_solve_in_place)
    _matmul = _jit(_matmul)
    _mds_scan = _jit(_mds_scan)


# -- vectorized element ops (numpy; shared by builders and the numpy backend) --


def v_add(a, b, p, h):
    a, b = np.broadcast_arrays(np.asarray(a, np.int64), np.asarray(b, np.int64))
    if p == 2:
        return np.bitwise_xor(a, b)
    if h == 1:
        return (a + b) % p
    out = np.zeros(a.shape, dtype=np.int64)
    aa, bb, mul = a.copy(), b.copy(), 1
    for _ in range(h):
        out += ((aa + bb) % p) * mul
        aa //= p
        bb //= p
        mul *= p
    return out


def v_sub(a, b, p, h):
    a, b = np.broadcast_arrays(np.asarray(a, np.int64), np.asarray(b, np.int64))
    if p == 2:
        return np.bitwise_xor(a, b)
    if h == 1:
        return (a - b) % p
    out = np.zeros(a.shape, dtype=np.int64)
    aa, bb, mul = a.copy(), b.copy(), 1
    for _ in range(h):
        out += ((aa - bb) % p) * mul
        aa //= p
        bb //= p
        mul *= p
    return out


def v_neg(a, p, h):
    return v_sub(np.zeros_like(np.asarray(a, np.int64)), a, p, h)


def v_mul(a, b, q, logt, expt):
    a, b = np.broadcast_arrays(np.asarray(a, np.int64), np.asarray(b, np.int64))
    out = np.zeros(a.shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    if np.any(nz):
        out[nz] = expt[(logt[a[nz]] + logt[b[nz]]) % (q - 1)]
    return out


# -- numpy backend kernels -----------------------------------------------------
#
# Vectorized row operations carry a fixed per-call numpy cost, so eliminating
# a 4x4 decode system that way is pure overhead.  Below the cutoff the numpy
# backend runs the same algorithm as interpreted Python over plain ints
# (exact arithmetic: results are identical either way).

_SCALAR_CUTOFF = 400  # elements

_scalar_table_cache: dict[int, tuple] = {}


def _scalar_tables(logt, expt):
    hit = _scalar_table_cache.get(id(logt))
    if hit is None or hit[0] is not logt:
        hit = (logt, logt.tolist(), expt.tolist())
        _scalar_table_cache[id(logt)] = hit
    return hit[1], hit[2]


def _scalar_sub_fn(p, h):
    if p == 2:
        return lambda a, b: a ^ b
    if h == 1:
        return lambda a, b: (a - b) % p

    def sub(a, b):
        s, mul = 0, 1
        for _ in range(h):
            s += ((a - b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return s

    return sub


def _rank_scalar(m, p, h, q, logt, expt):
    lt, et = _scalar_tables(logt, expt)
    sub = _scalar_sub_fn(p, h)
    qm = q - 1
    rows = m.tolist()
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        rr = rows[r]
        li = (qm - lt[rr[c]]) % qm  # log of the pivot inverse
        for j in range(c, ncols):
            x = rr[j]
            if x:
                rr[j] = et[(lt[x] + li) % qm]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            if f:
                lf = lt[f]
                for j in range(c, ncols):
                    y = rr[j]
                    if y:
                        ri[j] = sub(ri[j], et[(lf + lt[y]) % qm])
        r += 1
    return r


def _solve_scalar(a, b, p, h, q, logt, expt):
    lt, et = _scalar_tables(logt, expt)
    sub = _scalar_sub_fn(p, h)
    qm = q - 1
    rows_a = a.tolist()
    rows_b = b.tolist()
    k = len(rows_a)
    w = len(rows_b[0]) if rows_b else 0
    for c in range(k):
        piv = -1
        for i in range(c, k):
            if rows_a[i][c]:
                piv = i
                break
        if piv < 0:
            return 1
        if piv != c:
            rows_a[c], rows_a[piv] = rows_a[piv], rows_a[c]
            rows_b[c], rows_b[piv] = rows_b[piv], rows_b[c]
        ac, bc = rows_a[c], rows_b[c]
        li = (qm - lt[ac[c]]) % qm
        for j in range(c, k):
            x = ac[j]
            if x:
                ac[j] = et[(lt[x] + li) % qm]
        for j in range(w):
            x = bc[j]
            if x:
                bc[j] = et[(lt[x] + li) % qm]
        for i in range(k):
            if i != c and rows_a[i][c]:
                ai, bi = rows_a[i], rows_b[i]
                lf = lt[ai[c]]
                for j in range(c, k):
                    y = ac[j]
                    if y:
                        ai[j] = sub(ai[j], et[(lf + lt[y]) % qm])
                for j in range(w):
                    y = bc[j]
                    if y:
                        bi[j] = sub(bi[j], et[(lf + lt[y]) % qm])
    a[:] = rows_a
    b[:] = rows_b
    return 0


def _rank_numpy(m, p, h, q, logt, expt):
    if m.size <= _SCALAR_CUTOFF:
        return _rank_scalar(m, p, h, q, logt, expt)
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        pinv = int(expt[(q - 1 - int(logt[m[r, c]])) % (q - 1)])
        m[r, c:] = v_mul(m[r, c:], pinv, q, logt, expt)
        f = m[r + 1 :, c]
        if f.size:
            m[r + 1 :, c:] = v_sub(
                m[r + 1 :, c:], v_mul(f[:, None], m[r, c:][None, :], q, logt, expt), p, h
            )
        r += 1
    return r


def _solve_numpy(a, b, p, h, q, logt, expt):
    if a.size <= _SCALAR_CUTOFF and b.size <= _SCALAR_CUTOFF:
        return _solve_scalar(a, b, p, h, q, logt, expt)
    k = a.shape[0]
    for c in range(k):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 1
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            b[[c, piv]] = b[[piv, c]]
        pinv = int(expt[(q - 1 - int(logt[a[c, c]])) % (q - 1)])
        a[c, c:] = v_mul(a[c, c:], pinv, q, logt, expt)
        b[c] = v_mul(b[c], pinv, q, logt, expt)
        f = a[:, c].copy()
        f[c] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            a[hit, c:] = v_sub(
                a[hit, c:], v_mul(f[hit, None], a[c, c:][None, :], q, logt, expt), p, h
            )
            b[hit] = v_sub(b[hit], v_mul(f[hit, None], b[c][None, :], q, logt, expt), p, h)
    return 0


def _matmul_numpy(a, b, p, h, q, logt, expt):
    n = a.shape[0]
    cols = b.shape[1]
    out = np.zeros((n, cols), dtype=np.int64)
    for t in range(a.shape[1]):
        out = v_add(out, v_mul(a[:, t][:, None], b[t][None, :], q, logt, expt), p, h)
    return out


def _mds_scan_numpy(m, combo, max_count, p, h, q, logt, expt):
    k, n = m.shape
    checked = 0
    while checked < max_count:
        sub = m[:, combo]
        checked += 1
        if _rank_numpy(sub, p, h, q, logt, expt) < k:
            return 1, checked
        i = k - 1
        while i >= 0 and combo[i] == n - k + i:
            i -= 1
        if i < 0:
            break
        combo[i] += 1
        combo[i + 1 :] = combo[i] + np.arange(1, k - i)
    return 0, checked


# -- public backend bindings ----------------------------------------------------

if BACKEND == "numba":
    rank_in_place = _rank_in_place
    solve_in_place = _solve_in_place
    matmul = _matmul
    mds_scan = _mds_scan
else:
    rank_in_place = _rank_numpy
    solve_in_place = _solve_numpy
    matmul = _matmul_numpy
    mds_scan = _mds_scan_numpy
