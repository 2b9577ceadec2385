"""MDS verification and generator constructions.

``is_mds`` is the exhaustive checker: it enumerates every k-column subset in
lexicographic order and rank-checks each one, returning the first dependent
subset as a reproducible witness.  The other constructions are the
Reed-Solomon generator (power rows over nonzero evaluation points), the
unit-column supplement, the uniform-matroid representation (a column prefix
of the supplemented Pascal matrix), and the cancellation step that exposes
the supplemented matrix's block structure.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels
from .fields import GF
from .matrices import MatrixGF
from .pascal import supplemented_pascal

DEFAULT_SUBSET_CAP = 10**7

# Subset count below which threading is pure overhead.
_PARALLEL_THRESHOLD = 4096


class SubsetCapExceeded(RuntimeError):
    """The verifier refuses to guess: C(n, k) exceeded the enumeration cap."""


@dataclass(frozen=True)
class MdsVerdict:
    is_mds: bool
    witness: list[int] | None  # first dependent k-subset, lexicographically
    subsets_checked: int


def unrank_combination(index: int, n: int, k: int) -> list[int]:
    """The index-th k-subset of [0, n) in lexicographic order."""
    if not 0 <= index < comb(n, k):
        raise ValueError(f"combination index {index} out of range")
    combo = []
    x = 0
    for slot in range(k):
        remaining = k - slot - 1
        while comb(n - x - 1, remaining) <= index:
            index -= comb(n - x - 1, remaining)
            x += 1
        combo.append(x)
        x += 1
    return combo


def _scan_chunk(data, start_rank, count, n, k, tables):
    combo = np.array(unrank_combination(start_rank, n, k), dtype=np.int64)
    found, checked = kernels.mds_scan(data, combo, count, *tables)
    return int(found), combo.tolist(), int(checked)


def is_mds(m: MatrixGF, cap: int = DEFAULT_SUBSET_CAP, threads: int = 1) -> MdsVerdict:
    """Exhaustively verify that every k columns of m are independent.

    Chunks of the lexicographic subset sequence may be verified in parallel;
    the merged verdict (earliest witness) is identical to the single-threaded
    one.  Raises SubsetCapExceeded when C(n, k) > cap.
    """
    k, n = m.rows, m.cols
    if n < k:
        raise ValueError(f"matrix must have at least k = {k} columns, got {n}")
    total = comb(n, k)
    if total > cap:
        raise SubsetCapExceeded(
            f"C({n},{k}) = {total} subsets exceeds the enumeration cap {cap}"
        )
    tables = m.field.tables()
    data = m.data

    if threads <= 1 or total < _PARALLEL_THRESHOLD:
        found, witness, checked = _scan_chunk(data, 0, total, n, k, tables)
        if found:
            return MdsVerdict(False, witness, checked)
        return MdsVerdict(True, None, checked)

    bounds = np.linspace(0, total, threads + 1, dtype=np.int64)
    jobs = [
        (int(lo), int(hi - lo)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo
    ]
    with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
        results = list(
            pool.map(lambda j: (j[0], _scan_chunk(data, j[0], j[1], n, k, tables)), jobs)
        )
    for start, (found, witness, checked) in results:  # chunk order = lex order
        if found:
            return MdsVerdict(False, witness, start + checked)
    return MdsVerdict(True, None, total)


def rs_generator(field: GF, k: int, n: int) -> MatrixGF:
    """Reed-Solomon generator: entry (m, j) = sigma(j+1)^m, a k x n matrix
    over the nonzero evaluation points sigma(1..n)."""
    q = field.q
    if n > q - 1:
        raise ValueError(f"n = {n} exhausts the {q - 1} nonzero evaluation points")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k} n={n}")
    _, _, _, logt, expt = field.tables()
    pts = np.arange(1, n + 1, dtype=np.int64)
    rows = np.empty((k, n), dtype=np.int64)
    rows[0] = 1
    for m in range(1, k):
        rows[m] = kernels.v_mul(rows[m - 1], pts, q, logt, expt)
    return MatrixGF(field, rows)


def supplement(m: MatrixGF) -> MatrixGF:
    """Append the unit column s_k = (0,...,0,1)^T."""
    s = np.zeros((m.rows, 1), dtype=np.int64)
    s[m.rows - 1, 0] = 1
    return MatrixGF(m.field, np.hstack([m.data, s]))


def uniform_matroid_representation(field: GF, k: int, n: int) -> MatrixGF:
    """A k x n matrix over GF(q) representing the uniform matroid U_n^k:
    the first n columns of the supplemented Pascal matrix.

    Refuses n > q+1 (no guarantee holds there) rather than attempting it.
    """
    q = field.q
    if not 1 <= k <= q:
        raise ValueError(f"k must be in [1, {q}], got {k}")
    if not k <= n:
        raise ValueError(f"need k <= n, got k={k} n={n}")
    if n > q + 1:
        raise ValueError(f"n = {n} exceeds q+1 = {q + 1}; no representation is guaranteed")
    return MatrixGF(field, supplemented_pascal(field, k).data[:, :n])


def decompose_supplemented(m: MatrixGF) -> MatrixGF:
    """Cancel the last row of a supplemented k x (q+1) matrix against its
    unit column: column j gains -entry(k-1, j) * s_k for j < q.

    The result's top (k-1) x q block is the order-(k-1) truncated Pascal
    matrix (the first k-1 rows are untouched) and its last row is
    (0,...,0,1), showing the unit column orthogonal to all others.
    """
    k, cols = m.rows, m.cols
    q = m.field.q
    if k < 2 or cols != q + 1:
        raise ValueError(f"not in supplemented shape: expected k>=2 and {q + 1} columns")
    s = np.zeros(k, dtype=np.int64)
    s[k - 1] = 1
    if not np.array_equal(m.data[:, q], s):
        raise ValueError("not in supplemented shape: last column is not (0,...,0,1)")
    out = m.data.copy()
    # Subtracting entry(k-1, j) * s_k zeroes exactly the last-row entry of
    # column j and leaves every other row alone.
    out[k - 1, :q] = 0
    return MatrixGF(m.field, out)
