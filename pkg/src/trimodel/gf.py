"""Exact dense linear algebra over a prime field GF(p).

Matrices are numpy ``int64`` arrays holding residues in ``[0, p)``.
Every routine reduces its inputs modulo ``p`` first, so callers may pass
signed or unreduced integers.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, SearchBudgetExceeded

DEFAULT_BUDGET = 1 << 20


def as_matrix(a, p: int, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if m.ndim == 1 and rows is not None and cols is not None:
        m = m.reshape(rows, cols)
    if m.ndim != 2:
        if m.size == 0:
            m = m.reshape(rows or 0, cols or 0)
        else:
            raise DimensionMismatch(f"expected a 2-d array, got shape {m.shape}")
    return m % p


def _inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        table[x] = pow(x, p - 2, p)
    return table


_INV_CACHE: dict[int, np.ndarray] = {}


def inverse_scalar(x: int, p: int) -> int:
    inv = _INV_CACHE.get(p)
    if inv is None:
        inv = _INV_CACHE[p] = _inverse_table(p)
    x %= p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse")
    return int(inv[x])


def rref(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots are searched in the first ``ncols`` columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    limit = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = (m[r] * inverse_scalar(lead, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    m = np.asarray(a)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(a, p: int) -> list[np.ndarray]:
    """Basis of {x : a x = 0}, one array per basis vector."""
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise DimensionMismatch("kernel_basis needs a 2-d array")
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [_unit(cols, i) for i in range(cols)]
    r, pivots = rref(m, p)
    return _kernel_from_rref(r, pivots, cols, p)


def _unit(n: int, i: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    e[i] = 1
    return e


def _kernel_from_rref(r: np.ndarray, pivots: list[int], cols: int, p: int) -> list[np.ndarray]:
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for row, c in enumerate(pivots):
            x[c] = (-r[row, f]) % p
        basis.append(x)
    return basis


def kernel_matrix(a, p: int) -> np.ndarray:
    """Kernel basis stacked as columns (shape cols x k)."""
    m = np.asarray(a, dtype=np.int64)
    basis = kernel_basis(m, p)
    if not basis:
        return np.zeros((m.shape[1], 0), dtype=np.int64)
    return np.stack(basis, axis=1)


def solve_affine(a, b, p: int) -> tuple[np.ndarray, list[np.ndarray]] | None:
    """One solution of ``a x = b`` plus a kernel basis, or None if inconsistent."""
    m = np.asarray(a, dtype=np.int64)
    rhs = np.asarray(b, dtype=np.int64).reshape(-1)
    if m.ndim != 2 or m.shape[0] != rhs.shape[0]:
        raise DimensionMismatch(f"matrix {m.shape} vs right-hand side {rhs.shape}")
    rows, cols = m.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64), [_unit(cols, i) for i in range(cols)]
    aug = np.concatenate([m % p, (rhs % p)[:, None]], axis=1)
    r, pivots = rref(aug, p, ncols=cols)
    n = len(pivots)
    if np.any(r[n:, cols] % p):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = r[row, cols]
    return x, _kernel_from_rref(r[:, :cols], pivots, cols, p)


def inverse(a, p: int) -> np.ndarray | None:
    """Inverse of a square matrix, or None when singular."""
    m = np.asarray(a, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch("inverse needs a square matrix")
    if n == 0:
        return m.copy()
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, p, ncols=n)
    if len(pivots) < n:
        return None
    return r[:, n:] % p


def row_space_basis(a, p: int) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, m.shape[1] if m.ndim == 2 else 0), dtype=np.int64)
    r, pivots = rref(m, p)
    return r[: len(pivots)]


def in_span(vectors: np.ndarray, x, p: int) -> bool:
    """Whether ``x`` lies in the row span of ``vectors``."""
    v = np.asarray(vectors, dtype=np.int64)
    x = np.asarray(x, dtype=np.int64).reshape(1, -1)
    if v.size == 0:
        return not np.any(x % p)
    return rank(np.concatenate([v, x]), p) == rank(v, p)


def check_budget(count: int, budget: int | None, what: str = "enumeration") -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if count > limit:
        raise SearchBudgetExceeded(count, limit, what)


def enumerate_vectors(dim: int, p: int, budget: int | None = None) -> Iterator[np.ndarray]:
    """All p**dim vectors, lexicographic in base-p digits (first coordinate most significant)."""
    check_budget(p**dim, budget, f"vectors of length {dim} over GF({p})")
    for digits in itertools.product(range(p), repeat=dim):
        yield np.array(digits, dtype=np.int64)


def all_vectors(dim: int, p: int, budget: int | None = None) -> np.ndarray:
    """Same order as :func:`enumerate_vectors`, materialized as a (p**dim, dim) array."""
    count = p**dim
    check_budget(count, budget, f"vectors of length {dim} over GF({p})")
    idx = np.arange(count, dtype=np.int64)
    out = np.zeros((count, dim), dtype=np.int64)
    for j in range(dim - 1, -1, -1):
        out[:, j] = idx % p
        idx //= p
    return out


def vector_index(v, p: int) -> int:
    """Position of ``v`` in the lexicographic enumeration."""
    n = 0
    for x in np.asarray(v, dtype=np.int64).reshape(-1):
        n = n * p + int(x % p)
    return n


def enumerate_affine(
    particular: np.ndarray,
    kernel: Sequence[np.ndarray],
    p: int,
    budget: int | None = None,
) -> Iterator[np.ndarray]:
    """Points of ``particular + span(kernel)`` with coefficients in lexicographic order."""
    k = len(kernel)
    check_budget(p**k, budget, f"affine space of dimension {k}")
    if k == 0:
        yield particular % p
        return
    kmat = np.stack(list(kernel), axis=0)
    for coeffs in itertools.product(range(p), repeat=k):
        yield (particular + np.asarray(coeffs, dtype=np.int64) @ kmat) % p


def span_points(basis: np.ndarray, p: int, budget: int | None = None) -> np.ndarray:
    """All points of the row span of ``basis`` (rows assumed independent)."""
    b = np.asarray(basis, dtype=np.int64)
    k = b.shape[0]
    coeffs = all_vectors(k, p, budget)
    if k == 0:
        return np.zeros((1, b.shape[1] if b.ndim == 2 else 0), dtype=np.int64)
    return (coeffs @ b) % p
