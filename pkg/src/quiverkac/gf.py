"""Exact linear algebra over small finite fields.

Field elements are encoded as integers ``0 .. q-1``.  For a prime field the
encoding is the residue; for ``F_{p^k}`` the integer ``c0 + c1*p + ...``
stands for the polynomial ``c0 + c1*x + ...`` modulo a fixed irreducible.
All arithmetic goes through lookup tables so that numpy fancy indexing
gives vectorised (batched) matrix operations for every supported ``q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DomainError

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# coefficient lists, ascending degree, monic
_IRREDUCIBLE = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, (1, 0, 1)),  # x^2 + 1
}


def _poly_mulmod(a, b, p, modulus):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for j in range(k + 1):
                prod[deg - k + j] = (prod[deg - k + j] - c * modulus[j]) % p
    return prod[:k]


def _digits(n, p, k):
    out = []
    for _ in range(k):
        out.append(n % p)
        n //= p
    return out


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field with ``q = p**k`` elements, backed by lookup tables."""

    q: int
    p: int
    k: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)  # inv[0] is 0 by convention
    sub: np.ndarray = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    @property
    def prime(self) -> bool:
        return self.k == 1

    # -- vectorised arithmetic -------------------------------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Batched matrix product over the field; broadcasts like ``@``."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.prime:
            return np.matmul(a, b) % self.p
        inner = a.shape[-1]
        shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
        if inner == 0:
            return np.zeros(shape, dtype=np.int64)
        terms = self.mul[a[..., :, :, None], b[..., None, :, :]]
        acc = terms[..., 0, :]
        for t in range(1, inner):
            acc = self.add[acc, terms[..., t, :]]
        return np.broadcast_to(acc, shape).copy()

    def scale(self, c, a) -> np.ndarray:
        return self.mul[np.asarray(c, dtype=np.int64), np.asarray(a, dtype=np.int64)]

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """Return the (cached) field with ``q`` elements."""
    if q not in SUPPORTED_Q:
        raise DomainError(f"unsupported field size q={q}; supported: {SUPPORTED_Q}")
    if q in _IRREDUCIBLE:
        p, modulus = _IRREDUCIBLE[q]
        k = len(modulus) - 1
    else:
        p, modulus, k = q, None, 1
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        dx = _digits(x, p, k)
        for y in range(q):
            dy = _digits(y, p, k)
            s = [(u + v) % p for u, v in zip(dx, dy)]
            add[x, y] = sum(c * p**i for i, c in enumerate(s))
            if modulus is None:
                mul[x, y] = (x * y) % p
            else:
                m = _poly_mulmod(dx, dy, p, modulus)
                mul[x, y] = sum(c * p**i for i, c in enumerate(m))
    neg = np.array([int(np.flatnonzero(add[x] == 0)[0]) for x in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = int(np.flatnonzero(mul[x] == 1)[0])
    sub = add[:, neg]
    for arr in (add, mul, neg, inv, sub):
        arr.setflags(write=False)
    return FieldSpec(q=q, p=p, k=k, add=add, mul=mul, neg=neg, inv=inv, sub=sub)


# -- single-matrix routines ----------------------------------------------------


def _as_matrix(m, cols=None) -> np.ndarray:
    arr = np.asarray(m, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 0 and cols is not None:
        arr = arr.reshape(0, cols)
    if arr.ndim != 2:
        raise DomainError(f"expected a 2-d matrix, got shape {arr.shape}")
    return arr


def rref(F: FieldSpec, M) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form (same shape, zero rows last) and rank."""
    R = _as_matrix(M).copy()
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul[F.inv[R[r, c]], R[r]]
        factors = R[:, c].copy()
        factors[r] = 0
        R = F.sub[R, F.mul[factors[:, None], R[r][None, :]]]
        r += 1
    return R, r


def rank(F: FieldSpec, M) -> int:
    M = _as_matrix(M)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def pivot_columns(R: np.ndarray) -> list[int]:
    """Pivot column of each nonzero row of a matrix already in RREF."""
    out = []
    for row in R:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            break
        out.append(int(nz[0]))
    return out


def nullspace(F: FieldSpec, M) -> "Subspace":
    """The subspace ``{x : M x = 0}`` of ``F^cols``."""
    M = _as_matrix(M)
    rows, cols = M.shape
    R, r = rref(F, M) if rows else (M, 0)
    pivots = pivot_columns(R[:r])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg[R[i, f]]
        basis.append(x)
    return Subspace.span(F, basis, cols)


def inverse(F: FieldSpec, M) -> np.ndarray:
    M = _as_matrix(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DomainError(f"cannot invert non-square matrix of shape {M.shape}")
    R, r = rref(F, np.hstack([M, F.identity(n)]))
    if r < n or not np.array_equal(R[:, :n], F.identity(n)):
        raise DomainError("matrix is singular")
    return R[:, n:]


def is_nilpotent(F: FieldSpec, M) -> bool:
    M = _as_matrix(M)
    n = M.shape[0]
    if n == 0:
        return True
    P = M
    for _ in range(n - 1):
        P = F.matmul(P, M)
    return not P.any()


# -- subspaces -----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F^n`` stored by its canonical RREF basis.

    Two ``Subspace`` objects over the same field are equal exactly when they
    are the same subspace.
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, F: FieldSpec, vectors, n: int) -> "Subspace":
        vecs = [np.asarray(v, dtype=np.int64).reshape(-1) for v in vectors]
        if not vecs:
            return cls(F, n, ())
        R, r = rref(F, np.vstack(vecs))
        return cls(F, n, tuple(tuple(int(x) for x in row) for row in R[:r]))

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, ())

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls.span(F, np.eye(n, dtype=np.int64), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.ambient_dim)

    @property
    def pivots(self) -> list[int]:
        return pivot_columns(self.matrix)

    def __contains__(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank(self.field, np.vstack([self.matrix, v])) == self.dim

    def issubspace(self, other: "Subspace") -> bool:
        if self.dim == 0:
            return True
        return rank(self.field, np.vstack([other.matrix, self.matrix])) == other.dim

    def annihilator(self) -> np.ndarray:
        """Matrix ``H`` with ``H @ z == 0`` exactly for ``z`` in the subspace."""
        return nullspace(self.field, self.matrix.reshape(self.dim, self.ambient_dim)).matrix

    def transform(self, A: np.ndarray) -> "Subspace":
        """Image under the linear map with matrix ``A`` (column convention)."""
        if self.dim == 0:
            return Subspace.zero(self.field, A.shape[0])
        rows = self.field.matmul(self.matrix, np.asarray(A).T)
        return Subspace.span(self.field, rows, A.shape[0])


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """Number of ``d``-dimensional subspaces of ``F_q^n`` (product formula)."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(F: FieldSpec, n: int, d: Optional[int] = None) -> Iterator[Subspace]:
    """Every subspace of ``F^n`` (of dimension ``d`` if given) exactly once.

    Walks RREF patterns: a pivot set, then every filling of the free slots
    to the right of each pivot.
    """
    dims = range(n + 1) if d is None else [d]
    for dd in dims:
        for pivots in itertools.combinations(range(n), dd):
            slots = [
                (i, c)
                for i, pc in enumerate(pivots)
                for c in range(pc + 1, n)
                if c not in pivots
            ]
            for values in itertools.product(range(F.q), repeat=len(slots)):
                M = np.zeros((dd, n), dtype=np.int64)
                for i, pc in enumerate(pivots):
                    M[i, pc] = 1
                for (i, c), val in zip(slots, values):
                    M[i, c] = val
                yield Subspace(F, n, tuple(tuple(int(x) for x in row) for row in M))


def all_matrices(F: FieldSpec, rows: int, cols: int) -> np.ndarray:
    """Every ``rows x cols`` matrix, stacked, row-major digit order."""
    n = rows * cols
    count = F.q**n
    idx = np.arange(count, dtype=np.int64)
    digits = np.empty((count, n), dtype=np.int64)
    for pos in range(n - 1, -1, -1):
        digits[:, pos] = idx % F.q
        idx = idx // F.q
    return digits.reshape(count, rows, cols)


def enumerate_matrices(
    F: FieldSpec, rows: int, cols: int, rank_filter: Optional[int | str] = None
) -> Iterator[np.ndarray]:
    """Stream every matrix, optionally only those of a given rank.

    ``rank_filter="max"`` keeps the maximal-rank matrices, i.e. rank
    ``min(rows, cols)``; an empty matrix is vacuously maximal.
    """
    target = min(rows, cols) if rank_filter == "max" else rank_filter
    mats = all_matrices(F, rows, cols)
    if target is not None:
        keep = batch_rank(F, mats) == target
        mats = mats[keep]
    yield from mats


# -- batched routines (used by the oracle) ------------------------------------


def _batch_eliminate(F: FieldSpec, A: np.ndarray, ncols: Optional[int] = None):
    A = np.array(A, dtype=np.int64, copy=True)
    B, n, m = A.shape
    ncols = m if ncols is None else ncols
    rk = np.zeros(B, dtype=np.int64)
    if B == 0 or n == 0:
        return A, rk
    row_ids = np.arange(n)
    for c in range(ncols):
        cand = (A[:, :, c] != 0) & (row_ids[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        b = np.flatnonzero(has)
        if b.size == 0:
            continue
        piv = cand.argmax(axis=1)[b]
        r = rk[b]
        row_r = A[b, r].copy()
        A[b, r] = A[b, piv]
        A[b, piv] = row_r
        A[b, r] = F.mul[F.inv[A[b, r, c]][:, None], A[b, r]]
        factors = A[b, :, c].copy()
        factors[np.arange(b.size), r] = 0
        A[b] = F.sub[A[b], F.mul[factors[:, :, None], A[b, r][:, None, :]]]
        rk[b] += 1
    return A, rk


def batch_rank(F: FieldSpec, A) -> np.ndarray:
    """Rank of each matrix in a stack of shape ``(B, n, m)``."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[1] == 0 or A.shape[2] == 0:
        return np.zeros(A.shape[0], dtype=np.int64)
    return _batch_eliminate(F, A)[1]


def batch_inverse(F: FieldSpec, A) -> np.ndarray:
    """Inverses of a stack of invertible square matrices."""
    A = np.asarray(A, dtype=np.int64)
    B, n, _ = A.shape
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))
    R, rk = _batch_eliminate(F, np.concatenate([A, eye], axis=2), ncols=n)
    if np.any(rk < n):
        raise DomainError("stack contains a singular matrix")
    return R[:, :, n:]


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


@lru_cache(maxsize=32)
def general_linear_group(F: FieldSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All elements of ``GL(n, F)`` and their inverses, as two stacks."""
    mats = all_matrices(F, n, n)
    if n:
        mats = mats[batch_rank(F, mats) == n]
        invs = batch_inverse(F, mats)
    else:
        invs = mats
    mats.setflags(write=False)
    invs.setflags(write=False)
    return mats, invs


def vectors(F: FieldSpec, n: int) -> np.ndarray:
    """Every vector of ``F^n`` as the rows of a matrix."""
    return all_matrices(F, 1, n).reshape(-1, n)


def check_field_axioms(F: FieldSpec) -> bool:
    """Exhaustive verification of the field axioms on the tables."""
    q = F.q
    e = range(q)
    add, mul = F.add, F.mul
    for x in e:
        if add[x, 0] != x or mul[x, 1] != x or add[x, F.neg[x]] != 0:
            return False
        if x and mul[x, F.inv[x]] != 1:
            return False
        for y in e:
            if add[x, y] != add[y, x] or mul[x, y] != mul[y, x]:
                return False
            for z in e:
                if add[add[x, y], z] != add[x, add[y, z]]:
                    return False
                if mul[mul[x, y], z] != mul[x, mul[y, z]]:
                    return False
                if mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]:
                    return False
    return True


def lincomb(F: FieldSpec, coeffs: Sequence[int], vecs: np.ndarray) -> np.ndarray:
    out = np.zeros(vecs.shape[1:], dtype=np.int64)
    for c, v in zip(coeffs, vecs):
        if c:
            out = F.add[out, F.mul[c, v]]
    return out
