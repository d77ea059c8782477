"""Exact row reduction over Q and F_p.

Two backends share one small interface so that the Lie-theoretic code is
written once:

* ``QBackend`` keeps rows as sparse ``{column: int}`` dicts and eliminates
  fraction-free; every stored row is primitive with a positive pivot and the
  row set is fully reduced, so the stored rows are a canonical form of the
  span.
* ``FpBackend`` keeps rows as dense ``int64`` numpy arrays in reduced row
  echelon form (pivots equal to 1); a batch of vectors is reduced against
  the span with a single matrix product.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .field import Field


# --------------------------------------------------------------------------
# Q: sparse fraction-free rows


def _primitive(v: dict) -> dict:
    if not v:
        return v
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = v[min(v)]
    if lead < 0:
        g = -g
    if g == 1:
        return v
    return {c: x // g for c, x in v.items()}


def int_vector(v) -> dict:
    """Sparse integer multiple of a vector given densely or as a dict."""
    items = v.items() if isinstance(v, dict) else enumerate(v)
    d = {c: Fraction(x) for c, x in items if x != 0}
    den = 1
    for x in d.values():
        den = den * x.denominator // gcd(den, x.denominator)
    return {c: int(x * den) for c, x in d.items()}


class QSpan:
    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, v: dict) -> dict:
        """Scaled residue of ``v`` (zero iff ``v`` lies in the span)."""
        v = dict(v)
        for c in [c for c in v if c in self._rows]:
            x = v.get(c, 0)
            if not x:
                continue
            r = self._rows[c]
            a = r[c]
            if a != 1:
                v = {k: a * y for k, y in v.items()}
            for k, y in r.items():
                z = v.get(k, 0) - x * y
                if z:
                    v[k] = z
                else:
                    v.pop(k, None)
        return _primitive(v)

    def residue(self, v: dict) -> dict:
        """Exact residue ``v - sum(t_r * row_r)``, zero on every pivot column."""
        v = {k: Fraction(x) for k, x in v.items() if x}
        for c in [c for c in v if c in self._rows]:
            x = v.get(c, 0)
            if not x:
                continue
            r = self._rows[c]
            t = x / r[c]
            for k, y in r.items():
                z = v.get(k, 0) - t * y
                if z:
                    v[k] = z
                else:
                    v.pop(k, None)
        return v

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def add(self, v: dict):
        """Insert ``v``; returns the new canonical row or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        c = min(r)
        a = r[c]
        for pc, row in list(self._rows.items()):
            x = row.get(c, 0)
            if not x:
                continue
            b = row[pc]
            new = {k: a * y for k, y in row.items()}
            for k, y in r.items():
                z = new.get(k, 0) - x * y
                if z:
                    new[k] = z
                else:
                    new.pop(k, None)
            self._rows[pc] = _primitive(new)
            assert self._rows[pc][pc] > 0 and b > 0
        self._rows[c] = r
        return r

    def add_many(self, vs: Iterable[dict]) -> list[dict]:
        out = []
        for v in vs:
            r = self.add(v)
            if r is not None:
                out.append(r)
        return out

    def rows(self) -> list[dict]:
        return [self._rows[c] for c in sorted(self._rows)]


class QBackend:
    field: Field

    def __init__(self, field: Field):
        self.field = field

    def span(self, ncols: int) -> QSpan:
        return QSpan(ncols)

    def from_dense(self, rows: Sequence[Sequence]) -> list[dict]:
        return [int_vector(r) for r in rows]

    def to_dense(self, rows, ncols: int) -> list[tuple]:
        out = []
        for r in rows:
            t = [0] * ncols
            for c, x in r.items():
                t[c] = x
            out.append(tuple(t))
        return out

    def nrows(self, rows) -> int:
        return len(rows)

    def empty(self, ncols: int):
        return []

    def concat(self, a, b):
        return list(a) + list(b)

    def unit(self, ncols: int, cols: Sequence[int]):
        return [{c: 1} for c in cols]

    def nonzero(self, rows):
        return [r for r in rows if r]

    def bracket(self, amb, i: int, A, j: int, B):
        """All brackets ``[a, b]`` for a in A (degree i), b in B (degree j)."""
        k = amb.target(i, j)
        if k is None or not A or not B:
            return k, []
        table = amb.sparse_table(i, j)
        out = []
        for a in A:
            for b in B:
                acc: dict = {}
                for x, ax in a.items():
                    row = table.get(x)
                    if row is None:
                        continue
                    for y, by in b.items():
                        terms = row.get(y)
                        if terms is None:
                            continue
                        f = ax * by
                        for c, s in terms:
                            acc[c] = acc.get(c, 0) + f * s
                acc = {c: v for c, v in acc.items() if v}
                if acc:
                    out.append(_primitive(acc))
        return k, out

    def bracket_concat(self, amb, i: int, A, j: int, B):
        """Row per a in A: the coordinates of ``[a, b]`` for all b in B, side by side.

        Unlike ``bracket`` this is linear in ``a`` (no normalisation, no
        dropped rows), so its left kernel is meaningful.
        """
        k = amb.target(i, j)
        dk = amb.dim(k) if k is not None else 0
        table = amb.sparse_table(i, j) if k is not None else {}
        out = []
        for a in A:
            acc: dict = {}
            for s, b in enumerate(B):
                off = s * dk
                for x, ax in a.items():
                    row = table.get(x)
                    if row is None:
                        continue
                    for y, by in b.items():
                        terms = row.get(y)
                        if terms is None:
                            continue
                        f = ax * by
                        for c, t in terms:
                            acc[off + c] = acc.get(off + c, 0) + f * t
            out.append({c: v for c, v in acc.items() if v})
        return k, dk, out

    def augment(self, rows, ncols: int):
        """Rows ``r_i | e_i`` for computing left kernels."""
        return [dict(r) | {ncols + i: 1} for i, r in enumerate(rows)]

    def split_aug(self, rows, ncols: int):
        """Kernel part of a reduced augmented row set."""
        return [{c - ncols: x for c, x in r.items()} for r in rows if min(r) >= ncols]


# --------------------------------------------------------------------------
# F_p: dense numpy rows


class FpSpan:
    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.R = np.zeros((0, ncols), dtype=np.int64)
        self.piv = np.zeros(0, dtype=np.int64)

    @property
    def dim(self) -> int:
        return self.R.shape[0]

    def pivots(self) -> list[int]:
        return [int(c) for c in self.piv]

    def reduce_many(self, V: np.ndarray) -> np.ndarray:
        V = np.asarray(V, dtype=np.int64).reshape(-1, self.ncols) % self.p
        if self.piv.size and V.shape[0]:
            V = (V - V[:, self.piv] @ self.R) % self.p
        return V

    def reduce(self, v):
        return self.reduce_many(v)[0]

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def add_many(self, V) -> np.ndarray:
        W = self.reduce_many(V)
        W = W[W.any(axis=1)]
        if not W.shape[0]:
            return W
        Rn, pn = rref_mod(W, self.p)
        if self.piv.size:
            self.R = (self.R - self.R[:, pn] @ Rn) % self.p
        R = np.vstack([self.R, Rn])
        piv = np.concatenate([self.piv, np.asarray(pn, dtype=np.int64)])
        order = np.argsort(piv, kind="stable")
        self.R, self.piv = R[order], piv[order]
        return Rn

    def add(self, v):
        r = self.add_many(v)
        return r[0] if r.shape[0] else None

    def rows(self) -> np.ndarray:
        return self.R


_INV: dict[int, np.ndarray] = {}


def _inverses(p: int) -> np.ndarray:
    t = _INV.get(p)
    if t is None:
        t = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            t[a] = pow(a, -1, p)
        _INV[p] = t
    return t


def rref_mod(W: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    W = np.array(W, dtype=np.int64) % p
    nrows, ncols = W.shape
    inv = _inverses(p)
    r = 0
    pivs = []
    # row operations never make a zero column non-zero
    for c in np.flatnonzero(W.any(axis=0)):
        if r == nrows:
            break
        nz = W[r:, c].nonzero()[0]
        if not nz.size:
            continue
        i = r + nz[0]
        if i != r:
            W[[r, i]] = W[[i, r]]
        W[r] = W[r] * inv[W[r, c]] % p
        col = W[:, c].copy()
        col[r] = 0
        if col.any():
            W -= col[:, None] * W[r]
            W %= p
        pivs.append(int(c))
        r += 1
    return W[:r], pivs


class FpBackend:
    def __init__(self, field: Field):
        self.field = field
        self.p = field.p

    def span(self, ncols: int) -> FpSpan:
        return FpSpan(ncols, self.p)

    def from_dense(self, rows: Sequence[Sequence]):
        p = self.p
        out = []
        for r in rows:
            out.append([self.field(x).v for x in r])
        if not out:
            return None
        return np.asarray(out, dtype=np.int64) % p

    def to_dense(self, rows, ncols: int) -> list[tuple]:
        if rows is None:
            return []
        return [tuple(int(x) for x in r) for r in rows]

    def nrows(self, rows) -> int:
        return 0 if rows is None else rows.shape[0]

    def empty(self, ncols: int):
        return np.zeros((0, ncols), dtype=np.int64)

    def concat(self, a, b):
        return np.vstack([a, b])

    def unit(self, ncols: int, cols: Sequence[int]):
        M = np.zeros((len(cols), ncols), dtype=np.int64)
        for i, c in enumerate(cols):
            M[i, c] = 1
        return M

    def nonzero(self, rows):
        return rows[rows.any(axis=1)]

    def bracket(self, amb, i: int, A, j: int, B):
        k = amb.target(i, j)
        if k is None or A is None or B is None or not A.shape[0] or not B.shape[0]:
            return k, None
        T = amb.tensor(i, j, self.p)  # (d_i, d_j, d_k)
        p = self.p
        di, dj, dk = T.shape
        tmp = (A @ T.reshape(di, dj * dk)) % p  # (r, dj*dk)
        tmp = tmp.reshape(-1, dj, dk)
        out = np.einsum("sb,rbc->rsc", B, tmp) % p
        out = out.reshape(-1, dk)
        return k, out[out.any(axis=1)]  # zero brackets dropped, as over Q

    def bracket_concat(self, amb, i: int, A, j: int, B):
        k = amb.target(i, j)
        dk = amb.dim(k) if k is not None else 0
        r = 0 if A is None else A.shape[0]
        s = 0 if B is None else B.shape[0]
        if k is None or not r or not s:
            return k, dk, np.zeros((r, s * dk), dtype=np.int64)
        T = amb.tensor(i, j, self.p)
        p = self.p
        di, dj, _ = T.shape
        tmp = ((A @ T.reshape(di, dj * dk)) % p).reshape(r, dj, dk)
        out = np.einsum("sb,rbc->rsc", B, tmp) % p
        return k, dk, out.reshape(r, s * dk)

    def augment(self, rows, ncols: int):
        m = rows.shape[0]
        return np.hstack([rows % self.p, np.eye(m, dtype=np.int64)])

    def split_aug(self, rows, ncols: int):
        keep = [r for r in rows if not r[:ncols].any()]
        if not keep:
            return np.zeros((0, rows.shape[1] - ncols), dtype=np.int64)
        return np.asarray(keep)[:, ncols:]


def backend(field: Field):
    return QBackend(field) if field.p == 0 else FpBackend(field)


# --------------------------------------------------------------------------
# generic helpers


def left_kernel(field: Field, rows, ncols: int):
    """Basis of ``{c : sum_i c_i rows_i = 0}`` as backend rows."""
    be = backend(field)
    m = be.nrows(rows)
    if m == 0:
        return be.empty(0)
    S = be.span(ncols + m)
    S.add_many(be.augment(rows, ncols))
    return be.split_aug(S.rows(), ncols)


def span_of(field: Field, rows, ncols: int):
    S = backend(field).span(ncols)
    if rows is not None:
        S.add_many(rows)
    return S


def canonical(field: Field, rows, ncols: int) -> tuple[tuple, ...]:
    be = backend(field)
    S = span_of(field, rows, ncols)
    return tuple(be.to_dense(S.rows(), ncols))


def intersect(field: Field, A, B, ncols: int):
    """Rows spanning span(A) ∩ span(B)."""
    be = backend(field)
    na, nb = be.nrows(A), be.nrows(B)
    if na == 0 or nb == 0:
        return be.empty(ncols)
    K = left_kernel(field, be.concat(A, B), ncols)
    out = []
    if field.p == 0:
        for kv in K:
            acc: dict = {}
            for i, x in kv.items():
                if i < na:
                    for c, y in A[i].items():
                        acc[c] = acc.get(c, 0) + x * y
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out.append(acc)
        return canonical_rows(field, out, ncols)
    M = (np.asarray(K)[:, :na] @ A) % field.p
    return canonical_rows(field, M, ncols)


def canonical_rows(field: Field, rows, ncols: int):
    return span_of(field, rows, ncols).rows()


def fraction_rref(M: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Plain RREF over Q with Fraction entries (small dense matrices)."""
    M = [[Fraction(x) for x in row] for row in M]
    if not M:
        return [], []
    nrows, ncols = len(M), len(M[0])
    r = 0
    pivs = []
    for c in range(ncols):
        i = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if i is None:
            continue
        M[r], M[i] = M[i], M[r]
        a = M[r][c]
        M[r] = [x / a for x in M[r]]
        for t in range(nrows):
            if t != r and M[t][c] != 0:
                f = M[t][c]
                M[t] = [x - f * y for x, y in zip(M[t], M[r])]
        pivs.append(c)
        r += 1
        if r == nrows:
            break
    return M[:r], pivs
