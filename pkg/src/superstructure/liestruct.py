"""Graded subspaces and subalgebras of a built ambient algebra.

A ``GradedSubalgebra`` stores, per degree, the canonical row-reduced basis
of its component as dense integer tuples over the ambient degree basis.
Over Q the rows are primitive integer vectors with positive pivots, fully
reduced; over F_p they are the reduced echelon rows with entries in
[0, p).  Two spans are equal iff their stored rows are identical.
"""
from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .algebra import AlgebraDesc, AlgebraError
from .field import Field
from .linalg import backend, left_kernel


class StructureError(ValueError):
    pass


class GradedSubalgebra:
    """Graded subspace of ``ambient`` (closed under bracket unless noted)."""

    __slots__ = ("ambient", "components", "name", "note", "_rows")

    def __init__(self, ambient: AlgebraDesc, components: dict, name: str = "", note: str = ""):
        self.ambient = ambient
        self.components = {d: tuple(tuple(int(x) for x in r) for r in rows)
                           for d, rows in sorted(components.items()) if rows}
        self.name = name
        self.note = note
        self._rows: dict = {}

    # -- basic data -----------------------------------------------------

    @property
    def field(self) -> Field:
        return self.ambient.field

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def dim(self, d: Optional[int] = None) -> int:
        if d is None:
            return sum(len(r) for r in self.components.values())
        return len(self.components.get(d, ()))

    def dims(self, degrees=None) -> tuple[int, ...]:
        degrees = self.ambient.degrees if degrees is None else degrees
        return tuple(self.dim(d) for d in degrees)

    def sdim(self, d: Optional[int] = None) -> tuple[int, int]:
        """Superdimension (even | odd)."""
        ev = od = 0
        for e in self.degrees():
            if d is not None and e != d:
                continue
            if self.ambient.parity(e):
                od += self.dim(e)
            else:
                ev += self.dim(e)
        return ev, od

    def rows(self, d: int):
        """Backend rows of the degree-``d`` component."""
        r = self._rows.get(d)
        if r is None:
            be = backend(self.field)
            r = be.from_dense(self.components.get(d, ()))
            if r is None:
                r = be.empty(self.ambient.dim(d))
            self._rows[d] = r
        return r

    def span(self, d: int):
        be = backend(self.field)
        S = be.span(self.ambient.dim(d))
        if self.dim(d):
            S.add_many(self.rows(d))
        return S

    def key(self):
        a = self.ambient
        return (a.series, a.n, a.split, a.field.p, tuple(self.components.items()))

    def __eq__(self, other):
        if not isinstance(other, GradedSubalgebra):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __le__(self, other: "GradedSubalgebra") -> bool:
        return contains(other, self)

    def __lt__(self, other: "GradedSubalgebra") -> bool:
        return contains(other, self) and self != other

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<GradedSubalgebra{nm} in {self.ambient.label()} dims={self.dims()}>"

    def elements(self, d: int) -> list:
        return [self.ambient.element(d, r) for r in self.components.get(d, ())]

    def basis_strings(self, d: int) -> list[str]:
        return [self.ambient.elem_str(e) for e in self.elements(d)]

    def negative_part(self) -> dict:
        return {d: r for d, r in self.components.items() if d < 0}

    def part(self, degrees: Iterable[int]) -> "GradedSubalgebra":
        keep = set(degrees)
        return GradedSubalgebra(self.ambient, {d: r for d, r in self.components.items() if d in keep})

    def renamed(self, name: str, note: Optional[str] = None) -> "GradedSubalgebra":
        return GradedSubalgebra(self.ambient, self.components, name, self.note if note is None else note)

    def over(self, field: Field) -> "GradedSubalgebra":
        """Reduce an integral Q-basis to another field (re-canonicalised)."""
        if field == self.field:
            return self
        if not self.field.exact:
            raise StructureError("can only move Q-subalgebras to F_p")
        amb = self.ambient.over(field)
        return from_rows(amb, {d: [list(r) for r in rows] for d, rows in self.components.items()},
                         self.name, self.note)


# --------------------------------------------------------------------------
# construction


def _canon(amb: AlgebraDesc, d: int, rows) -> tuple:
    be = backend(amb.field)
    S = be.span(amb.dim(d))
    if be.nrows(rows):
        S.add_many(rows)
    return tuple(be.to_dense(S.rows(), amb.dim(d)))


def from_rows(amb: AlgebraDesc, comps: dict, name: str = "", note: str = "") -> GradedSubalgebra:
    """Subspace spanned by dense rows (lists over the degree basis)."""
    be = backend(amb.field)
    out = {}
    for d, rows in comps.items():
        rows = [list(r) for r in rows]
        if not rows:
            continue
        out[d] = _canon(amb, d, be.from_dense(rows))
    return GradedSubalgebra(amb, out, name, note)


def _from_spans(amb: AlgebraDesc, spans: dict, name="", note="") -> GradedSubalgebra:
    be = backend(amb.field)
    return GradedSubalgebra(amb, {d: tuple(be.to_dense(S.rows(), amb.dim(d)))
                                  for d, S in spans.items() if S.dim}, name, note)


def element_rows(amb: AlgebraDesc, elems) -> dict:
    """Dense coordinate rows per degree for a list of (possibly inhomogeneous) elements."""
    out: dict = {}
    for e in elems:
        for d, vec in amb.vector(e).items():
            row = [0] * amb.dim(d)
            for a, x in vec.items():
                row[a] = x
            out.setdefault(d, []).append(row)
    return out


def span_elements(amb: AlgebraDesc, elems, name: str = "", note: str = "") -> GradedSubalgebra:
    """Graded span of the homogeneous parts of ``elems`` (no closure)."""
    return from_rows(amb, element_rows(amb, elems), name, note)


def zero(amb: AlgebraDesc) -> GradedSubalgebra:
    return GradedSubalgebra(amb, {})


def whole(amb: AlgebraDesc, degrees=None) -> GradedSubalgebra:
    degrees = amb.degrees if degrees is None else degrees
    comps = {}
    for d in degrees:
        m = amb.dim(d)
        comps[d] = [[int(i == j) for j in range(m)] for i in range(m)]
    return from_rows(amb, comps)


def _brackets_into(amb, be, i, A, j, B, spans):
    """Add all brackets [A, B] into ``spans``; returns (degree, new rows) or None."""
    k, out = be.bracket(amb, i, A, j, B)
    if k is None or not be.nrows(out):
        return None
    added = spans[k].add_many(out)
    if be.nrows(added):
        return k, added
    return None


def closure_rows(amb: AlgebraDesc, gens: dict) -> dict:
    """Spans of the smallest graded subalgebra containing the given rows.

    Worklist of newly added rows; each batch is bracketed against the
    current span of every degree.  For any pair of basis vectors the one
    added later was bracketed against a span containing the other.
    """
    be = backend(amb.field)
    spans = {d: be.span(amb.dim(d)) for d in amb.degrees}
    work = []
    for d in sorted(gens):
        rows = gens[d]
        if not be.nrows(rows):
            continue
        added = spans[d].add_many(rows)
        if be.nrows(added):
            work.append((d, added))
    while work:
        d, new = work.pop(0)
        for e in amb.degrees:
            if not spans[e].dim:
                continue
            r = _brackets_into(amb, be, d, new, e, spans[e].rows(), spans)
            if r is not None:
                work.append(r)
    return spans


def closure(generators, amb: AlgebraDesc, name: str = "") -> GradedSubalgebra:
    """Smallest graded subalgebra containing ``generators``.

    ``generators`` is a list of elements or a GradedSubalgebra/row dict.
    """
    if isinstance(generators, GradedSubalgebra):
        gens = {d: generators.rows(d) for d in generators.degrees()}
    elif isinstance(generators, dict):
        be = backend(amb.field)
        gens = {d: be.from_dense(r) for d, r in generators.items() if len(r)}
    else:
        be = backend(amb.field)
        gens = {d: be.from_dense(r) for d, r in element_rows(amb, list(generators)).items()}
    return _from_spans(amb, closure_rows(amb, gens), name)


def extend(s: GradedSubalgebra, d: int, rows) -> GradedSubalgebra:
    """closure(s ∪ rows) where ``rows`` are backend rows of degree ``d``."""
    gens = {e: s.rows(e) for e in s.degrees()}
    be = backend(s.field)
    gens[d] = be.concat(gens[d], rows) if d in gens else rows
    return _from_spans(s.ambient, closure_rows(s.ambient, gens))


def is_bracket_closed(s: GradedSubalgebra) -> bool:
    amb = s.ambient
    be = backend(s.field)
    degs = s.degrees()
    spans = {d: s.span(d) for d in degs}
    for a, i in enumerate(degs):
        for j in degs[a:]:
            k, out = be.bracket(amb, i, s.rows(i), j, s.rows(j))
            if k is None or not be.nrows(out):
                continue
            if k not in spans:
                return False
            if not _all_in(be, spans[k], out):
                return False
    return True


def _all_in(be, S, rows) -> bool:
    if hasattr(be, "p"):
        return not S.reduce_many(rows).any()
    return all(S.contains(v) for v in rows)


def derived(s: GradedSubalgebra) -> GradedSubalgebra:
    """[s, s]."""
    amb = s.ambient
    be = backend(s.field)
    spans = {d: be.span(amb.dim(d)) for d in amb.degrees}
    degs = s.degrees()
    for a, i in enumerate(degs):
        for j in degs[a:]:
            _brackets_into(amb, be, i, s.rows(i), j, s.rows(j), spans)
    return _from_spans(amb, spans)


def derived_series(s: GradedSubalgebra, check: bool = True) -> list[GradedSubalgebra]:
    """s = s^(0) ⊇ s^(1) ⊇ ...; ends at 0 or at the first repeated member."""
    if check and not is_bracket_closed(s):
        raise StructureError("derived series of a subspace that is not bracket-closed")
    out = [s]
    while out[-1].dim():
        nxt = derived(out[-1])
        if nxt.dim() == out[-1].dim():
            break
        out.append(nxt)
    return out


def is_solvable(s: GradedSubalgebra, check: bool = True) -> bool:
    return derived_series(s, check)[-1].dim() == 0


def degree_zero_solvable(s: GradedSubalgebra) -> bool:
    """Solvability of s_0 alone (the reduction of the grading lemma)."""
    return is_solvable(s.part([0]), check=False)


def contains(big: GradedSubalgebra, small: GradedSubalgebra) -> bool:
    if big.ambient.field != small.ambient.field:
        raise StructureError("comparing subspaces over different fields")
    for d in small.degrees():
        if not big.dim(d):
            return False
        S = big.span(d)
        for r in small.rows(d):
            if not S.contains(r):
                return False
    return True


def intersection(a: GradedSubalgebra, b: GradedSubalgebra) -> GradedSubalgebra:
    from .linalg import intersect
    amb = a.ambient
    be = backend(amb.field)
    comps = {}
    for d in set(a.degrees()) & set(b.degrees()):
        rows = intersect(amb.field, a.rows(d), b.rows(d), amb.dim(d))
        if be.nrows(rows):
            comps[d] = be.to_dense(rows, amb.dim(d))
    return GradedSubalgebra(amb, comps)


def sum_spaces(a: GradedSubalgebra, b: GradedSubalgebra) -> GradedSubalgebra:
    amb = a.ambient
    be = backend(amb.field)
    comps = {}
    for d in set(a.degrees()) | set(b.degrees()):
        comps[d] = _canon(amb, d, be.concat(a.rows(d), b.rows(d)))
    return GradedSubalgebra(amb, comps)


def is_ideal(a: GradedSubalgebra, h: GradedSubalgebra) -> bool:
    """[h, a] ⊆ a; requires a ⊆ h."""
    if not contains(h, a):
        raise StructureError("is_ideal: a is not contained in h")
    amb = h.ambient
    be = backend(h.field)
    for i in h.degrees():
        for j in a.degrees():
            k, out = be.bracket(amb, i, h.rows(i), j, a.rows(j))
            if k is None or not be.nrows(out):
                continue
            if not a.dim(k):
                return False
            if not _all_in(be, a.span(k), out):
                return False
    return True


def annihilator(s: GradedSubalgebra, k: int, neg: dict):
    """Rows of {x ∈ s_k : [x, neg] = 0} (coefficients w.r.t. the ambient basis)."""
    amb = s.ambient
    be = backend(s.field)
    A = s.rows(k)
    blocks = []
    for j, B in neg.items():
        _, _, M = be.bracket_concat(amb, k, A, j, B)
        blocks.append((M, _width(amb, k, j, be.nrows(B))))
    if not blocks:
        return A
    M = _hstack(be, blocks, be.nrows(A))
    K = left_kernel(s.field, M, sum(w for _, w in blocks))
    return _combine(be, K, A, amb.dim(k))


def is_transitive(s: GradedSubalgebra) -> bool:
    neg = {d: s.rows(d) for d in s.degrees() if d < 0}
    for k in s.degrees():
        if k < 0:
            continue
        if not neg:
            return False
        if backend(s.field).nrows(annihilator(s, k, neg)):
            return False
    return True


# --------------------------------------------------------------------------
# linear conditions [x, v_j] ∈ T


def _width(amb, i, j, nb):
    k = amb.target(i, j)
    return nb * (amb.dim(k) if k is not None else 0)


def _hstack(be, blocks, nrows):
    """Concatenate row blocks side by side."""
    if hasattr(be, "p"):
        mats = [M for M, w in blocks if w]
        if not mats:
            return np.zeros((nrows, 0), dtype=np.int64)
        return np.hstack(mats)
    out = [dict() for _ in range(nrows)]
    off = 0
    for M, w in blocks:
        for r, row in enumerate(M):
            for c, x in row.items():
                out[r][off + c] = x
        off += w
    return out


def _combine(be, K, A, ncols):
    """Rows sum_a K[r, a] * A[a], nonzero ones."""
    if hasattr(be, "p"):
        if not K.shape[0]:
            return be.empty(ncols)
        return be.nonzero((np.asarray(K) @ A) % be.p)
    out = []
    for kv in K:
        acc: dict = {}
        for a, x in kv.items():
            for c, y in A[a].items():
                acc[c] = acc.get(c, 0) + x * y
        acc = {c: v for c, v in acc.items() if v}
        if acc:
            out.append(acc)
    return out


def solve_condition(amb: AlgebraDesc, k: int, cand, conds: list):
    """Rows of {x ∈ span(cand) ⊆ g_k : [x, v] ∈ T for every (j, V, T) in conds}.

    ``conds`` holds triples (j, V rows of degree j, target rows T of degree
    target(k, j)).  Solved as one left kernel of the stacked matrix
    [cand brackets | ...] over [T placed in block (j, v)].
    """
    be = backend(amb.field)
    ncand = be.nrows(cand)
    if not ncand:
        return be.empty(amb.dim(k))
    blocks = []
    extra = []  # (block offset, width per v, T rows, count of v)
    off = 0
    for j, V, T in conds:
        nv = be.nrows(V)
        kk, dk, M = be.bracket_concat(amb, k, cand, j, V)
        w = nv * dk
        blocks.append((M, w))
        extra.append((off, dk, T, nv))
        off += w
    width = off
    top = _hstack(be, blocks, ncand)
    rows = [top]
    for off, dk, T, nv in extra:
        nt = be.nrows(T)
        if not nt or not dk:
            continue
        for s in range(nv):
            o = off + s * dk
            if hasattr(be, "p"):
                Z = np.zeros((nt, width), dtype=np.int64)
                Z[:, o:o + dk] = T
                rows.append(Z)
            else:
                rows.append([{o + c: x for c, x in t.items()} for t in T])
    if hasattr(be, "p"):
        M = np.vstack(rows)
    else:
        M = [r for block in rows for r in block]
    if width == 0:
        return cand
    K = left_kernel(amb.field, M, width)
    if hasattr(be, "p"):
        K = np.asarray(K)[:, :ncand] if K.shape[0] else np.zeros((0, ncand), dtype=np.int64)
    else:
        K = [{a: x for a, x in kv.items() if a < ncand} for kv in K]
        K = [kv for kv in K if kv]
    return _combine(be, K, cand, amb.dim(k))


def unit_rows(amb: AlgebraDesc, d: int):
    be = backend(amb.field)
    m = amb.dim(d)
    return be.unit(m, range(m))


def rows_of(amb: AlgebraDesc, d: int, dense) -> object:
    be = backend(amb.field)
    r = be.from_dense([list(x) for x in dense])
    return be.empty(amb.dim(d)) if r is None else r


def canonical_component(amb: AlgebraDesc, d: int, rows) -> tuple:
    return _canon(amb, d, rows)


def describe(s: GradedSubalgebra) -> str:
    lines = [repr(s)]
    for d in s.degrees():
        lines.append(f"  deg {d}: " + ", ".join(s.basis_strings(d)))
    return "\n".join(lines)


__all__ = [
    "GradedSubalgebra",
    "StructureError",
    "AlgebraError",
    "closure",
    "closure_rows",
    "extend",
    "derived",
    "derived_series",
    "is_solvable",
    "degree_zero_solvable",
    "is_transitive",
    "is_ideal",
    "is_bracket_closed",
    "contains",
    "intersection",
    "sum_spaces",
    "span_elements",
    "from_rows",
    "whole",
    "zero",
    "solve_condition",
    "describe",
]
