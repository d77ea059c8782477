"""Graded ambient superalgebras with integral structure constants.

``build_algebra`` constructs vect, svect, tilde_svect, po, h and h_prime in
their standard gradings.  Each degree carries an ordered basis of honest
elements (vector fields, or generating functions for the Hamiltonian
series); brackets of basis elements are expanded back into the basis once,
and the resulting integer structure constants are what every other module
works with.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .field import QQ, Field
from .grassmann import Coordinates, SuperPolynomial, all_monomials, popcount
from .linalg import fraction_rref, left_kernel
from .vectorfields import VectorField, bracket, divergence, poisson

SERIES = ("vect", "svect", "tilde_svect", "po", "h", "h_prime")
HAMILTONIAN = ("po", "h", "h_prime")


class AlgebraError(ValueError):
    pass


def check_admissible(series: str, n: int) -> None:
    if series not in SERIES:
        raise AlgebraError(f"unknown series {series!r}")
    ok = {
        "vect": n >= 2,
        "svect": n >= 3,
        "tilde_svect": n >= 4 and n % 2 == 0,
        "po": n >= 2,
        "h": n >= 2,
        "h_prime": n >= 3,
    }[series]
    if not ok or n > 10:
        raise AlgebraError(f"{series}(0|{n}) is not admissible")


@dataclass
class _DegreeData:
    basis: tuple
    terms: list  # term keys in column order
    col: dict  # term -> column
    matrix: list  # basis rows over term columns (ints)
    pivots: list
    inverse: Optional[list]  # None when matrix[:, pivots] is the identity


@dataclass(eq=False)
class AlgebraDesc:
    """A built ambient algebra.

    Structure constants live in ``table[(i, j)][a][b] = ((c, coeff), ...)``
    with local indices inside the degree-i, degree-j and target components.
    """

    series: str
    n: int
    field: Field
    split: Optional[tuple[int, int]]
    modulus: Optional[int]
    degrees: tuple[int, ...]
    _data: dict
    table: dict
    _tensors: dict = dc_field(default_factory=dict, repr=False)

    # -- grading --------------------------------------------------------

    @property
    def kind(self) -> str:
        return "function" if self.series in HAMILTONIAN else "field"

    @property
    def coords(self) -> Coordinates:
        return Coordinates(self.n, self.split)

    @property
    def grading(self) -> str:
        return f"Z/{self.modulus}" if self.modulus else "Z"

    def dim(self, d: Optional[int] = None) -> int:
        if d is None:
            return sum(len(self._data[e].basis) for e in self.degrees)
        data = self._data.get(d)
        return len(data.basis) if data else 0

    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(d) for d in self.degrees)

    def target(self, i: int, j: int) -> Optional[int]:
        k = i + j
        if self.modulus:
            k = (k + 1) % self.modulus - 1
        return k if self.dim(k) else None

    def parity(self, d: int) -> int:
        return d % 2

    def basis(self, d: int) -> tuple:
        return self._data[d].basis if d in self._data else ()

    @property
    def top(self) -> int:
        return max(self.degrees)

    @property
    def bottom(self) -> int:
        return min(self.degrees)

    def over(self, field: Field) -> "AlgebraDesc":
        """Same algebra, scalars in another field."""
        if field == self.field:
            return self
        return AlgebraDesc(self.series, self.n, field, self.split, self.modulus,
                           self.degrees, self._data, self.table)

    def label(self) -> str:
        name = {"tilde_svect": "~svect", "h_prime": "h'"}.get(self.series, self.series)
        s = f"{name}(0|{self.n})"
        if self.split is not None and self.series in HAMILTONIAN and self.split != (self.n // 2, self.n % 2):
            s += f"[k={self.split[0]},l={self.split[1]}]"
        return s

    def __repr__(self):
        return f"<AlgebraDesc {self.label()} over {self.field!r} dims={self.dims()}>"

    # -- structure constants -------------------------------------------

    def sparse_table(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def tensor(self, i: int, j: int, p: int) -> np.ndarray:
        key = (i, j, p)
        T = self._tensors.get(key)
        if T is None:
            k = self.target(i, j)
            T = np.zeros((self.dim(i), self.dim(j), self.dim(k)), dtype=np.int64)
            for a, row in self.sparse_table(i, j).items():
                for b, terms in row.items():
                    for c, s in terms:
                        T[a, b, c] = s
            if p:
                T %= p
            self._tensors[key] = T
        return T

    def bracket_basis(self, i: int, a: int, j: int, b: int) -> dict:
        return dict(self.sparse_table(i, j).get(a, {}).get(b, ()))

    # -- elements -------------------------------------------------------

    def term_degree(self, term) -> int:
        if self.kind == "function":
            return popcount(term) - 2
        d = popcount(term[0]) - 1
        if self.modulus:
            d = (d + 1) % self.modulus - 1
        return d

    def element(self, d: int, vec) -> object:
        """Element of degree ``d`` with coordinates ``vec`` (dense or sparse)."""
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        basis = self.basis(d)
        acc: dict = {}
        for a, x in items:
            if not x:
                continue
            x = self.field(x) if self.field.p else x
            for t, c in _terms(basis[a]).items():
                acc[t] = acc.get(t, 0) + x * c
        return self._make(acc)

    def _make(self, terms: dict):
        if self.kind == "function":
            return SuperPolynomial(self.n, terms)
        return VectorField(self.n, terms)

    def vector(self, elem) -> dict[int, dict]:
        """Coordinates of ``elem`` per degree: ``{d: {col: coeff}}``.

        Raises AlgebraError when ``elem`` is not in the span of the basis.
        """
        if self.kind == "function" and not isinstance(elem, SuperPolynomial):
            raise AlgebraError("expected a generating function")
        if self.kind == "field" and not isinstance(elem, VectorField):
            raise AlgebraError("expected a vector field")
        if elem.n != self.n:
            raise AlgebraError("element lives in a different ambient")
        parts: dict[int, dict] = {}
        for t, c in _terms(elem).items():
            if self.series in ("h", "h_prime") and t == 0:
                continue  # constants are central and dropped
            d = self.term_degree(t)
            parts.setdefault(d, {})[t] = c
        out = {}
        for d, terms in parts.items():
            v = self._solve(d, terms)
            if v:
                out[d] = v
        return out

    def _solve(self, d: int, terms: dict) -> dict:
        data = self._data.get(d)
        if data is None:
            raise AlgebraError(f"degree {d} component is zero; element not in {self.label()}")
        cols = {}
        for t, c in terms.items():
            if t not in data.col:
                raise AlgebraError(f"term {t} not in {self.label()}")
            cols[data.col[t]] = c
        if data.inverse is None:
            coords = {a: cols.get(pc, 0) for a, pc in enumerate(data.pivots)}
        else:
            coords = {}
            for a in range(len(data.basis)):
                s = 0
                for r, pc in enumerate(data.pivots):
                    x = cols.get(pc, 0)
                    if x:
                        s += x * data.inverse[r][a]
                coords[a] = s
        coords = {a: x for a, x in coords.items() if x != 0}
        # verify
        back: dict = {}
        for a, x in coords.items():
            for c, y in enumerate(data.matrix[a]):
                if y:
                    back[c] = back.get(c, 0) + x * y
        back = {c: x for c, x in back.items() if x != 0}
        if back != {c: x for c, x in cols.items() if x != 0}:
            raise AlgebraError(f"element not in {self.label()} (degree {d})")
        return {a: _simplify(x) for a, x in coords.items()}

    def homogeneous_vector(self, elem) -> tuple[int, dict]:
        v = self.vector(elem)
        if len(v) != 1:
            raise AlgebraError("element is zero or not homogeneous")
        (d, vec), = v.items()
        return d, vec

    def elem_str(self, elem) -> str:
        return elem.to_str(self.coords)

    def basis_str(self, d: int, a: int) -> str:
        return self.elem_str(self.basis(d)[a])

    def bracket_elements(self, x, y):
        if self.kind == "function":
            r = poisson(x, y, self.split)
            if self.series in ("h", "h_prime"):
                r = SuperPolynomial(self.n, {m: c for m, c in r.terms.items() if m})
            return r
        return bracket(x, y)


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _terms(elem) -> dict:
    return elem.terms


def _field_terms(n: int, d: int) -> list:
    """Terms xi_S d_j of Weisfeiler degree d in canonical order."""
    return [(m, j) for m in all_monomials(n, d + 1) for j in range(1, n + 1)]


def _svect_basis(n: int, d: int) -> list[VectorField]:
    terms = _field_terms(n, d)
    if d == -1:
        return [VectorField(n, {t: 1}) for t in terms]
    targets = all_monomials(n, d)
    tcol = {m: i for i, m in enumerate(targets)}
    rows = []
    for t in terms:
        dv = divergence(VectorField(n, {t: 1}))
        rows.append({tcol[m]: c for m, c in dv.terms.items()})
    K = left_kernel(QQ, rows, len(targets))
    return [VectorField(n, {terms[c]: x for c, x in r.items()}) for r in K]


def _degree_data(basis: list, kind: str) -> _DegreeData:
    terms = []
    col = {}
    for e in basis:
        for t in sorted(e.terms, key=lambda t: (popcount(t[0]), t) if kind == "field" else (popcount(t), t)):
            if t not in col:
                col[t] = len(terms)
                terms.append(t)
    matrix = [[e.terms.get(t, 0) for t in terms] for e in basis]
    R, piv = fraction_rref([list(r) for r in matrix])
    if len(piv) != len(basis):
        raise AlgebraError("basis is not linearly independent")
    sub = [[matrix[a][pc] for pc in piv] for a in range(len(basis))]
    identity = all(sub[a][r] == (1 if a == r else 0) for a in range(len(basis)) for r in range(len(piv)))
    inverse = None
    if not identity:
        # coords * sub = v[piv]  =>  coords = v[piv] * sub^{-1}
        m = len(piv)
        aug = [list(map(Fraction, sub[r])) + [Fraction(int(r == c)) for c in range(m)] for r in range(m)]
        RR, _ = fraction_rref(aug)
        inv = [row[m:] for row in RR]  # sub^{-1}
        inverse = inv
    return _DegreeData(tuple(basis), terms, col, matrix, piv, inverse)


def _build_raw(series: str, n: int, split) -> dict[int, list]:
    if series == "vect":
        return {d: [VectorField(n, {t: 1}) for t in _field_terms(n, d)] for d in range(-1, n)}
    if series == "svect":
        return {d: _svect_basis(n, d) for d in range(-1, n)}
    if series == "tilde_svect":
        top = (1 << n) - 1
        out = {d: _svect_basis(n, d) for d in range(0, n - 1)}
        out[-1] = [VectorField(n, {(0, j): 1, (top, j): 1}) for j in range(1, n + 1)]
        return out
    lo, hi = {"po": (0, n), "h": (1, n), "h_prime": (1, n - 1)}[series]
    return {m - 2: [SuperPolynomial(n, {mask: 1}) for mask in all_monomials(n, m)] for m in range(lo, hi + 1)}


@lru_cache(maxsize=None)
def _build_cached(series: str, n: int, split) -> AlgebraDesc:
    raw = _build_raw(series, n, split)
    raw = {d: b for d, b in raw.items() if b}
    kind = "function" if series in HAMILTONIAN else "field"
    data = {d: _degree_data(b, kind) for d, b in raw.items()}
    modulus = n if series == "tilde_svect" else None
    degrees = tuple(sorted(data))
    desc = AlgebraDesc(series, n, QQ, split if kind == "function" else None, modulus, degrees, data, {})
    table: dict = {}
    for i in degrees:
        for j in degrees:
            k = desc.target(i, j)
            if k is None:
                continue
            block: dict = {}
            for a, x in enumerate(data[i].basis):
                row = {}
                for b, y in enumerate(data[j].basis):
                    r = desc.bracket_elements(x, y)
                    if r.is_zero():
                        continue
                    v = desc.vector(r)
                    if set(v) - {k}:
                        raise AlgebraError(f"bracket leaves degree {k} in {desc.label()}")
                    vec = v.get(k, {})
                    if vec:
                        if any(isinstance(c, Fraction) for c in vec.values()):
                            raise AlgebraError("non-integral structure constant")
                        row[b] = tuple(sorted(vec.items()))
                if row:
                    block[a] = row
            if block:
                table[(i, j)] = block
    desc.table.update(table)
    return desc


def build_algebra(series: str, n: int, field: Field = QQ, split=None) -> AlgebraDesc:
    """Construct ``series(0|n)`` over ``field``.

    For the Hamiltonian series ``split=(k, l)`` fixes the coordinates
    xi_1..xi_k, eta_1..eta_k, zeta_1..zeta_l (default ``(n//2, n%2)``).
    """
    check_admissible(series, n)
    if series in HAMILTONIAN:
        split = tuple(split) if split is not None else (n // 2, n % 2)
        if 2 * split[0] + split[1] != n or min(split) < 0:
            raise AlgebraError(f"split {split} inconsistent with n={n}")
    else:
        split = None
    return _build_cached(series, n, split).over(field)
