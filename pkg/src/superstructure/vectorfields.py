"""Vector fields on the (0|n)-dimensional supermanifold.

A ``VectorField`` is a sparse sum of terms c * xi_S d_j, stored as
``{(mask, j): c}``.  Hamiltonian-type algebras are handled through their
generating functions (``SuperPolynomial``) with the odd Poisson bracket;
``hamiltonian`` maps a generating function to its field.
"""
from __future__ import annotations

from typing import Optional

from .grassmann import (
    Coordinates,
    GrassmannError,
    SuperPolynomial,
    format_terms,
    indices,
    mono_key,
    mono_mul,
    partial,
    partial_mono,
    popcount,
)


class VectorField:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {t: c for t, c in (terms or {}).items() if c != 0}
        for (m, j) in self.terms:
            if not 1 <= j <= n or m >> n:
                raise GrassmannError(f"term {(m, j)} outside vect(0|{n})")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "VectorField":
        """Build sum f_j d_j from ``[(f, j), ...]`` with f a SuperPolynomial."""
        out: dict = {}
        for f, j in pairs:
            for m, c in f.terms.items():
                out[(m, j)] = out.get((m, j), 0) + c
        return cls(n, out)

    @classmethod
    def d(cls, n: int, j: int, coeff=1) -> "VectorField":
        return cls(n, {(0, j): coeff})

    def coefficient(self, j: int) -> SuperPolynomial:
        return SuperPolynomial(self.n, {m: c for (m, jj), c in self.terms.items() if jj == j})

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        if other.n != self.n:
            raise GrassmannError("mismatched ambient")
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return VectorField(self.n, out)

    def __neg__(self):
        return VectorField(self.n, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(self.n, {t: c * v for t, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, SuperPolynomial):
            return poly_times_field(c, self)
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        """Weisfeiler degrees present (deg xi = 1, deg d = -1)."""
        return {popcount(m) - 1 for (m, _) in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise GrassmannError("degree of a zero or inhomogeneous field")
        return ds.pop()

    def parity(self) -> int:
        ps = {d % 2 for d in self.degrees()}
        if len(ps) != 1:
            raise GrassmannError("parity of a zero or inhomogeneous field")
        return ps.pop()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (mono_key(t[0][0]), t[0][1]))

    def to_str(self, coords: Optional[Coordinates] = None) -> str:
        coords = coords or Coordinates(self.n)

        def label(m, j):
            d = f"d{j}"
            return d if m == 0 else f"{coords.mono_str(m)}.{d}"

        return format_terms((label(m, j), c) for (m, j), c in self.sorted_terms())

    def __repr__(self):
        return f"VectorField({self.to_str()})"

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        return apply(self, f)


def poly_times_field(f: SuperPolynomial, D: VectorField) -> VectorField:
    out: dict = {}
    for a, ca in f.terms.items():
        for (b, j), cb in D.terms.items():
            r = mono_mul(a, b)
            if r is None:
                continue
            s, m = r
            out[(m, j)] = out.get((m, j), 0) + s * ca * cb
    return VectorField(D.n, out)


def apply(D: VectorField, f: SuperPolynomial) -> SuperPolynomial:
    """D(f) = sum_i f_i * d_i(f)."""
    if D.n != f.n:
        raise GrassmannError("mismatched ambient")
    out: dict = {}
    for (a, i), ca in D.terms.items():
        for b, cb in f.terms.items():
            r = partial_mono(i, b)
            if r is None:
                continue
            s1, bb = r
            r2 = mono_mul(a, bb)
            if r2 is None:
                continue
            s2, m = r2
            out[m] = out.get(m, 0) + s1 * s2 * ca * cb
    return SuperPolynomial(D.n, out)


def _term_bracket(a: int, i: int, b: int, j: int, out: dict, c) -> None:
    # [xi_a d_i, xi_b d_j] = xi_a d_i(xi_b) d_j - (-1)^{p1 p2} xi_b d_j(xi_a) d_i
    p1 = (popcount(a) + 1) & 1
    p2 = (popcount(b) + 1) & 1
    r = partial_mono(i, b)
    if r is not None:
        s1, bb = r
        r2 = mono_mul(a, bb)
        if r2 is not None:
            s2, m = r2
            out[(m, j)] = out.get((m, j), 0) + s1 * s2 * c
    r = partial_mono(j, a)
    if r is not None:
        s1, aa = r
        r2 = mono_mul(b, aa)
        if r2 is not None:
            s2, m = r2
            s = s1 * s2 * (-1 if p1 & p2 else 1)
            out[(m, i)] = out.get((m, i), 0) - s * c


def bracket(D1: VectorField, D2: VectorField) -> VectorField:
    """Supercommutator of superderivations, extended bilinearly."""
    if D1.n != D2.n:
        raise GrassmannError("mismatched ambient")
    out: dict = {}
    for (a, i), c1 in D1.terms.items():
        for (b, j), c2 in D2.terms.items():
            _term_bracket(a, i, b, j, out, c1 * c2)
    return VectorField(D1.n, out)


def divergence(D: VectorField) -> SuperPolynomial:
    out: dict = {}
    for (m, i), c in D.terms.items():
        r = partial_mono(i, m)
        if r is None:
            continue
        s, mm = r
        if popcount(m) & 1:
            s = -s
        out[mm] = out.get(mm, 0) + s * c
    return SuperPolynomial(D.n, out)


# --------------------------------------------------------------------------
# Poisson / Hamiltonian


def _pairs(split: tuple[int, int]):
    """(index, partner index) pairs of the form: xi_i <-> eta_i, zeta_j <-> zeta_j."""
    k, l = split
    out = []
    for i in range(1, k + 1):
        out.append((i, k + i))
        out.append((k + i, i))
    for j in range(1, l + 1):
        out.append((2 * k + j, 2 * k + j))
    return out


def _check_split(n: int, split) -> tuple[int, int]:
    if split is None:
        split = (n // 2, n % 2)
    k, l = split
    if 2 * k + l != n:
        raise GrassmannError(f"split {split} does not match n={n}")
    return (k, l)


def poisson(f: SuperPolynomial, g: SuperPolynomial, split=None) -> SuperPolynomial:
    """Odd Poisson bracket {f, g}; bilinear extension over the monomials of f."""
    if f.n != g.n:
        raise GrassmannError("mismatched split")
    split = _check_split(f.n, split)
    out: dict = {}
    for a, ca in f.terms.items():
        sgn = -1 if popcount(a) & 1 else 1
        for i, i2 in _pairs(split):
            r = partial_mono(i, a)
            if r is None:
                continue
            s1, aa = r
            for b, cb in g.terms.items():
                r2 = partial_mono(i2, b)
                if r2 is None:
                    continue
                s2, bb = r2
                r3 = mono_mul(aa, bb)
                if r3 is None:
                    continue
                s3, m = r3
                out[m] = out.get(m, 0) + sgn * s1 * s2 * s3 * ca * cb
    return SuperPolynomial(f.n, out)


def hamiltonian(f: SuperPolynomial, split=None) -> VectorField:
    """H_f = (-1)^{p(f)} sum (df/dxi_i d_eta_i + df/deta_i d_xi_i) + sum df/dzeta_j d_zeta_j."""
    split = _check_split(f.n, split)
    out: dict = {}
    for a, ca in f.terms.items():
        sgn = -1 if popcount(a) & 1 else 1
        for i, i2 in _pairs(split):
            r = partial_mono(i, a)
            if r is None:
                continue
            s, aa = r
            out[(aa, i2)] = out.get((aa, i2), 0) + sgn * s * ca
    return VectorField(f.n, out)


def xi_top(n: int) -> SuperPolynomial:
    return SuperPolynomial.monomial(n, range(1, n + 1))


def deform(D: VectorField) -> VectorField:
    """(1 + Xi) D as an honest field of vect(0|n)."""
    return D + poly_times_field(xi_top(D.n), D)


__all__ = [
    "VectorField",
    "apply",
    "bracket",
    "divergence",
    "poisson",
    "hamiltonian",
    "poly_times_field",
    "deform",
    "xi_top",
    "partial",
    "indices",
]
