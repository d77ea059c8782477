"""Maximal graded solvable subalgebras: ms0, msc, msV and the small cases.

Every construction that has two independent descriptions (a prolongation
and an explicit monomial span) computes both and asserts they agree.
Hamiltonian algebras are handled through generating functions in the
coordinates x1..xK (xi), e1..eK (eta), z1..zL (zeta).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .algebra import AlgebraDesc, build_algebra
from .field import QQ, Field
from .grassmann import SuperPolynomial, all_monomials, indices, mask_of, popcount
from .liestruct import (
    GradedSubalgebra,
    closure,
    contains,
    element_rows,
    from_rows,
    intersection,
    is_bracket_closed,
    is_solvable,
    span_elements,
    whole,
)
from .prolong import cartan_prolong, stabilizer, v_star
from .vectorfields import VectorField, deform


class CatalogError(ValueError):
    pass


# --------------------------------------------------------------------------
# degree-0 Borel data


def _vf(n, mask, j, c=1):
    return VectorField(n, {(mask, j): c})


def _bit(i):
    return 1 << (i - 1)


def borel0_elements(series: str, n: int, split=None) -> list:
    if series == "vect":
        return [_vf(n, _bit(i), j) for i in range(1, n + 1) for j in range(1, i + 1)]
    if series in ("svect", "tilde_svect"):
        out = [_vf(n, _bit(i), j) for i in range(1, n + 1) for j in range(1, i)]
        out += [_vf(n, _bit(i), i) - _vf(n, _bit(i + 1), i + 1) for i in range(1, n)]
        return out
    if series in ("h", "h_prime", "po"):
        k, l = split if split is not None else (n // 2, n % 2)
        if l > 1:
            raise CatalogError("no rational upper-triangular Borel for more than one zeta")
        out = []
        for i in range(1, k + 1):
            for j in range(1, i):
                out.append(SuperPolynomial.monomial(n, [i, j]))  # xi_i xi_j, i > j
            for j in range(i, k + 1):
                out.append(SuperPolynomial.monomial(n, [i, k + j]))  # xi_i eta_j, i <= j
            if l:
                out.append(SuperPolynomial.monomial(n, [i, 2 * k + 1]))  # xi_i zeta
        return out
    raise CatalogError(f"unknown series {series!r}")


def borel0(series: str, n: int, field: Field = QQ, split=None) -> GradedSubalgebra:
    """Triangular maximal solvable subalgebra of g_0 (lower for vect/svect, upper for h)."""
    amb = build_algebra(series, n, field, split)
    return span_elements(amb, borel0_elements(series, n, amb.split), name="borel0")


def ms0(series: str, n: int, field: Field = QQ) -> GradedSubalgebra:
    """borel0 plus every positive ambient component."""
    amb = build_algebra(series, n, field)
    b = borel0(series, n, field)
    comps = dict(b.components)
    for d in amb.degrees:
        if d > 0:
            comps[d] = whole(amb, [d]).components[d]
    note = ""
    if (series, n) in (("vect", 2), ("h", 4), ("h_prime", 4)):
        note = "not maximal: invariant under a degree -1 element, contained in msV"
    return GradedSubalgebra(amb, comps, "ms0", note)


# --------------------------------------------------------------------------
# msc


def msc_vect_elements(n: int) -> list:
    out = []
    for mask in range(1 << n):
        for j in range(1, n + 1):
            if all(i >= j for i in indices(mask)):
                out.append(_vf(n, mask, j))
    return out


def msc_h_elements(n: int) -> list:
    k, l = n // 2, n % 2
    out = []
    xs = range(1, k + 1)
    for r in range(0, k + 1):
        for I in itertools.combinations(xs, r):
            if r:
                out.append(SuperPolynomial.monomial(n, I))  # pure xi
            for j in xs:
                if all(i <= j for i in I):
                    out.append(SuperPolynomial.monomial(n, list(I) + [k + j]))
            if l:
                out.append(SuperPolynomial.monomial(n, list(I) + [2 * k + 1]))
    return out


def _restrict_to(amb: AlgebraDesc, big: GradedSubalgebra) -> GradedSubalgebra:
    """Re-express a subspace of another ambient (given by elements) in ``amb``."""
    elems = [e for d in big.degrees() for e in big.elements(d)]
    return span_elements(amb, elems)


def svect_part(s_vect: GradedSubalgebra, field: Field = QQ) -> GradedSubalgebra:
    """s ∩ svect(0|n) for s ⊆ vect(0|n), in svect coordinates."""
    n = s_vect.ambient.n
    vect = s_vect.ambient
    sv = build_algebra("svect", n, field)
    sv_in_vect = span_elements(vect, [e for d in sv.degrees for e in sv.basis(d)])
    return _restrict_to(sv, intersection(s_vect, sv_in_vect))


MSC_MIN = {"vect": 2, "svect": 3, "h": 4, "h_prime": 4}


def msc(series: str, n: int, field: Field = QQ) -> GradedSubalgebra:
    """(g_{-1}, borel0)_*, asserted equal to the explicit monomial description."""
    if series == "tilde_svect":
        raise CatalogError("~svect has no maximal solvable subalgebra with full degree -1 part "
                           "(its degree -1 component generates the whole algebra)")
    if series not in ("vect", "svect", "h", "h_prime"):
        raise CatalogError(f"msc not defined for {series}")
    if n < MSC_MIN[series]:
        raise CatalogError(f"msc({series}, {n}) outside the classified range")
    amb = build_algebra(series, n, field)
    b0 = borel0(series, n, field)
    gm = whole(amb, [-1])
    pro = cartan_prolong(gm, b0, amb, name="msc")
    if series == "vect":
        explicit = span_elements(amb, msc_vect_elements(n))
    elif series == "svect":
        explicit = svect_part(msc("vect", n, field), field)
    else:
        elems = msc_h_elements(n)
        top = (1 << n) - 1
        if series == "h_prime":
            elems = [f for f in elems if top not in f.terms]
        explicit = span_elements(amb, elems)
    if pro != explicit:
        raise CatalogError(f"msc({series}, {n}): prolongation and monomial description differ")
    return pro.renamed("msc")


def star_identity(k: int, odd: bool) -> dict:
    """Dimension-level check of the msc(h) structure formulas for h(0|2k[+1]).

    Right-hand side: dim of the quotient of Lambda(xi) by constants (even
    case) or of Lambda(xi) ⊗ hei modulo the line 1 ⊗ z (odd case), plus
    dim msc(vect(0|k)) = 2^{k+1} - 2.
    """
    n = 2 * k + int(odd)
    lhs = msc_dim_h(n)
    vect_part = 2 ** (k + 1) - 2
    if odd:
        lam = 2 ** (k + 1) - 1
        literal = 2 * (2 ** k - 1) + vect_part
    else:
        lam = 2 ** k - 1
        literal = lam + vect_part
    rhs = lam + vect_part
    return {"n": n, "k": k, "odd": odd, "dim_msc": lhs, "formula": rhs,
            "literal_reading": literal, "ok": lhs == rhs}


def msc_dim_h(n: int) -> int:
    """dim msc(h(0|n)), via the prolongation for small n and the monomial count otherwise."""
    if n <= 7:
        return msc("h", n).dim()
    return len(msc_h_elements(n))


# --------------------------------------------------------------------------
# msV for vect / svect / ~svect


def msV_vect_elements(n: int, k: int) -> list:
    """The three summands of the normal form for V = <d_1..d_k> in vect(0|n)."""
    low = range(1, k + 1)
    high = range(k + 1, n + 1)
    out = []
    # msc of vect(xi_1..xi_k)
    for r in range(k + 1):
        for I in itertools.combinations(low, r):
            for j in low:
                if all(i >= j for i in I):
                    out.append(_vf(n, mask_of(I), j))
    # Lambda^{>0}(xi_{k+1}..xi_n) ⊗ vect(xi_1..xi_k)
    for r in range(1, n - k + 1):
        for J in itertools.combinations(high, r):
            for s in range(k + 1):
                for I in itertools.combinations(low, s):
                    for j in low:
                        out.append(_vf(n, mask_of(I) | mask_of(J), j))
    # Lambda(xi_1..xi_k) ⊗ ms0 of vect(xi_{k+1}..xi_n)
    inner = []
    for a in high:
        for b in high:
            if a >= b:
                inner.append((_bit(a), b))
    for r in range(2, n - k + 1):
        for J in itertools.combinations(high, r):
            for b in high:
                inner.append((mask_of(J), b))
    for s in range(k + 1):
        for I in itertools.combinations(low, s):
            for m, b in inner:
                out.append(_vf(n, mask_of(I) | m, b))
    return out


def _check_k(series, n, k):
    if not 1 <= k < n:
        raise CatalogError(f"k={k} out of range 1..{n - 1}")


def msV_vect(series: str, n: int, k: int, field: Field = QQ, variant: str = "svect") -> GradedSubalgebra:
    """msV for V = <d_1..d_k> (deformed by (1 + Xi) for ~svect).

    For ~svect ``variant`` selects which undeformed prolong is transported:
    "svect" (the one that is certified) or "vect" (raises, since the
    deformed vect prolong is not contained in ~svect).
    """
    _check_k(series, n, k)
    amb = build_algebra(series, n, field)
    V = [[int(i == j) for j in range(n)] for i in range(k)]
    if series == "vect":
        pro = cartan_prolong(V, borel0("vect", n, field), amb)
        explicit = span_elements(amb, msV_vect_elements(n, k))
        if pro != explicit:
            raise CatalogError(f"msV(vect, {n}, {k}): prolong and three-summand span differ")
        return pro.renamed("msV", f"V = <d1..d{k}>")
    if series == "svect":
        pro = cartan_prolong(V, borel0("svect", n, field), amb)
        explicit = svect_part(msV_vect("vect", n, k, field), field)
        if pro != explicit:
            raise CatalogError(f"msV(svect, {n}, {k}): prolong and vect-intersection differ")
        return pro.renamed("msV", f"V = <d1..d{k}>")
    if series == "tilde_svect":
        direct = cartan_prolong(V, borel0("tilde_svect", n, field), amb)
        transported = deformed_prolong(n, k, variant, field)
        if direct != transported:
            raise CatalogError(f"msV(~svect, {n}, {k}): direct prolong and transported {variant} prolong differ")
        return direct.renamed("msV", f"V = <d1..d{k}> (1 + Xi)")
    raise CatalogError(f"msV_vect not defined for {series}")


def deformed_prolong(n: int, k: int, variant: str, field: Field = QQ) -> GradedSubalgebra:
    """(undeformed prolong) ⊗ (1 + Xi), expressed in ~svect coordinates.

    Raises CatalogError if some deformed element is not in ~svect, or the
    span is not bracket-closed there.
    """
    if variant not in ("vect", "svect"):
        raise CatalogError(f"unknown variant {variant!r}")
    amb = build_algebra("tilde_svect", n, field)
    src = msV_vect(variant, n, k, field)
    elems = []
    for d in src.degrees():
        for e in src.elements(d):
            if variant == "svect":
                e = _to_vect(e)
            elems.append(deform(e))
    try:
        s = span_elements(amb, elems, name="msV")
    except Exception as exc:  # not in the deformed algebra
        raise CatalogError(f"(vect prolong)(1 + Xi) is not contained in ~svect(0|{n}): {exc}") from None
    if not is_bracket_closed(s):
        raise CatalogError(f"({variant} prolong)(1 + Xi) is not bracket-closed in ~svect(0|{n})")
    return s


def _to_vect(e):
    return VectorField(e.n, dict(e.terms))


# --------------------------------------------------------------------------
# Witt shapes and msV for h


@dataclass(frozen=True)
class WittShape:
    k: int
    l: int
    m: int
    za: int = 0
    zb: int = 0

    def __post_init__(self):
        if min(self.k, self.l, self.m) < 0 or self.za not in (0, 1) or self.zb not in (0, 1):
            raise CatalogError(f"bad shape {self}")

    @property
    def n(self) -> int:
        return 2 * (self.k + self.l + self.m) + self.za + self.zb

    @property
    def dim_V(self) -> int:
        return self.k + 2 * self.l + self.za

    @property
    def dim_Vperp(self) -> int:
        return self.k + 2 * self.m + self.zb

    @property
    def split(self) -> tuple[int, int]:
        return (self.k + self.l + self.m, self.za + self.zb)

    def valid(self) -> bool:
        return self.dim_V > 0 and self.dim_Vperp > 0

    @classmethod
    def parse(cls, text: str) -> "WittShape":
        vals = {"k": 0, "l": 0, "m": 0, "za": 0, "zb": 0}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, v = part.partition("=")
            key = key.strip()
            if key not in vals:
                raise CatalogError(f"unknown shape key {key!r}")
            vals[key] = int(v)
        return cls(**vals)

    def __str__(self):
        return f"k={self.k},l={self.l},m={self.m},za={self.za},zb={self.zb}"

    # coordinate indices in the ambient split (K, L)
    def coords(self) -> dict:
        k, l, m = self.k, self.l, self.m
        K = k + l + m
        c = {
            "xi": [i for i in range(1, k + 1)],
            "eta": [K + i for i in range(1, k + 1)],
            "xa": [k + i for i in range(1, l + 1)],
            "ea": [K + k + i for i in range(1, l + 1)],
            "xb": [k + l + i for i in range(1, m + 1)],
            "eb": [K + k + l + i for i in range(1, m + 1)],
            "za": [2 * K + 1] if self.za else [],
            "zb": [2 * K + 1 + self.za] if self.zb else [],
        }
        return c

    def V_indices(self) -> list[int]:
        c = self.coords()
        return c["xi"] + c["xa"] + c["ea"] + c["za"]


def is_singular(shape: WittShape) -> bool:
    return shape.k <= 1 and shape.m == 0 and shape.zb == 1


def shapes(n: int) -> list[WittShape]:
    """All shapes with 0 ≠ V ≠ g_{-1} in h(0|n)."""
    out = []
    for za in (0, 1):
        for zb in (0, 1):
            rest = n - za - zb
            if rest < 0 or rest % 2:
                continue
            half = rest // 2
            for k in range(half + 1):
                for l in range(half - k + 1):
                    s = WittShape(k, l, half - k - l, za, zb)
                    if s.valid():
                        out.append(s)
    return out


def shape_of(V_idx, n: int, split=None) -> WittShape:
    """Shape of a span of standard coordinates (given by index), if it is in normal form.

    Accepts V spanned by coordinate vectors whose arrangement matches the
    standard embedding; anything else raises with a diagnostic.
    """
    V_idx = sorted(set(V_idx))
    split = split or (n // 2, n % 2)
    for s in shapes(n):
        if s.split == split and sorted(s.V_indices()) == V_idx:
            return s
    raise CatalogError(f"V = {V_idx} is not in the standard Witt normal form for split {split}")


def _shape_class(shape: WittShape):
    c = shape.coords()
    X = mask_of(c["xi"])
    E = mask_of(c["eta"])
    A = mask_of(c["xa"] + c["ea"] + c["za"])
    B = mask_of(c["xb"] + c["eb"] + c["zb"])
    return c, X, E, A, B


def _in_msc_h_local(mask: int, xs: list, es: list, z: list) -> bool:
    """Pure local monomial in msc of h(xs, es, z) (upper-triangular)."""
    I = [xs.index(i) for i in indices(mask) if i in xs]
    J = [es.index(i) for i in indices(mask) if i in es]
    has_z = any(i in z for i in indices(mask))
    if mask == 0:
        return False
    if has_z:
        return not J
    if not J:
        return True
    if len(J) > 1:
        return False
    return all(i <= J[0] for i in I)


def _in_ms0_h_local(mask: int, xs: list, es: list, z: list) -> bool:
    """Monomial in ms0 of h(xs, es, z): borel part in Lambda-degree 2, everything above."""
    d = popcount(mask)
    if d >= 3:
        return True
    if d != 2:
        return False
    a, b = indices(mask)
    if a in xs and b in xs:
        return True
    if a in xs and b in es:
        return xs.index(a) <= es.index(b)
    if a in xs and b in z:
        return True
    return False


def msV_h_monomials(shape: WittShape, series: str = "h") -> list[int]:
    c, X, E, A, B = _shape_class(shape)
    n = shape.n
    top = (1 << n) - 1
    out = []
    for mask in range(1, 1 << n):
        if series == "h_prime" and mask == top:
            continue
        dx = popcount(mask & X)
        db = popcount(mask & B)
        de = popcount(mask & E)
        keep = False
        if dx >= 2 and db == 0:
            keep = True
        elif dx >= 1 and db >= 1:
            keep = True
        elif dx == 0 and db >= 2:
            keep = _in_ms0_h_local(mask & B, c["xb"], c["eb"], c["zb"])
        elif dx == 1 and db == 0:
            j = c["xi"].index(indices(mask & X)[0])
            keep = all(c["eta"].index(i) >= j for i in indices(mask & E))
        elif dx == 0 and db == 0 and de == 0:
            keep = _in_msc_h_local(mask & A, c["xa"], c["ea"], c["za"])
        if keep:
            out.append(mask)
    return out


def V_rows(shape: WittShape, amb: AlgebraDesc) -> list:
    idx = shape.V_indices()
    rows = []
    for i in idx:
        row = [0] * amb.dim(-1)
        d, vec = amb.homogeneous_vector(SuperPolynomial(amb.n, {_bit(i): 1}))
        for a, x in vec.items():
            row[a] = x
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _msV_h_cached(shape: WittShape, series: str, p: int, check: bool):
    field = Field(p)
    n = shape.n
    amb = build_algebra(series, n, field, shape.split)
    s = span_elements(amb, [SuperPolynomial(n, {m: 1}) for m in msV_h_monomials(shape, series)],
                      name="msV", note=str(shape))
    if not check:
        return s
    V = from_rows(amb, {-1: V_rows(shape, amb)})
    if s.part([-1]) != V:
        raise CatalogError(f"msV_h {shape}: negative part is not V")
    if not is_bracket_closed(s):
        raise CatalogError(f"msV_h {shape}: monomial span not bracket-closed")
    if not is_solvable(s):
        raise CatalogError(f"msV_h {shape}: not solvable")
    vs = v_star(V.rows(-1), amb)
    if not contains(vs, s):
        raise CatalogError(f"msV_h {shape}: not contained in V_*")
    pro = cartan_prolong(V.rows(-1), s.part([0]), amb)
    if pro != s:
        raise CatalogError(f"msV_h {shape}: differs from the prolong of its own (V, s_0)")
    if is_singular(shape):
        s = GradedSubalgebra(amb, s.components, "msV",
                             f"{shape}: singular, strictly contained in a larger solvable subalgebra")
    return s


def msV_h(n: int, shape: WittShape, field: Field = QQ, series: str = "h", check: bool = True) -> GradedSubalgebra:
    """msV in h(0|n) (or h'(0|n)) for V in Witt normal form ``shape``.

    The ambient uses the split (k+l+m, za+zb).
    """
    if shape.n != n or not shape.valid():
        raise CatalogError(f"shape {shape} inconsistent with n={n}")
    return _msV_h_cached(shape, series, field.p, check)


def singular_overalgebra(n: int, shape: WittShape, field: Field = QQ, series: str = "h") -> GradedSubalgebra:
    """closure(msV ∪ {zeta^b}) for a singular shape."""
    if not is_singular(shape):
        raise CatalogError(f"{shape} is not singular")
    s = msV_h(n, shape, field, series)
    zb = shape.coords()["zb"][0]
    amb = s.ambient
    gen = [e for d in s.degrees() for e in s.elements(d)] + [SuperPolynomial(n, {_bit(zb): 1})]
    t = closure(gen, amb, name="msV~")
    return t


# --------------------------------------------------------------------------
# small cases: vect(0|2) and h'(0|4)


@dataclass
class SmallRow:
    name: str
    sub: GradedSubalgebra
    labels: Optional[dict] = None  # coordinate index -> display label


@dataclass
class SmallCaseTable:
    tag: str
    rows: list
    title: str = ""


def _poly(n, *idx):
    return SuperPolynomial.monomial(n, idx)


def _mono_rows(amb, specs, kind):
    elems = []
    n = amb.n
    for spec in specs:
        if kind == "field":
            mask, j = spec
            elems.append(_vf(n, mask, j))
        else:
            elems.append(_poly(n, *spec))
    return span_elements(amb, elems)


def _validated(sub: GradedSubalgebra, name: str) -> GradedSubalgebra:
    if not is_bracket_closed(sub):
        raise CatalogError(f"small-case row {name} not bracket-closed")
    if not is_solvable(sub):
        raise CatalogError(f"small-case row {name} not solvable")
    return sub.renamed(name)


@lru_cache(maxsize=None)
def small_cases() -> dict[str, SmallCaseTable]:
    out = {}
    # vect(0|2)
    v2 = build_algebra("vect", 2)
    b = [(0b01, 1), (0b10, 1), (0b10, 2)]  # x1.d1, x2.d1, x2.d2
    msV = _mono_rows(v2, [(0, 1)] + b + [(0b11, 1), (0b11, 2)], "field")
    mscr = _mono_rows(v2, [(0, 1), (0, 2)] + b + [(0b11, 1)], "field")
    rows = [SmallRow("msV", _validated(msV, "msV")), SmallRow("msc", _validated(mscr, "msc"))]
    if msV_vect("vect", 2, 1) != msV or msc("vect", 2) != mscr:
        raise CatalogError("vect(0|2) table differs from the general constructions")
    out["vect02"] = SmallCaseTable("vect02", rows, "vect(0|2)")

    # h'(0|4), split (2, 0): x1 x2 e1 e2 -> indices 1 2 3 4
    h4 = build_algebra("h_prime", 4)
    s0 = [(1, 3), (1, 2), (1, 4), (2, 4)]
    r_msV = _mono_rows(h4, [(1,)] + s0 + [(1, 3, 4), (1, 2, 3), (1, 2, 4), (2, 3, 4)], "poly")
    r_msc = _mono_rows(h4, [(1,), (2,), (3,), (4,)] + s0 + [(1, 2, 4)], "poly")
    r_msVt = _mono_rows(h4, [(1,), (2,), (4,)] + s0 + [(1, 3, 4), (1, 2, 3), (1, 2, 4)], "poly")
    rows = [SmallRow("msV", _validated(r_msV, "msV")),
            SmallRow("msc", _validated(r_msc, "msc")),
            SmallRow("msV~", _validated(r_msVt, "msV~"))]
    if msV_h(4, WittShape(1, 0, 1), series="h_prime") != r_msV:
        raise CatalogError("h'(0|4) msV row differs from the shape formula")
    if msV_h(4, WittShape(1, 1, 0), series="h_prime") != r_msVt:
        raise CatalogError("h'(0|4) msV~ row differs from the shape formula")
    if msc("h_prime", 4) != r_msc:
        raise CatalogError("h'(0|4) msc row differs from the prolongation")
    out["h04"] = SmallCaseTable("h04", rows, "h'(0|4)")

    # the same three rows with xi^a = x2, eta^a = e2 (alpha-coordinates)
    alpha = {1: "x1", 2: "xa", 3: "e1", 4: "ea"}
    out["ill"] = SmallCaseTable("ill", [SmallRow(r.name, r.sub, alpha) for r in rows],
                                "h'(0|4) in alpha-coordinates")

    # five-subalgebra table: three msV and their over-algebras
    pairs = []
    # (1) V = <zeta>, split (1, 2): xb = x1, eb = e1, zeta = z1, zb = z2 -> indices 1 2 3 4
    h4z = build_algebra("h_prime", 4, split=(1, 2))
    lab = {1: "xb", 2: "eb", 3: "z", 4: "zb"}
    V1 = _mono_rows(h4z, [(3,), (1, 2), (1, 4), (1, 2, 4), (1, 4, 3), (1, 2, 3)], "poly")
    T1 = _mono_rows(h4z, [(3,), (1,), (4,), (1, 2), (1, 4), (1, 3), (3, 4),
                          (1, 2, 4), (1, 4, 3), (1, 2, 3)], "poly")
    if msV_h(4, WittShape(0, 0, 1, 1, 1), series="h_prime") != V1:
        raise CatalogError("five-subalgebra row 1 differs from the shape formula")
    pairs.append((SmallRow("msV", _validated(V1, "msV"), lab), SmallRow("msV~", _validated(T1, "msV~"), lab)))
    # (2) V = <x1, x2>, Lagrangian
    V2 = _mono_rows(h4, [(1,), (2,)] + s0 + [(1, 3, 4), (1, 2, 3), (1, 2, 4)], "poly")
    if msV_h(4, WittShape(2, 0, 0), series="h_prime") != V2:
        raise CatalogError("five-subalgebra row 2 differs from the shape formula")
    pairs.append((SmallRow("msV", _validated(V2, "msV")), SmallRow("msV~", r_msVt.renamed("msV~"))))
    # (3) V = <xa, ea>, split (2, 0): xa = x1, xb = x2, ea = e1, eb = e2
    lab3 = {1: "xa", 2: "xb", 3: "ea", 4: "eb"}
    V3 = _mono_rows(h4, [(1,), (3,), (1, 3), (2, 4), (2, 4, 1), (2, 4, 3)], "poly")
    T3 = _mono_rows(h4, [(1,), (3,), (2,), (1, 3), (2, 4), (1, 2), (2, 3),
                         (2, 4, 1), (2, 4, 3), (2, 1, 3)], "poly")
    if msV_h(4, WittShape(0, 1, 1), series="h_prime") != V3:
        raise CatalogError("five-subalgebra row 3 differs from the shape formula")
    pairs.append((SmallRow("msV", _validated(V3, "msV"), lab3), SmallRow("msV~", _validated(T3, "msV~"), lab3)))
    out["5sub"] = SmallCaseTable("5sub", [r for pr in pairs for r in pr], "h'(0|4): non-maximal msV")
    return out


def small_pairs() -> list[tuple[GradedSubalgebra, GradedSubalgebra]]:
    rows = small_cases()["5sub"].rows
    return [(rows[i].sub, rows[i + 1].sub) for i in range(0, len(rows), 2)]


# --------------------------------------------------------------------------
# table layout


def _label_elem(amb: AlgebraDesc, e, labels: Optional[dict]) -> str:
    s = amb.elem_str(e)
    if not labels:
        return s
    mapping = {amb.coords.name(i): lab for i, lab in labels.items()}
    return re.sub(r"\b([xez]\d+)\b", lambda m: mapping.get(m.group(1), m.group(1)), s)


def table_lines(tab: SmallCaseTable, degrees=(-1, 0, 1)) -> list[str]:
    head = ["name"] + [f"s_{d}" for d in degrees]
    body = []
    for r in tab.rows:
        amb = r.sub.ambient
        cells = [r.name]
        for d in degrees:
            cells.append(", ".join(_label_elem(amb, e, r.labels) for e in r.sub.elements(d)))
        body.append(cells)
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    fmt = lambda row: " | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
    lines = [f"# {tab.title}", fmt(head), "-+-".join("-" * w for w in widths)]
    lines += [fmt(row) for row in body]
    return lines


def table1_lines() -> list[str]:
    """Borel data per series (degree-0 bases), generic n shown at small size."""
    out = ["# degree-0 Borel data"]
    for series, n in (("vect", 3), ("svect", 3), ("h", 4), ("h", 5)):
        b = borel0(series, n)
        out.append(f"{b.ambient.label()}: dim {b.dim()}: " + ", ".join(b.basis_strings(0)))
    return out


def grid_vect() -> list[tuple[str, int, int]]:
    g = [("vect", 3, k) for k in (1, 2)] + [("svect", 3, k) for k in (1, 2)]
    g += [("svect", 4, k) for k in (1, 2, 3)] + [("tilde_svect", 4, k) for k in (1, 2, 3)]
    return g


def catalog_outputs(hamiltonian_n=(5,)) -> list[GradedSubalgebra]:
    """Every catalog construction of the acceptance grids (small sizes)."""
    out = [ms0("vect", n) for n in (2, 3)] + [ms0("svect", 3), ms0("h", 5), ms0("h_prime", 4)]
    out += [msc("vect", n) for n in (2, 3)] + [msc("svect", 3), msc("h", 5), msc("h_prime", 4)]
    out += [msV_vect(series, n, k) for series, n, k in grid_vect()]
    for n in hamiltonian_n:
        for sh in shapes(n):
            out.append(msV_h(n, sh))
            if is_singular(sh):
                out.append(singular_overalgebra(n, sh))
    for tab in small_cases().values():
        out += [r.sub for r in tab.rows]
    return out
