import pytest

from superstructure.algebra import build_algebra
from superstructure.catalog import (
    CatalogError,
    WittShape,
    borel0,
    catalog_outputs,
    is_singular,
    ms0,
    msc,
    msc_dim_h,
    msV_h,
    msV_vect,
    shape_of,
    shapes,
    singular_overalgebra,
    small_cases,
    small_pairs,
    star_identity,
    table1_lines,
    table_lines,
)
from superstructure.grassmann import SuperPolynomial
from superstructure.liestruct import (
    closure,
    contains,
    degree_zero_solvable,
    intersection,
    is_bracket_closed,
    is_solvable,
    whole,
)
from superstructure.prolong import cartan_prolong, v_star


def test_borel0_dims():
    assert borel0("vect", 3).dim() == 6
    assert borel0("h", 4).dim() == 4
    assert borel0("h", 5).dim() == 6
    assert borel0("svect", 3).dim() == 5  # lower triangle minus the trace direction


def test_ms0_examples():
    s = ms0("vect", 3)
    assert [s.dim(d) for d in (-1, 0, 1, 2)] == [0, 6, 9, 3] and s.dim() == 18
    assert ms0("vect", 2).note.startswith("not maximal")
    assert ms0("vect", 3).note == ""
    h = ms0("h", 6)
    g = h.ambient
    assert h.dim(0) == 9
    assert all(h.dim(d) == g.dim(d) for d in g.degrees if d > 0)


@pytest.mark.parametrize("n", range(2, 6))
def test_vect_dimension_identities(n):
    assert msc("vect", n).dim() == 2 ** (n + 1) - 2
    assert ms0("vect", n).dim() == n * (n + 1) // 2 + n * (2 ** n - 1 - n)


@pytest.mark.parametrize("series,n", [("vect", 3), ("vect", 4), ("svect", 3), ("svect", 4), ("h", 5), ("h", 6)])
def test_msc_is_prolong_of_borel(series, n):
    g = build_algebra(series, n)
    assert msc(series, n) == cartan_prolong(whole(g, [-1]), borel0(series, n), g)


def test_msc_examples():
    assert msc("vect", 3).dim() == 14
    assert msc_dim_h(6) == (2 ** 3 - 1) + (2 ** 4 - 2) == 21
    with pytest.raises(CatalogError):
        msc("tilde_svect", 4)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("odd", [False, True])
def test_star_identities(k, odd):
    r = star_identity(k, odd)
    assert r["ok"]
    if not odd:
        assert r["dim_msc"] == 3 * 2 ** k - 3


def test_msV_vect_examples():
    assert msV_vect("vect", 3, 1).dim() == 18
    s, v = msV_vect("svect", 3, 1), msV_vect("vect", 3, 1)
    sv = whole(s.ambient)
    # svect part of the vect algebra, expressed in the svect ambient
    assert [s.dim(d) for d in s.ambient.degrees] == [_svect_dim(v, d) for d in s.ambient.degrees]
    assert contains(sv, s)
    t = msV_vect("vect", 2, 1)
    assert [t.dim(d) for d in (-1, 0, 1)] == [1, 3, 2]
    with pytest.raises(CatalogError):
        msV_vect("vect", 3, 3)


def _svect_dim(v, d):
    # dim of (msV in vect) ∩ svect, computed with vector fields
    from superstructure.vectorfields import divergence
    from superstructure.linalg import fraction_rref
    elems = v.elements(d)
    if not elems:
        return 0
    g = v.ambient
    # divergence map on the span: kernel dimension
    cols = sorted({m for e in elems for m in divergence(e).terms})
    M = [[divergence(e).terms.get(m, 0) for m in cols] for e in elems]
    rank = len(fraction_rref(M)[1]) if cols else 0
    return len(elems) - rank


def test_is_singular_examples():
    assert is_singular(WittShape(0, 2, 0, 0, 1))
    assert is_singular(WittShape(1, 1, 0, 0, 1))
    assert not is_singular(WittShape(2, 0, 0, 0, 1))
    assert not is_singular(WittShape(1, 1, 1, 0, 1))


def test_shapes_are_consistent():
    for n in (5, 6):
        for sh in shapes(n):
            assert sh.n == n
            assert len(sh.V_indices()) == sh.dim_V
            assert sh.dim_V + sh.dim_Vperp == n
            assert shape_of(sh.V_indices(), n, sh.split) == sh
    with pytest.raises(CatalogError):
        shape_of([1, 5], 6, (3, 0))  # x1 with e2: not a normal form
    with pytest.raises(CatalogError):
        WittShape.parse("k=1,q=2")


def test_msV_h_n6_k1l1m1():
    sh = WittShape(1, 1, 1)
    s = msV_h(6, sh)
    c = s.ambient.coords
    assert s.basis_strings(-1) == ["x1", "x2", "e2"]
    assert is_solvable(s)
    assert contains(v_star(s.rows(-1), s.ambient), s)


def test_msV_h_lagrangian_witness():
    sh = WittShape(3, 0, 0)
    s = msV_h(6, sh)
    g = s.ambient
    u = SuperPolynomial.monomial(6, [3, 2, 4])  # x3.x2.e1
    assert _in(s, u)
    t = closure([e for d in s.degrees() for e in s.elements(d)] + [SuperPolynomial.monomial(6, [6])], g)
    assert not is_solvable(t)


def _in(s, e):
    from superstructure.liestruct import span_elements
    return contains(s, span_elements(s.ambient, [e]))


def test_singular_containment():
    sh = WittShape(1, 1, 0, 0, 1)
    s = msV_h(5, sh)
    big = msV_h(5, WittShape(1, 1, 0, 1, 0))
    assert contains(big, s) and big != s
    assert contains(big, singular_overalgebra(5, sh))
    with pytest.raises(CatalogError):
        singular_overalgebra(5, WittShape(2, 0, 0, 0, 1))


def test_small_cases():
    tabs = small_cases()
    rows = {(t, r.name): r.sub for t in ("vect02", "h04") for r in tabs[t].rows}
    assert rows["vect02", "msV"].dims((-1, 0, 1)) == (1, 3, 2)
    assert rows["vect02", "msc"].dims((-1, 0, 1)) == (2, 3, 1)
    assert rows["h04", "msV"].dims((-1, 0, 1)) == (1, 4, 4)
    assert rows["h04", "msc"].dims((-1, 0, 1)) == (4, 4, 1)
    assert rows["h04", "msV~"].dims((-1, 0, 1)) == (3, 4, 3)
    assert rows["h04", "msV~"].dim() == 10
    assert rows["vect02", "msc"] == msc("vect", 2)
    assert rows["vect02", "msV"] == msV_vect("vect", 2, 1)
    a, b = small_pairs()[0]
    assert a.basis_strings(-1) == ["z1"]
    assert b.basis_strings(-1) == ["x1", "z1", "z2"]
    assert contains(b, a) and a != b


def test_vect02_table_text():
    lines = table_lines(small_cases()["vect02"])
    body = "\n".join(lines)
    assert "x1.x2.d1, x1.x2.d2" in body
    assert lines[0] == "# vect(0|2)"
    assert any("sl" in ln or "vect" in ln for ln in table1_lines())


def test_catalog_outputs_are_sound():
    for s in catalog_outputs():
        assert is_bracket_closed(s), s.name
        assert is_solvable(s), s.name
        assert degree_zero_solvable(s), s.name
        for d in s.degrees():
            assert s.ambient.parity(d) == d % 2 or s.ambient.grading != "Z"
