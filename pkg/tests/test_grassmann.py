from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superstructure.field import GF, QQ, Field, FieldError, ModP
from superstructure.grassmann import (
    GrassmannError,
    SuperPolynomial,
    all_monomials,
    mask_of,
    mono_mul,
    partial,
    poly_mul,
)


def xi(n, *idx, c=1):
    return SuperPolynomial.monomial(n, idx, c)


# -- field -----------------------------------------------------------------


def test_field_rejects_char_2_and_composites():
    with pytest.raises(FieldError):
        Field(2)
    with pytest.raises(FieldError):
        Field(9)
    with pytest.warns(UserWarning):
        Field(3)


def test_modp_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert a / b == F(3) * F(3)
    assert -a == F(4)
    assert F.parse("f11") == GF(11)
    assert QQ(Fraction(4, 2)) == 2


# -- monomials -------------------------------------------------------------


def test_mono_mul_examples():
    x1, x2 = mask_of([1]), mask_of([2])
    assert mono_mul(x1, x2) == (1, x1 | x2)
    assert mono_mul(x2, x1) == (-1, x1 | x2)
    assert mono_mul(x1, x1) is None


def test_poly_mul_examples():
    n = 3
    assert poly_mul(xi(n, 1) + xi(n, 2), xi(n, 2)) == xi(n, 1, 2)
    f = xi(n, 1, 3) + xi(n, 2, c=Fraction(1, 2))
    assert poly_mul(SuperPolynomial.constant(n), f) == f
    assert poly_mul(xi(n, 1, 2), xi(n, 2)).is_zero()


def test_partial_examples():
    n = 2
    assert partial(1, xi(n, 1, 2)) == xi(n, 2)
    assert partial(2, xi(n, 1, 2)) == xi(n, 1, c=-1)
    assert partial(1, xi(n, 2)).is_zero()
    with pytest.raises(GrassmannError):
        partial(3, xi(n, 1))


def test_mismatched_n():
    with pytest.raises(GrassmannError):
        poly_mul(xi(2, 1), xi(3, 1))


# -- exhaustive identities -------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_supercommutativity_exhaustive(n):
    ms = all_monomials(n)
    for a in ms:
        for b in ms:
            ab, ba = mono_mul(a, b), mono_mul(b, a)
            if ab is None:
                assert ba is None
                continue
            sgn = -1 if (bin(a).count("1") * bin(b).count("1")) % 2 else 1
            assert ab == (sgn * ba[0], ba[1])


@pytest.mark.parametrize("n", range(1, 7))
def test_partials_anticommute_exhaustive(n):
    for m in all_monomials(n):
        f = SuperPolynomial(n, {m: 1})
        for i in range(1, n + 1):
            assert partial(i, partial(i, f)).is_zero()
            for j in range(i + 1, n + 1):
                assert partial(i, partial(j, f)) == -partial(j, partial(i, f))


# -- random polynomials ----------------------------------------------------


def polys(n, p=0):
    coeff = st.integers(-4, 4) if not p else st.integers(0, p - 1)
    return st.dictionaries(st.integers(0, 2 ** n - 1), coeff, max_size=6).map(
        lambda d: SuperPolynomial(n, {m: (c if not p else ModP(c, p)) for m, c in d.items() if c}))


def homogeneous(n):
    return st.tuples(st.integers(0, n), st.data()).flatmap(
        lambda t: st.dictionaries(st.sampled_from(all_monomials(n, t[0])), st.integers(-3, 3), max_size=4)
    ).map(lambda d: SuperPolynomial(n, {m: c for m, c in d.items() if c}))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(homogeneous(n), homogeneous(n))))
def test_supercommutative_homogeneous(fg):
    f, g = fg
    if f.is_zero() or g.is_zero():
        return
    sgn = -1 if f.parity() * g.parity() else 1
    assert poly_mul(f, g) == poly_mul(g, f).scale(sgn)


@given(st.sampled_from([0, 5, 7]).flatmap(
    lambda p: st.tuples(st.just(p), st.integers(1, 5)).flatmap(
        lambda t: st.tuples(polys(t[1], p), homogeneous(t[1]), st.integers(1, t[1])))))
def test_leibniz(args):
    g, f, i = args
    if f.is_zero():
        return
    n = f.n
    sign = -1 if f.parity() else 1
    lhs = partial(i, poly_mul(f, g))
    rhs = poly_mul(partial(i, f), g) + poly_mul(f, partial(i, g)).scale(sign)
    assert lhs == rhs


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(homogeneous(n), homogeneous(n), homogeneous(n))))
def test_associative_and_degree_additive(fgh):
    f, g, h = fgh
    assert poly_mul(poly_mul(f, g), h) == poly_mul(f, poly_mul(g, h))
    fg = poly_mul(f, g)
    if not fg.is_zero():
        assert fg.degree() == f.degree() + g.degree()
