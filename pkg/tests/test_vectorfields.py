import pytest

from superstructure.grassmann import Coordinates, SuperPolynomial, partial
from superstructure.vectorfields import (
    VectorField,
    apply,
    bracket,
    deform,
    divergence,
    hamiltonian,
    poisson,
    poly_times_field,
)


def mono(n, *idx, c=1):
    return SuperPolynomial.monomial(n, idx, c)


def fld(n, idx, j, c=1):
    return poly_times_field(mono(n, *idx, c=c), VectorField.d(n, j))


def test_bracket_examples():
    n = 2
    assert bracket(VectorField.d(n, 1), fld(n, [1], 2)) == VectorField.d(n, 2)
    assert bracket(fld(n, [1], 2), fld(n, [2], 1)) == fld(n, [1], 1) - fld(n, [2], 2)
    D = fld(n, [1], 1)
    assert bracket(D, D).is_zero()


def test_odd_bracket_is_symmetric():
    n = 3
    a, b = VectorField.d(n, 1), fld(n, [1, 2], 3)
    assert bracket(a, b) == bracket(b, a)


def test_divergence_examples():
    n = 2
    const = lambda c: SuperPolynomial.constant(n, c)  # noqa: E731
    assert divergence(fld(n, [1], 1)) == const(-1)
    assert divergence(fld(n, [1], 1) - fld(n, [2], 2)).is_zero()
    assert divergence(fld(n, [1, 2], 1)) == mono(n, 2)


def test_apply_is_derivation():
    n = 3
    D = fld(n, [2, 3], 1) + fld(n, [1, 3], 2)
    f, g = mono(n, 1), mono(n, 2, 3)
    lhs = apply(D, f * g)
    rhs = apply(D, f) * g + (f * apply(D, g)).scale(-1 if D.parity() * f.parity() else 1)
    assert lhs == rhs


def test_poisson_examples():
    n = 4
    split = (2, 0)
    c = Coordinates(n, split)
    x1, e1 = mono(n, c.index("x1")), mono(n, c.index("e1"))
    assert poisson(x1, e1, split) == SuperPolynomial.constant(n, -1)
    split = (2, 1)
    z1 = mono(5, Coordinates(5, split).index("z1"))
    assert poisson(z1, z1, split) == SuperPolynomial.constant(5, -1)
    assert poisson(SuperPolynomial.constant(5), z1, split).is_zero()


def test_hamiltonian_examples():
    n, split = 4, (2, 0)
    c = Coordinates(n, split)
    i_x, i_e = c.index("x1"), c.index("e1")
    assert hamiltonian(mono(n, i_x), split) == -VectorField.d(n, i_e)
    got = hamiltonian(mono(n, i_x, i_e), split)
    assert got == fld(n, [i_e], i_e) - fld(n, [i_x], i_x)
    assert hamiltonian(SuperPolynomial.constant(n), split).is_zero()


def test_hamiltonian_degree():
    n, split = 5, (2, 1)
    f = mono(n, 1, 3, 5)
    assert hamiltonian(f, split).degree() == f.degree() - 2


def test_mismatched_split():
    with pytest.raises(ValueError):
        poisson(mono(4, 1), mono(4, 2), (3, 0))


def test_deform_shape():
    # (1 + Xi) d1 mixes degree -1 with degree n - 1, i.e. -1 mod n
    n = 4
    D = deform(VectorField.d(n, 1))
    assert D.degrees() == {-1, n - 1}
    assert D - VectorField.d(n, 1) == fld(n, [1, 2, 3, 4], 1)
