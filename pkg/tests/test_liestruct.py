import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superstructure.algebra import build_algebra
from superstructure.catalog import WittShape, ms0, msc, small_cases
from superstructure.field import GF
from superstructure.grassmann import SuperPolynomial
from superstructure.liestruct import (
    StructureError,
    closure,
    contains,
    degree_zero_solvable,
    derived_series,
    from_rows,
    intersection,
    is_bracket_closed,
    is_ideal,
    is_solvable,
    is_transitive,
    span_elements,
    sum_spaces,
    whole,
    zero,
)
from superstructure.prolong import v_star
from superstructure.vectorfields import VectorField, poly_times_field

V2 = build_algebra("vect", 2)
V3 = build_algebra("vect", 3)


def d(n, j):
    return VectorField.d(n, j)


def test_closure_of_partials_is_abelian_span():
    # [d1, d2] = 0, so nothing new is generated
    s = closure([d(2, 1), d(2, 2)], V2)
    assert s.dim(-1) == 2 and s.dim() == 2
    assert s == whole(V2, [-1])


def test_closure_of_msc_basis_is_itself():
    row = next(r for r in small_cases()["vect02"].rows if r.name == "msc")
    elems = [e for k in row.sub.degrees() for e in row.sub.elements(k)]
    assert closure(elems, V2) == row.sub
    assert row.sub.dim() == 6


def test_closure_of_nothing():
    assert closure([], V3) == zero(V3)
    assert zero(V3).dim() == 0


def test_derived_series_examples():
    m = msc("vect", 2)
    ser = derived_series(m)
    assert ser[-1].dim() == 0 and ser[0] == m
    ser = derived_series(whole(V2))
    assert ser[-1] == whole(V2) and ser[-1].dim() == 8
    ab = closure([d(2, 1)], V2)
    assert [t.dim() for t in derived_series(ab)] == [1, 0]


def test_derived_series_requires_closed():
    t = span_elements(V2, [d(2, 1), poly_times_field(SuperPolynomial.monomial(2, [1]), d(2, 2))])
    assert not is_bracket_closed(t)
    with pytest.raises(StructureError):
        derived_series(t)


def test_solvability_examples():
    assert is_solvable(ms0("vect", 3))
    assert not is_solvable(whole(build_algebra("h_prime", 4)))
    for s in (ms0("vect", 3), msc("vect", 3), whole(V3)):
        assert is_solvable(s) == degree_zero_solvable(s)


def test_transitivity_examples():
    assert is_transitive(whole(V3))
    assert not is_transitive(ms0("vect", 3))  # no negative part at all
    assert is_transitive(msc("vect", 3))


def test_is_ideal():
    g = whole(V3)
    assert is_ideal(g, g)
    pos = from_rows(V3, {k: [[int(i == j) for j in range(V3.dim(k))] for i in range(V3.dim(k))]
                         for k in V3.degrees if k > 0})
    assert is_ideal(pos, ms0("vect", 3))
    with pytest.raises(StructureError):
        is_ideal(g, pos)


def test_W_is_ideal_in_v_star():
    # functions with at least two factors among the xi / beta variables
    n, sh = 5, WittShape.parse("k=1,l=1,m=0,za=0,zb=1")
    c = sh.coords()
    g = build_algebra("h", n, split=sh.split)
    V = v_star([_row(g, i) for i in sh.V_indices()], g)
    xb = set(c["xi"]) | set(c["xb"]) | set(c["zb"])
    W = [SuperPolynomial(n, {m: 1}) for m in range(1, 2 ** n)
         if sum(1 for i in xb if m >> (i - 1) & 1) >= 2]
    Wsub = span_elements(g, W)
    assert contains(V, Wsub)
    assert is_ideal(Wsub, V)


def _row(g, i):
    _, vec = g.homogeneous_vector(SuperPolynomial(g.n, {1 << (i - 1): 1}))
    return [vec.get(a, 0) for a in range(g.dim(-1))]


def test_intersection_and_sum():
    a, b = ms0("vect", 3), msc("vect", 3)
    i, s = intersection(a, b), sum_spaces(a, b)
    assert contains(a, i) and contains(b, i)
    assert contains(s, a) and contains(s, b)
    for k in V3.degrees:
        assert i.dim(k) + s.dim(k) == a.dim(k) + b.dim(k)


def test_prime_field_roundtrip():
    s = msc("vect", 3)
    t = s.over(GF(7))
    assert t.dims() == s.dims()
    assert is_solvable(t)


# -- hypothesis: closure is idempotent and monotone; canonical forms ----------

BASIS3 = [(k, a) for k in V3.degrees for a in range(V3.dim(k))]


def _elem(k, a):
    return V3.element(k, {a: 1})


@given(st.lists(st.sampled_from(BASIS3), max_size=4), st.lists(st.sampled_from(BASIS3), max_size=2))
def test_closure_idempotent_monotone(gens, more):
    A = closure([_elem(*x) for x in gens], V3)
    assert closure(A, V3) == A
    B = closure([_elem(*x) for x in gens + more], V3)
    assert contains(B, A)


@given(st.integers(0, 2 ** 16))
def test_canonical_form_ignores_spanning_set(seed):
    rng = random.Random(seed)
    s = msc("vect", 3)
    comps = {}
    for k in s.degrees():
        rows = [list(r) for r in s.rows_dense(k)] if hasattr(s, "rows_dense") else [list(r) for r in s.components[k]]
        mixed = []
        for _ in range(len(rows) + 1):
            coeffs = [rng.randint(-3, 3) for _ in rows]
            mixed.append([sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(len(rows[0]))])
        # keep it spanning: add the originals back in scrambled order
        rng.shuffle(rows)
        comps[k] = mixed + rows
    assert from_rows(V3, comps) == s
