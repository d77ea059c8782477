"""Structural invariants on small algebras; the full sizes run in the acceptance suite."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superstructure.algebra import build_algebra
from superstructure.catalog import ms0, msc, msV_vect
from superstructure.liestruct import is_solvable, whole
from superstructure.properties import (
    antisymmetry_failures,
    divergence_closure_failures,
    jacobi_failures,
    grading_lemma_agrees,
    modular_agrees,
    morphism_failures,
    small_ambients,
)


@pytest.mark.parametrize("amb", small_ambients(4), ids=lambda a: a.label())
def test_antisymmetry_and_jacobi(amb):
    assert antisymmetry_failures(amb) == 0
    assert jacobi_failures(amb) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hamiltonian_is_a_morphism(n):
    assert morphism_failures(n) == 0


def test_morphism_other_split():
    assert morphism_failures(4, (1, 2)) == 0


@given(st.integers(0, 10**6))
def test_divergence_closure(seed):
    assert divergence_closure_failures(3, 20, seed) == 0


def test_jacobi_detects_a_broken_table():
    amb = build_algebra("vect", 2)
    T = amb.tensor(-1, 0, 0)
    old = T.copy()
    T[0, 0, 0] += 1  # corrupt one structure constant in place
    try:
        assert antisymmetry_failures(amb) + jacobi_failures(amb) > 0
    finally:
        T[...] = old


@pytest.mark.parametrize("s", [ms0("vect", 3), msc("svect", 3), msV_vect("vect", 3, 2), msc("h_prime", 4)],
                         ids=["ms0 vect3", "msc svect3", "msV vect3", "msc h'4"])
def test_grading_lemma_and_modular_agreement(s):
    assert grading_lemma_agrees(s)
    for p in (5, 7, 11):
        assert modular_agrees(s, p)


def test_grading_lemma_on_nonsolvable():
    g = whole(build_algebra("vect", 2))
    assert grading_lemma_agrees(g) and not is_solvable(g)
