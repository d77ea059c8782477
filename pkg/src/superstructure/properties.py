"""Structural invariants checked exhaustively on built algebras."""
from __future__ import annotations

import random
from typing import Optional

import numpy as np

from .algebra import AlgebraDesc, build_algebra
from .field import GF
from .grassmann import SuperPolynomial, all_monomials
from .liestruct import GradedSubalgebra, degree_zero_solvable, derived_series, is_solvable
from .vectorfields import bracket, divergence, hamiltonian, poisson


def antisymmetry_failures(amb: AlgebraDesc) -> int:
    """Count basis pairs with [a, b] + (-1)^{ij} [b, a] != 0."""
    bad = 0
    for i in amb.degrees:
        for j in amb.degrees:
            if amb.target(i, j) is None:
                continue
            T = amb.tensor(i, j, 0)
            U = amb.tensor(j, i, 0).transpose(1, 0, 2)
            sign = -1 if (i * j) % 2 else 1
            bad += int(np.count_nonzero((T + sign * U).any(axis=2)))
    return bad


def _compose(amb, i, j, k):
    """[e_a, [e_b, e_c]] as an array (a, b, c, out), zero if out of range."""
    jk = amb.target(j, k)
    if jk is None:
        return None
    out = amb.target(i, jk)
    if out is None:
        return None
    return np.einsum("bcm,amo->abco", amb.tensor(j, k, 0), amb.tensor(i, jk, 0))


def jacobi_failures(amb: AlgebraDesc) -> int:
    """Count basis triples violating [a,[b,c]] = [[a,b],c] + (-1)^{ij}[b,[a,c]]."""
    bad = 0
    degs = amb.degrees
    for i in degs:
        for j in degs:
            for k in degs:
                shape = (amb.dim(i), amb.dim(j), amb.dim(k))
                lhs = _compose(amb, i, j, k)
                # [[a,b],c]
                ij = amb.target(i, j)
                r1 = None
                if ij is not None and amb.target(ij, k) is not None:
                    r1 = np.einsum("abm,mco->abco", amb.tensor(i, j, 0), amb.tensor(ij, k, 0))
                r2 = _compose(amb, j, i, k)
                if r2 is not None:
                    r2 = r2.transpose(1, 0, 2, 3) * (-1 if (i * j) % 2 else 1)
                terms = [t for t in (lhs, r1 if r1 is None else -r1, r2 if r2 is None else -r2)
                         if t is not None]
                if not terms:
                    continue
                widths = {t.shape[3] for t in terms}
                if len(widths) != 1:
                    raise AssertionError("inconsistent target degrees")
                acc = np.zeros(shape + (widths.pop(),), dtype=np.int64)
                for t in terms:
                    acc += t
                bad += int(np.count_nonzero(acc.any(axis=3)))
    return bad


def morphism_failures(n: int, split=None) -> int:
    """Count monomial pairs with H_{f,g} != [H_f, H_g]."""
    split = split if split is not None else (n // 2, n % 2)
    ms = all_monomials(n)
    H = {m: hamiltonian(SuperPolynomial(n, {m: 1}), split) for m in ms}
    bad = 0
    for a in ms:
        for b in ms:
            fg = poisson(SuperPolynomial(n, {a: 1}), SuperPolynomial(n, {b: 1}), split)
            if hamiltonian(fg, split) != bracket(H[a], H[b]):
                bad += 1
    return bad


def random_element(amb: AlgebraDesc, rng: random.Random, coeff: int = 3):
    """Random homogeneous element with small integer coordinates."""
    d = rng.choice(amb.degrees)
    vec = {a: rng.randint(-coeff, coeff) for a in range(amb.dim(d))}
    return amb.element(d, vec)


def divergence_closure_failures(n: int, pairs: int = 1000, seed: int = 0) -> int:
    """Random pairs in svect(0|n): the bracket must again be divergence-free."""
    amb = build_algebra("svect", n)
    rng = random.Random(seed)
    bad = 0
    for _ in range(pairs):
        a, b = random_element(amb, rng), random_element(amb, rng)
        if divergence(a) or divergence(b) or divergence(bracket(a, b)):
            bad += 1
    return bad


def grading_lemma_agrees(s: GradedSubalgebra) -> bool:
    return is_solvable(s) == degree_zero_solvable(s)


def derived_dims(s: GradedSubalgebra) -> list:
    return [t.dims() for t in derived_series(s, check=False)]


def modular_agrees(s: GradedSubalgebra, p: int) -> bool:
    """Derived-series dimensions over Q and over F_p coincide."""
    return derived_dims(s) == derived_dims(s.over(GF(p)))


def small_ambients(max_n: int = 5) -> list[AlgebraDesc]:
    """Every admissible built algebra with n <= max_n (default splits)."""
    out = []
    for n in range(2, max_n + 1):
        out.append(build_algebra("vect", n))
        if n >= 3:
            out.append(build_algebra("svect", n))
        if n >= 4 and n % 2 == 0:
            out.append(build_algebra("tilde_svect", n))
        out.append(build_algebra("po", n))
        out.append(build_algebra("h", n))
        if n >= 3:
            out.append(build_algebra("h_prime", n))
    return out
