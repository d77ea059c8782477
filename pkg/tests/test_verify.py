import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superstructure.algebra import build_algebra
from superstructure.catalog import WittShape, ms0, msc, msV_h, msV_vect, small_cases
from superstructure.field import GF
from superstructure.grassmann import SuperPolynomial
from superstructure.liestruct import (
    closure,
    contains,
    from_rows,
    is_solvable,
    span_elements,
    whole,
    zero,
)
from superstructure.serialize import dumps
from superstructure.vectorfields import VectorField, bracket, poly_times_field
from helpers import assert_certificates, assert_sound_not_maximal, mutilate
from superstructure.verify import (
    SweepConfig,
    VerifyError,
    check_maximal,
    containment_suite,
    eigen_lines,
    fingerprint,
    generation_check,
    invariant_lines_fp,
    n_points,
    projective_points,
    witness_cases,
    witness_suite,
)


def vf(n, idx, j):
    return poly_times_field(SuperPolynomial.monomial(n, idx), VectorField.d(n, j))


# -- config ----------------------------------------------------------------


def test_sweep_config_validation(monkeypatch):
    with pytest.raises(VerifyError):
        SweepConfig(primes=(2,))
    with pytest.raises(VerifyError):
        SweepConfig(cap=0)
    monkeypatch.setenv("SUPERSTRUCTURE_JOBS", "3")
    assert SweepConfig().workers() == 3
    assert SweepConfig(jobs=1).workers() == 1


def test_projective_points():
    for q, p in ((1, 5), (2, 5), (3, 7)):
        pts = list(projective_points(q, p))
        assert len(pts) == n_points(q, p) == (p ** q - 1) // (p - 1)
        assert len(set(pts)) == len(pts)
        assert all(next(x for x in pt if x) == 1 for pt in pts)


# -- examples --------------------------------------------------------------


def test_msc_vect2_maximal():
    s = msc("vect", 2)
    v = check_maximal(s)
    assert v.status == "maximal" and v.maximal
    assert set(v.method_by_degree.values()) == {"exact"}
    assert_certificates(s, v)


def test_ms0_vect2_extends_by_d1():
    s = ms0("vect", 2)
    v = check_maximal(s)
    assert v.witnesses[0]["extension"] == "d1"
    t = assert_sound_not_maximal(s, v)
    assert t == small_cases()["vect02"].rows[0].sub  # the msV row


def test_ms0_h_prime4_not_maximal():
    s = ms0("h_prime", 4)
    assert_sound_not_maximal(s, check_maximal(s))


def test_ms0_vect3_maximal_with_certificates():
    s = ms0("vect", 3)
    v = check_maximal(s)
    assert v.status == "maximal"
    assert_certificates(s, v)


@pytest.mark.parametrize("maker", [
    lambda: msc("vect", 3),
    lambda: msV_vect("vect", 3, 1),
    lambda: msV_h(5, WittShape(1, 1, 0, 1, 0)),
])
def test_mutilated_catalog_output_is_caught(maker):
    s = maker()
    cut = mutilate(s)
    assert cut.dim() == s.dim() - 1
    t = assert_sound_not_maximal(cut, check_maximal(cut))
    assert is_solvable(t)


def test_preconditions():
    g = build_algebra("vect", 2)
    with pytest.raises(VerifyError):
        check_maximal(whole(g))  # not solvable
    with pytest.raises(VerifyError):
        check_maximal(span_elements(g, [VectorField.d(2, 1), vf(2, [1], 2)]))  # not closed
    with pytest.raises(VerifyError):
        check_maximal(msc("vect", 2, GF(5)))
    with pytest.raises(VerifyError):
        check_maximal(ms0("vect", 2), container=msc("vect", 2))


def test_small_subalgebra_found_beyond_cap():
    g = build_algebra("vect", 3)
    top = from_rows(g, {2: [[1, 0, 0]]})
    for cfg in (SweepConfig(), SweepConfig(cap=1)):
        assert_sound_not_maximal(top, check_maximal(top, cfg=cfg))


def test_zero_subalgebra_not_maximal():
    g = build_algebra("vect", 2)
    assert_sound_not_maximal(zero(g), check_maximal(zero(g)))


def test_verdict_json_is_deterministic():
    s = ms0("vect", 3)
    a = dumps(check_maximal(s, cfg=SweepConfig(jobs=1)))
    b = dumps(check_maximal(s, cfg=SweepConfig(jobs=2)))
    assert a == b
    data = json.loads(a)
    assert set(data) >= {"status", "method_by_degree", "candidates_checked", "witnesses", "certificates"}


# -- witness suite -----------------------------------------------------------


def test_prop1_bracket_leaves_borel():
    # [d2, x1.x2.d3] = -x1.d3 up to sign, strictly upper triangular
    b = bracket(VectorField.d(3, 2), vf(3, [1, 2], 3))
    assert b == vf(3, [1], 3) or b == -vf(3, [1], 3)
    from superstructure.catalog import borel0
    assert not contains(borel0("vect", 3), span_elements(build_algebra("vect", 3), [b]))


def test_witness_examples():
    (r,) = witness_suite("prop3:svect:3:1")
    assert r.witness == "x1.x2.d2 - x1.x3.d3" and r.extension == "d2" and r.ok
    (r,) = witness_suite("prop4:h:6:k=2,l=0,m=0,za=1,zb=1")
    assert (r.witness, r.extension, r.bracket) == ("x2.e1.z2", "z2", "-x2.e1") and r.ok
    (r,) = witness_suite("prop4:h:6:k=3,l=0,m=0,za=0,zb=0")
    assert r.extension == "e3" and r.ok
    with pytest.raises(VerifyError):
        witness_suite("prop9:vect:3")


def test_all_prop1_prop3_witnesses_pass():
    for case in witness_cases():
        if case.startswith(("prop1", "prop3")) and ":6" not in case:
            assert all(r.ok for r in witness_suite(case)), case


def test_containment_suite():
    for c in containment_suite((5,)):
        assert c.ok, c


def test_generation_check():
    assert generation_check(build_algebra("tilde_svect", 4))
    # Z-graded: g_{-1} is abelian, so it only generates itself
    assert not generation_check(build_algebra("vect", 3))
    assert not generation_check(build_algebra("po", 3))  # g_{-2} holds the constants


def test_fingerprints():
    tab = small_cases()
    v02 = {r.name: r.sub for r in tab["vect02"].rows}
    h04 = {r.name: r.sub for r in tab["h04"].rows}
    for rows in (v02, h04):
        assert fingerprint(rows["msV"], graded=False) == fingerprint(rows["msc"], graded=False)
        assert fingerprint(rows["msV"]) != fingerprint(rows["msc"])
    f = fingerprint(h04["msV~"], graded=False)
    assert sum(f[0]) == 10 and sum(fingerprint(h04["msV"], graded=False)[0]) == 9
    assert fingerprint(zero(build_algebra("vect", 2)), graded=False)[0] == (0, 0)


# -- properties --------------------------------------------------------------

EIGEN_CASES = [
    lambda: ms0("vect", 3),
    lambda: msV_vect("vect", 3, 1),
    lambda: msV_vect("svect", 4, 2),
    lambda: msV_h(5, WittShape(1, 1, 0, 1, 0)),
    lambda: from_rows(build_algebra("vect", 3), {2: [[1, 0, 0]]}),
    lambda: closure([vf(3, [1], 1), vf(3, [2], 2), vf(3, [3], 3)], build_algebra("vect", 3)),
]


@pytest.mark.parametrize("maker", EIGEN_CASES)
@pytest.mark.parametrize("p", [5, 7])
def test_eigen_completeness(maker, p):
    """Every s_0-invariant line over F_p lies in an exact joint eigenspace."""
    s = maker()
    spaces, irrational = eigen_lines(s, -1)
    assert not irrational
    lines = invariant_lines_fp(s, -1, p)
    g = s.ambient
    from superstructure.linalg import backend, rref_mod
    import numpy as np
    sF = s.over(GF(p))
    for v in lines:
        hit = False
        for rows, _ in spaces:
            dense = [[int(x) % p for x in _dense(r, g.dim(-1))] for r in rows]
            base = [list(r) for r in sF.components.get(-1, ())]
            M = np.asarray(dense + base, dtype=np.int64) % p
            r0 = len(rref_mod(M, p)[1]) if len(M) else 0
            r1 = len(rref_mod(np.vstack([M, np.asarray([v])]) % p, p)[1])
            if r0 == r1:
                hit = True
                break
        assert hit, v


def _dense(row, n):
    from fractions import Fraction
    from superstructure.linalg import int_vector
    iv = int_vector(row) if isinstance(row, dict) else int_vector(dict(enumerate(row)))
    return [iv.get(i, 0) for i in range(n)]


@given(st.integers(0, 10 ** 6))
def test_coset_class_independence(seed):
    rng = random.Random(seed)
    s = ms0("vect", 3) if rng.random() < 0.5 else msV_vect("vect", 3, 1)
    g = s.ambient
    d = rng.choice([k for k in g.degrees if s.dim(k) < g.dim(k)])
    v = g.element(d, {a: rng.randint(-2, 2) for a in range(g.dim(d))})
    if s.dim(d):
        ws = s.elements(d)
        w = ws[0].scale(rng.randint(1, 3))
        for x in ws[1:]:
            w = w + x.scale(rng.randint(-2, 2))
    else:
        w = None
    gens = [x for k in s.degrees() for x in s.elements(k)]
    a = closure(gens + [v], g)
    b = closure(gens + [v + w if w is not None else v], g)
    assert a == b
