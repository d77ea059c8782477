"""Stabilisers in g_0 and (partial) Cartan prolongation inside an ambient.

For b_{-1} ⊆ g_{-1} and b_0 ⊆ g_0 preserving it, the prolong is
b_k = {D ∈ g_k : [D, b_{-1}] ⊆ b_{k-1}}, solved degree by degree as a
single left kernel (see ``liestruct.solve_condition``).
"""
from __future__ import annotations

from .algebra import AlgebraDesc
from .linalg import backend
from .liestruct import (
    GradedSubalgebra,
    _canon,
    closure_rows,
    is_bracket_closed,
    solve_condition,
    unit_rows,
)


class ProlongError(ValueError):
    pass


def _rows(amb: AlgebraDesc, d: int, V):
    """Accept a GradedSubalgebra component, backend rows or dense rows."""
    be = backend(amb.field)
    if isinstance(V, GradedSubalgebra):
        return V.rows(d)
    if isinstance(V, (list, tuple)) and V and isinstance(V[0], (list, tuple)):
        return be.from_dense([list(r) for r in V])
    if isinstance(V, (list, tuple)) and not V:
        return be.empty(amb.dim(d))
    return V


def stabilizer(V, amb: AlgebraDesc, within=None) -> GradedSubalgebra:
    """{X ∈ g_0 : [X, V] ⊆ V} for V ⊆ g_{-1} (optionally X ∈ ``within``)."""
    V = _rows(amb, -1, V)
    cand = unit_rows(amb, 0) if within is None else _rows(amb, 0, within)
    rows = solve_condition(amb, 0, cand, [(-1, V, V)])
    return GradedSubalgebra(amb, {0: _canon(amb, 0, rows)}, "St(V)")


def preserves(b0, V, amb: AlgebraDesc) -> bool:
    be = backend(amb.field)
    b0 = _rows(amb, 0, b0)
    V = _rows(amb, -1, V)
    k, out = be.bracket(amb, 0, b0, -1, V)
    if k is None or not be.nrows(out):
        return True
    S = be.span(amb.dim(-1))
    S.add_many(V)
    if hasattr(be, "p"):
        return not S.reduce_many(out).any()
    return all(S.contains(v) for v in out)


def prolong_degrees(amb: AlgebraDesc) -> list[int]:
    return [d for d in amb.degrees if d >= 1]


def cartan_prolong(b_minus, b0, amb: AlgebraDesc, check: bool = True, name: str = "") -> GradedSubalgebra:
    """(b_{-1}, b_0)_* inside ``amb``.

    With ``check`` the result is verified to be bracket-closed; for the
    Z/n-graded deformation the wrap-around brackets are included in that
    check.  Raises ProlongError if b_0 does not preserve b_{-1} or the
    result is not closed.
    """
    be = backend(amb.field)
    Vm = _rows(amb, -1, b_minus)
    B0 = _rows(amb, 0, b0)
    if not be.nrows(Vm):
        raise ProlongError("b_{-1} must be non-zero")
    if not preserves(B0, Vm, amb):
        raise ProlongError("b_0 does not preserve b_{-1}")
    comps = {-1: _canon(amb, -1, Vm), 0: _canon(amb, 0, B0)}
    prev = be.from_dense(comps[0]) if comps[0] else be.empty(amb.dim(0))
    # stopping at the first zero b_k is safe: g_{-1} is abelian and g is
    # transitive, so a nonzero D in b_k killing b_{-1} would give a nonzero
    # [D, d_i] in b_{k-1}
    for k in prolong_degrees(amb):
        if not be.nrows(prev):
            break
        rows = solve_condition(amb, k, unit_rows(amb, k), [(-1, Vm, prev)])
        canon = _canon(amb, k, rows)
        if not canon:
            break
        comps[k] = canon
        prev = be.from_dense(canon)
    s = GradedSubalgebra(amb, comps, name)
    if check and not is_bracket_closed(s):
        raise ProlongError(f"prolong in {amb.label()} is not bracket-closed")
    return s


def v_star(V, amb: AlgebraDesc, check: bool = True) -> GradedSubalgebra:
    """(V)_*: prolong with b_0 the full stabiliser of V."""
    st = stabilizer(V, amb)
    return cartan_prolong(V, st, amb, check=check, name="V_*")


def closure_of(s: GradedSubalgebra) -> GradedSubalgebra:
    spans = closure_rows(s.ambient, {d: s.rows(d) for d in s.degrees()})
    be = backend(s.field)
    return GradedSubalgebra(s.ambient, {d: be.to_dense(S.rows(), s.ambient.dim(d))
                                        for d, S in spans.items() if S.dim})
