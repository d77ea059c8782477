"""Shared checks: verifier output is re-validated with liestruct alone."""
from superstructure.expr import parse
from superstructure.liestruct import closure, contains, from_rows, is_bracket_closed, is_solvable, span_elements


def _over(s, w):
    comps = {int(d): [list(r) for r in rows] for d, rows in w["over_algebra"].items()}
    return from_rows(s.ambient, comps)


def assert_sound_not_maximal(s, v):
    assert v.status == "not_maximal"
    t = _over(s, v.witnesses[0])
    assert is_bracket_closed(t) and is_solvable(t)
    assert contains(t, s) and t != s
    ext = parse(v.witnesses[0]["extension"], s.ambient.n, s.ambient.split)
    assert contains(t, span_elements(s.ambient, [ext]))
    return t


def assert_certificates(s, v):
    """Each certificate is re-checkable with liestruct alone."""
    for c in v.certificates:
        e = parse(c["candidate"], s.ambient.n, s.ambient.split)
        gens = [x for d in s.degrees() for x in s.elements(d)] + [e]
        t = closure(gens, s.ambient)
        assert list(t.dims()) == list(c["closure_dims"])
        assert not is_solvable(t, check=False)


def mutilate(s):
    """Drop one basis vector (highest degree first) so that a subalgebra remains."""
    for d in sorted(s.degrees(), reverse=True):
        rows = [list(r) for r in s.components[d]]
        for i in range(len(rows)):
            comps = {e: [list(r) for r in s.components[e]] for e in s.degrees() if e != d}
            if len(rows) > 1:
                comps[d] = rows[:i] + rows[i + 1:]
            cut = from_rows(s.ambient, comps)
            if is_bracket_closed(cut):
                return cut
    raise AssertionError("no single vector can be removed")


# criterion number -> one-line verdict, printed in the terminal summary
ACCEPTANCE: dict = {}


def report(n: int, ok: bool, detail: str = "", known: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    if known and not ok:
        line += f"  [known discrepancy: {known}]"
    ACCEPTANCE[n] = line
    print(line)
