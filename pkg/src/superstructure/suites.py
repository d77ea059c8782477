"""Verification grids, one per classification result, shared by the CLI and the tests.

Each runner yields ``Check`` records.  A check whose expectation is known
to disagree with the source statement carries ``known`` (a short reason);
it counts as expected-to-fail, and an unexpected pass is reported too.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .algebra import build_algebra
from .catalog import (
    CatalogError,
    borel0,
    deformed_prolong,
    grid_vect,
    is_singular,
    ms0,
    msc,
    msV_h,
    msV_vect,
    shapes,
    small_cases,
    small_pairs,
    star_identity,
    table_lines,
)
from .liestruct import contains, is_bracket_closed, is_solvable, whole
from .prolong import cartan_prolong, stabilizer, v_star
from .verify import (
    SweepConfig,
    check_degree0_in,
    check_maximal,
    containment_suite,
    fingerprint,
    generation_check,
    witness_suite,
)


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    known: str = ""  # non-empty: documented disagreement, expected to fail
    seconds: float = 0.0

    @property
    def status(self) -> str:
        if self.known:
            return "XPASS" if self.ok else "XFAIL"
        return "PASS" if self.ok else "FAIL"

    @property
    def good(self) -> bool:
        return self.ok != bool(self.known)

    def line(self) -> str:
        s = f"{self.status:5s} [{self.suite}] {self.name}"
        if self.detail:
            s += f": {self.detail}"
        if self.known:
            s += f"  (known: {self.known})"
        return s


def _timed(suite, name, fn: Callable[[], tuple], known: str = "") -> Check:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of that check, not of the suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(suite, name, bool(ok), detail, known, time.perf_counter() - t)


def _verdict_detail(v) -> str:
    meth = ",".join(f"{d}:{m}" for d, m in sorted(v.method_by_degree.items()))
    extra = f" ext={v.witnesses[0]['extension']}" if v.witnesses else ""
    return f"{v.status} [{meth}] candidates={v.candidates_checked}{extra}"


def _maximal(s, cfg=None, strict=True):
    v = check_maximal(s, cfg=cfg)
    ok = v.status == "maximal" if strict else v.status in ("maximal", "evidence_only")
    return ok, _verdict_detail(v)


def _witnesses(case):
    res = witness_suite(case)
    bad = [r for r in res if not r.ok]
    return not bad, f"{len(res)} witness checks" + (f", failing: {bad}" if bad else "")


# --------------------------------------------------------------------------


def prop1(cfg: Optional[SweepConfig] = None) -> Iterator[Check]:
    cfg = cfg or SweepConfig()
    for series, n in (("vect", 3), ("svect", 3), ("h", 5), ("vect", 4), ("h", 6)):
        yield _timed("prop1", f"ms0({series},{n}) maximal", lambda: _maximal(ms0(series, n), cfg))
    for case in ("prop1:vect:3", "prop1:svect:3", "prop1:vect:4", "prop1:h:5", "prop1:h:6"):
        yield _timed("prop1", f"witnesses {case}", lambda: _witnesses(case))


def prop2(cfg: Optional[SweepConfig] = None) -> Iterator[Check]:
    cfg = cfg or SweepConfig()

    def msc_vect3():
        amb = build_algebra("vect", 3)
        pro = cartan_prolong(whole(amb, [-1]), borel0("vect", 3), amb)
        s = msc("vect", 3)
        return s == pro and s.dim() == 14, f"dims {s.dims()} total {s.dim()}"

    yield _timed("prop2", "msc(vect,3) = prolong(g_-1, borel0), dim 14", msc_vect3)

    def dim_vect():
        got = {n: msc("vect", n).dim() for n in range(2, 6)}
        return all(d == 2 ** (n + 1) - 2 for n, d in got.items()), str(got)

    yield _timed("prop2", "dim msc(vect,n) = 2^(n+1) - 2, n = 2..5", dim_vect)
    for n in (5, 6):
        yield _timed("prop2", f"msc(h,{n}) solvable", lambda: (is_solvable(msc("h", n)), str(msc("h", n).dims())))
        yield _timed("prop2", f"msc(h,{n}) maximal", lambda: _maximal(msc("h", n), cfg))
    for k in (2, 3, 4):
        for odd in (False, True):
            def star(k=k, odd=odd):
                r = star_identity(k, odd)
                detail = f"n={r['n']} dim={r['dim_msc']} formula={r['formula']}"
                if not odd:
                    return r["ok"] and r["formula"] == 3 * 2 ** k - 3, detail
                return r["ok"], detail + f" (literal reading {r['literal_reading']})"
            yield _timed("prop2", f"dimension formula k={k} {'odd' if odd else 'even'}", star)

    yield _timed("prop2", "generation_check(~svect(0|4))",
                 lambda: (generation_check(build_algebra("tilde_svect", 4)), ""))

    def refuse():
        try:
            msc("tilde_svect", 4)
        except CatalogError as exc:
            return True, str(exc)
        return False, "msc(~svect) was built"

    yield _timed("prop2", "msc refused for ~svect", refuse)


def prop3(cfg: Optional[SweepConfig] = None) -> Iterator[Check]:
    cfg = cfg or SweepConfig(primes=(5,))
    for series, n, k in grid_vect():
        tag = f"msV({series},{n},k={k})"

        def built(series=series, n=n, k=k):
            s = msV_vect(series, n, k)  # asserts formula == prolong internally
            return is_bracket_closed(s) and is_solvable(s), f"dims {s.dims()}"

        yield _timed("prop3", f"{tag} formula = prolong, solvable", built)
        yield _timed("prop3", f"{tag} maximal", lambda: _maximal(msV_vect(series, n, k), cfg))
        yield _timed("prop3", f"witnesses {tag}", lambda: _witnesses(f"prop3:{series}:{n}:{k}"))

    def vect_variant():
        try:
            deformed_prolong(4, 1, "vect")
        except CatalogError as exc:
            return True, str(exc).splitlines()[0][:80]
        return False, "vect variant accepted"

    yield _timed("prop3", "(vect prolong)(1+Xi) rejected in ~svect(0|4)", vect_variant)


# shapes where the computation disagrees with the maximality claim (see README)
def _k0_nonmaximal(n, sh) -> bool:
    return sh.k == 0 and sh.m >= 1 and not (n == 6 and (sh.l, sh.m, sh.za, sh.zb) == (0, 2, 1, 1))


K0_REASON = "k=0, m>=1: closure with xi^b_1 is solvable"
U_REASON = "witness eta^b eta^b zeta^a is not in the upper-triangular msV"


def prop4(cfg: Optional[SweepConfig] = None, ns=(5, 6)) -> Iterator[Check]:
    cfg = cfg or SweepConfig(primes=(5,))
    for n in ns:
        for sh in shapes(n):
            if is_singular(sh):
                continue
            tag = f"h(0|{n}) {sh}"

            def gates(n=n, sh=sh):
                s = msV_h(n, sh)  # asserts closure, solvability, V_* and prolong internally
                ok = is_bracket_closed(s) and is_solvable(s) and contains(v_star(s.rows(-1), s.ambient), s)
                return ok, f"dims {s.dims()}"

            yield _timed("prop4", f"{tag} closed, solvable, in V_*", gates)

            def deg0(n=n, sh=sh):
                s = msV_h(n, sh)
                v = check_degree0_in(s, stabilizer(s.rows(-1), s.ambient), cfg)
                return v.status == "maximal", _verdict_detail(v)

            yield _timed("prop4", f"{tag} s_0 maximal in St(V)", deg0)

            case = f"prop4:h:{n}:{sh}"

            def facts(case=case):
                res = witness_suite(case)
                ok = all(r.in_s and r.bracket_expected and r.leaves for r in res)
                return ok, "; ".join(f"u={r.witness} [{r.extension},u]={r.bracket}" for r in res)

            u_known = U_REASON if (sh.k == 0 and sh.l == 0) else ""
            yield _timed("prop4", f"{tag} witness bracket facts", facts, u_known)

            def nonsolv(case=case):
                res = witness_suite(case)
                return all(r.closure_nonsolvable for r in res), ""

            k0 = K0_REASON if _k0_nonmaximal(n, sh) else ""
            yield _timed("prop4", f"{tag} closure with extension non-solvable", nonsolv, k0)
            yield _timed("prop4", f"{tag} maximal (full verifier)",
                         lambda n=n, sh=sh: _maximal(msV_h(n, sh), cfg), k0)
    for c in containment_suite(ns):
        yield Check("prop4", c.name, c.ok, f"{c.small_dims} in {c.big_dims}")


def prop5(cfg: Optional[SweepConfig] = None) -> Iterator[Check]:
    cfg = cfg or SweepConfig()
    tabs = small_cases()
    expect = {("vect02", "msV"): (1, 3, 2), ("vect02", "msc"): (2, 3, 1),
              ("h04", "msV"): (1, 4, 4), ("h04", "msc"): (4, 4, 1), ("h04", "msV~"): (3, 4, 3)}
    for (tag, name), dims in expect.items():
        row = next(r for r in tabs[tag].rows if r.name == name)
        got = row.sub.dims((-1, 0, 1))
        yield Check("prop5", f"{tag} {name} dims {dims}", got == dims, str(got))
        yield _timed("prop5", f"{tag} {name} maximal", lambda s=row.sub: _maximal(s, cfg))
    for i, (a, b) in enumerate(small_pairs(), 1):
        yield Check("prop5", f"pair {i}: msV < msV~ strictly, msV~ solvable",
                    contains(b, a) and a != b and is_solvable(b), f"{a.dims()} < {b.dims()}")
    for series, n, ext in (("vect", 2, "d1"), ("h_prime", 4, "x1")):
        def neg(series=series, n=n, ext=ext):
            v = check_maximal(ms0(series, n), cfg=cfg)
            got = v.witnesses[0]["extension"] if v.witnesses else None
            return v.status == "not_maximal" and got == ext, _verdict_detail(v)
        yield _timed("prop5", f"ms0({series},{n}) not maximal, extension {ext}", neg)
    v02 = {r.name: r.sub for r in tabs["vect02"].rows}
    h04 = {r.name: r.sub for r in tabs["h04"].rows}
    for label, rows in (("vect02", v02), ("h04", h04)):
        a, b = rows["msV"], rows["msc"]
        yield Check("prop5", f"{label}: msV and msc share the ungraded fingerprint",
                    fingerprint(a, graded=False) == fingerprint(b, graded=False),
                    str(fingerprint(a, graded=False)))
        yield Check("prop5", f"{label}: graded fingerprints differ",
                    fingerprint(a) != fingerprint(b), "")
    yield Check("prop5", "h04: msV~ fingerprint differs from msV",
                fingerprint(h04["msV~"], graded=False) != fingerprint(h04["msV"], graded=False),
                str(fingerprint(h04["msV~"], graded=False)))
    for key in ("vect02", "h04", "ill", "5sub"):
        yield Check("prop5", f"table {key} rendered", bool(table_lines(tabs[key])), "")


def properties() -> Iterator[Check]:
    from .catalog import catalog_outputs
    from .properties import (antisymmetry_failures, divergence_closure_failures, jacobi_failures,
                             grading_lemma_agrees, modular_agrees, morphism_failures, small_ambients)
    for amb in small_ambients(5):
        yield _timed("properties", f"{amb.label()} antisymmetry + Jacobi",
                     lambda amb=amb: (antisymmetry_failures(amb) + jacobi_failures(amb) == 0, ""))
    for n in range(2, 7):
        yield _timed("properties", f"H-morphism n={n}", lambda n=n: (morphism_failures(n) == 0, ""))
    yield _timed("properties", "divergence closure, 1000 svect(0|4) pairs",
                 lambda: (divergence_closure_failures(4, 1000) == 0, ""))
    outs = catalog_outputs()
    yield _timed("properties", f"grading lemma on {len(outs)} catalog outputs",
                 lambda: (all(grading_lemma_agrees(s) for s in outs), ""))
    for p in (5, 7, 11):
        yield _timed("properties", f"Q vs F_{p} derived series on catalog outputs",
                     lambda p=p: (all(modular_agrees(s, p) for s in outs), ""))


SUITES = {"prop1": prop1, "prop2": prop2, "prop3": prop3, "prop4": prop4, "prop5": prop5,
          "properties": properties}


def run(name: str, echo: Optional[Callable[[str], None]] = None) -> list[Check]:
    out = []
    for c in SUITES[name]():
        out.append(c)
        if echo:
            echo(c.line())
    return out
