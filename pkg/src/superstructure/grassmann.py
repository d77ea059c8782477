"""The Grassmann algebra Lambda(n) on odd generators xi_1..xi_n.

Monomials are bitmasks (bit i-1 <-> xi_i) kept in increasing index order;
signs come from counting inversions.  A ``SuperPolynomial`` is a sparse
map mask -> coefficient over Q or F_p.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .field import scalar_str

MAX_N = 16


class GrassmannError(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def indices(mask: int) -> tuple[int, ...]:
    """1-based indices of a monomial, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        if m & (1 << (i - 1)):
            raise GrassmannError(f"repeated index {i}")
        m |= 1 << (i - 1)
    return m


def mono_key(mask: int):
    """Graded-lexicographic sort key."""
    return (popcount(mask), indices(mask))


def mono_mul(a: int, b: int) -> Optional[tuple[int, int]]:
    """Product of xi_a and xi_b as ``(sign, mask)``, or None when zero."""
    if a & b:
        return None
    inv = 0
    bb = b
    j = 0
    while bb:
        if bb & 1:
            inv += popcount(a >> (j + 1))
        bb >>= 1
        j += 1
    return (-1 if inv & 1 else 1), a | b


def partial_mono(i: int, mask: int) -> Optional[tuple[int, int]]:
    """Left derivative d/dxi_i of a monomial: ``(sign, mask)`` or None."""
    bit = 1 << (i - 1)
    if not mask & bit:
        return None
    s = popcount(mask & (bit - 1))
    return (-1 if s & 1 else 1), mask ^ bit


@dataclass(frozen=True)
class Coordinates:
    """Names of the indeterminates.

    ``split=None`` names them x1..xn.  ``split=(k, l)`` names them
    x1..xk, e1..ek, z1..zl (xi, eta, zeta), with n = 2k + l.
    """

    n: int
    split: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise GrassmannError(f"n={self.n} outside 0..{MAX_N}")
        if self.split is not None:
            k, l = self.split
            if 2 * k + l != self.n or k < 0 or l < 0:
                raise GrassmannError(f"split {self.split} inconsistent with n={self.n}")

    def name(self, i: int) -> str:
        if not 1 <= i <= self.n:
            raise GrassmannError(f"index {i} out of range 1..{self.n}")
        if self.split is None:
            return f"x{i}"
        k, _ = self.split
        if i <= k:
            return f"x{i}"
        if i <= 2 * k:
            return f"e{i - k}"
        return f"z{i - 2 * k}"

    def index(self, name: str) -> int:
        m = re.fullmatch(r"([xez])(\d+)", name)
        if not m:
            raise GrassmannError(f"bad indeterminate {name!r}")
        kind, j = m.group(1), int(m.group(2))
        if self.split is None:
            if kind != "x" or not 1 <= j <= self.n:
                raise GrassmannError(f"{name!r} not an indeterminate of Lambda({self.n})")
            return j
        k, l = self.split
        if kind == "x" and 1 <= j <= k:
            return j
        if kind == "e" and 1 <= j <= k:
            return k + j
        if kind == "z" and 1 <= j <= l:
            return 2 * k + j
        raise GrassmannError(f"{name!r} not an indeterminate for split {self.split}")

    def mono_str(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return ".".join(self.name(i) for i in indices(mask))

    def parse_mono(self, text: str) -> tuple[int, int]:
        """Parse ``x1.e2`` into ``(sign, mask)``; any factor order is accepted."""
        text = text.strip()
        if text == "1":
            return 1, 0
        sign, mask = 1, 0
        for part in text.split("."):
            i = self.index(part.strip())
            r = mono_mul(mask, 1 << (i - 1))
            if r is None:
                return 0, 0
            s, mask = r
            sign *= s
        return sign, mask


class SuperPolynomial:
    """Element of Lambda(n): sparse map monomial-mask -> coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        if not 0 <= n <= MAX_N:
            raise GrassmannError(f"n={n} outside 0..{MAX_N}")
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}
        top = (1 << n) - 1
        for m in self.terms:
            if m & ~top:
                raise GrassmannError(f"monomial {m:b} outside Lambda({n})")

    @classmethod
    def monomial(cls, n: int, idx: Iterable[int], coeff=1) -> "SuperPolynomial":
        idx = list(idx)
        mask = 0
        sign = 1
        for i in idx:
            r = mono_mul(mask, 1 << (i - 1))
            if r is None:
                return cls(n)
            s, mask = r
            sign *= s
        return cls(n, {mask: sign * coeff})

    @classmethod
    def constant(cls, n: int, c=1) -> "SuperPolynomial":
        return cls(n, {0: c})

    def _check(self, other):
        if not isinstance(other, SuperPolynomial):
            return False
        if other.n != self.n:
            raise GrassmannError(f"mismatched n: {self.n} vs {other.n}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SuperPolynomial(self.n, out)

    def __neg__(self):
        return SuperPolynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SuperPolynomial":
        return SuperPolynomial(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise GrassmannError("degree of a zero or inhomogeneous polynomial")
        return ds.pop()

    def parity(self) -> int:
        ps = {d % 2 for d in self.degrees()}
        if len(ps) != 1:
            raise GrassmannError("parity of a zero or inhomogeneous polynomial")
        return ps.pop()

    def component(self, d: int) -> "SuperPolynomial":
        return SuperPolynomial(self.n, {m: c for m, c in self.terms.items() if popcount(m) == d})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def to_str(self, coords: Optional[Coordinates] = None) -> str:
        coords = coords or Coordinates(self.n)
        return format_terms((coords.mono_str(m), c) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"SuperPolynomial({self.to_str()})"


def format_terms(pairs) -> str:
    """Render ``(label, coeff)`` pairs as ``x1.d2 - 2*x3.d1``."""
    out = []
    for label, c in pairs:
        neg = c < 0 if not hasattr(c, "p") else False
        a = -c if neg else c
        s = scalar_str(a)
        if label == "1":
            body = s
        elif s == "1":
            body = label
        else:
            body = f"{s}*{label}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def poly_mul(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    if f.n != g.n:
        raise GrassmannError(f"mismatched n: {f.n} vs {g.n}")
    out: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            r = mono_mul(a, b)
            if r is None:
                continue
            s, m = r
            out[m] = out.get(m, 0) + s * ca * cb
    return SuperPolynomial(f.n, out)


def partial(i: int, f: SuperPolynomial) -> SuperPolynomial:
    """Odd left derivative with d_i xi_j = delta_ij."""
    if not 1 <= i <= f.n:
        raise GrassmannError(f"index {i} out of range 1..{f.n}")
    out: dict = {}
    for m, c in f.terms.items():
        r = partial_mono(i, m)
        if r is not None:
            s, mm = r
            out[mm] = out.get(mm, 0) + s * c
    return SuperPolynomial(f.n, out)


def all_monomials(n: int, degree: Optional[int] = None) -> list[int]:
    ms = [m for m in range(1 << n) if degree is None or popcount(m) == degree]
    return sorted(ms, key=mono_key)
