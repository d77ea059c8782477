"""Exact ground fields: the rationals and prime fields F_p (p odd).

Scalars over Q are plain ``int``/``Fraction`` values.  Scalars over F_p are
``ModP`` instances so that Grassmann arithmetic can be run unchanged over
either field.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from functools import total_ordering


class FieldError(ValueError):
    pass


@total_ordering
class ModP:
    """Residue class modulo an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        if isinstance(v, ModP):
            v = v.v
        elif isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"{v} has no image in F_{p}")
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldError(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, (int, Fraction)):
            return ModP(other, self.p).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == ModP(other, self.p).v
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __lt__(self, other):
        return self.v < self._coerce(other)

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Ground field descriptor; ``p == 0`` means Q."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not _is_prime(p):
                raise FieldError(f"{p} is not prime")
            if p == 2:
                raise FieldError("characteristic 2 is not supported")
            if p == 3:
                warnings.warn("F_3 is below the supported range p > 3", stacklevel=2)
        self.p = p

    @classmethod
    def parse(cls, name: str) -> "Field":
        name = name.strip().lower()
        if name in ("q", "qq", "0"):
            return QQ
        if name.startswith("f") and name[1:].isdigit():
            return cls(int(name[1:]))
        raise FieldError(f"unknown field {name!r}; use q or f<p>")

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"f{self.p}"

    @property
    def exact(self) -> bool:
        return self.p == 0

    def __call__(self, x):
        """Coerce ``x`` into this field."""
        if self.p == 0:
            if isinstance(x, ModP):
                raise FieldError("cannot lift an F_p residue to Q implicitly")
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        return ModP(x, self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __reduce__(self):
        return (Field, (self.p,))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def scalar_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)
