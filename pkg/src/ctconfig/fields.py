"""Exact scalar fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class Fp:
    """Residue class modulo a prime p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Rational):
            return _frac_mod(Fraction(other), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        # symmetric representative reads better in tables
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


def _frac_mod(q: Fraction, p: int) -> int:
    if q.denominator % p == 0:
        raise ZeroDivisionError(f"denominator {q.denominator} not invertible mod {p}")
    return q.numerator * pow(q.denominator, -1, p) % p


class Field:
    """A field of characteristic 0 (Q) or p (F_p).

    Calling the field converts ints, Fractions and "p/q" strings into elements.
    """

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.characteristic == 0:
            if isinstance(x, Fp):
                raise TypeError("cannot convert an F_p element to Q")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.characteristic:
                raise ValueError(f"mixing F_{x.p} and F_{self.characteristic}")
            return x
        if isinstance(x, int):
            return Fp(x, self.characteristic)
        return Fp(_frac_mod(Fraction(x), self.characteristic), self.characteristic)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def supports_order(self, n: int) -> bool:
        """True when n! is invertible, i.e. char 0 or char > n."""
        return self.characteristic == 0 or self.characteristic > n

    def require_order(self, n: int) -> None:
        if not self.supports_order(n):
            raise ValueError(
                f"F_{self.characteristic} cannot divide by {n}!: need p > {n}"
            )

    def to_str(self, x) -> str:
        if self.characteristic == 0:
            return str(Fraction(x))
        return str(x.v)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(spec: str) -> Field:
    """Parse ``q`` or ``fp:<p>``."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    if s.startswith("fp:"):
        return Field(int(s[3:]))
    raise ValueError(f"unknown field {spec!r}; use q or fp:<p>")
