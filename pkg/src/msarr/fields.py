"""Exact ordered-field scalars: arbitrary-precision rationals and Q(sqrt5).

All arithmetic is exact; ordering is decided without floating point.  The
rational type is gmpy2.mpq when available (much faster) and falls back to
fractions.Fraction, both of which share the "p/q" text format.
"""

from __future__ import annotations

import re
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

__all__ = ["Q", "Qrt5", "as_scalar", "parse_scalar", "format_scalar", "sign", "PHI"]

_RAT_TYPES = (int, Fraction, type(Q(1)))


def _sign_rational(a) -> int:
    if a > 0:
        return 1
    if a < 0:
        return -1
    return 0


class Qrt5:
    """Element a + b*sqrt(5) with rational a, b.

    The (a, b) pair is the unique canonical form.  Ordering is decided by
    exact case analysis on the signs of a and b plus comparison of a^2
    against 5*b^2, so no irrational arithmetic ever happens.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Q(a))
        object.__setattr__(self, "b", Q(b))

    def __setattr__(self, name, value):
        raise AttributeError("Qrt5 is immutable")

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Qrt5):
            return other
        if isinstance(other, _RAT_TYPES):
            return Qrt5(other)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Qrt5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Qrt5(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Qrt5(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Qrt5(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Qrt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def _inverse(self):
        n = self.a * self.a - 5 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        return Qrt5(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Qrt5(1)
        for _ in range(n):
            out = out * self
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering ---------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return _sign_rational(a)
        if a == 0:
            return _sign_rational(b)
        sa, sb = _sign_rational(a), _sign_rational(b)
        if sa == sb:
            return sa
        # opposite signs: sign decided by a^2 vs 5 b^2
        d = a * a - 5 * b * b
        return sa if d > 0 else sb

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return c == 0 if c is not NotImplemented else NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c < 0 if c is not NotImplemented else NotImplemented

    def __le__(self, other):
        c = self._cmp(other)
        return c <= 0 if c is not NotImplemented else NotImplemented

    def __gt__(self, other):
        c = self._cmp(other)
        return c > 0 if c is not NotImplemented else NotImplemented

    def __ge__(self, other):
        c = self._cmp(other)
        return c >= 0 if c is not NotImplemented else NotImplemented

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __hash__(self):
        # rational-valued elements must hash like their rational value so
        # that mixed-type dict keys behave
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, "rt5"))

    def __repr__(self):
        return f"Qrt5({self.a!r}, {self.b!r})"

    def __str__(self):
        return format_scalar(self)


PHI = Qrt5(Q(1, 2), Q(1, 2))  # (1 + sqrt5) / 2


def sign(x) -> int:
    """Exact sign (-1, 0, 1) of a scalar."""
    if isinstance(x, Qrt5):
        return x.sign()
    return _sign_rational(x)


def as_scalar(v):
    """Coerce ints/strings to exact scalars; pass field elements through."""
    if isinstance(v, Qrt5):
        return v
    if isinstance(v, str):
        return parse_scalar(v)
    if isinstance(v, _RAT_TYPES):
        return Q(v)
    raise TypeError(f"cannot interpret {v!r} as an exact scalar")


_RT5_RE = re.compile(
    r"^\s*(?:(?P<a>[+-]?\d+(?:/\d+)?)\s*)?"
    r"(?P<sign>[+-])?\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*rt5\s*$"
)


def parse_scalar(s: str):
    """Parse "p/q", "p", or "a+b*rt5" (also "a-b*rt5", "b*rt5")."""
    s = s.strip()
    if "rt5" in s:
        m = _RT5_RE.match(s)
        if not m:
            raise ValueError(f"bad Q(sqrt5) literal: {s!r}")
        a = Q(m.group("a")) if m.group("a") is not None else Q(0)
        b = Q(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        if m.group("a") is not None and m.group("sign") is None:
            raise ValueError(f"bad Q(sqrt5) literal: {s!r}")
        return Qrt5(a, b)
    return Q(s)


def format_scalar(x) -> str:
    """Canonical text form; inverse of parse_scalar."""
    if isinstance(x, Qrt5):
        if x.b == 0:
            return str(x.a)
        op = "+" if x.b > 0 else "-"
        return f"{x.a}{op}{abs(x.b)}*rt5"
    return str(x)
