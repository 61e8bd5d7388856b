"""Exact arithmetic over numbers of the form a + b*sqrt(5).

The charging ledgers must not be computed in floating point: the tight
instances have zero margin, and the bias parameter that maximizes the
randomized path guarantee is irrational (golden ratio over sqrt(5)), so
plain fractions are not enough either.  This tiny quadratic-field type
supports the ring operations, division by rationals, and exact ordering,
which is all the ledgers need.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into an exact value")


class Sqrt5:
    """The number a + b*sqrt(5) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "Sqrt5 | None":
        if isinstance(other, Sqrt5):
            return other
        try:
            return Sqrt5(_as_fraction(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Sqrt5(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt5(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt5(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Sqrt5):
            # multiply by the conjugate; norm is a*a - 5*b*b
            norm = other.a * other.a - 5 * other.b * other.b
            if norm == 0:
                raise ZeroDivisionError("division by zero")
            conj = Sqrt5(other.a, -other.b)
            num = self * conj
            return Sqrt5(num.a / norm, num.b / norm)
        q = _as_fraction(other)
        return Sqrt5(self.a / q, self.b / q)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # -- exact ordering -----------------------------------------------------

    def _sign(self) -> int:
        """Sign of a + b*sqrt(5), decided without leaving the rationals."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with 5 b^2 on the dominant side
        if a > 0:  # b < 0: positive iff a^2 > 5 b^2
            return 1 if a * a > 5 * b * b else (-1 if a * a < 5 * b * b else 0)
        # a < 0 < b: positive iff 5 b^2 > a^2
        return 1 if 5 * b * b > a * a else (-1 if 5 * b * b < a * a else 0)

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o)._sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    # -- conversions ----------------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"Sqrt5({self.a})"
        return f"Sqrt5({self.a}, {self.b})"


#: (1 + sqrt(5)) / (2 sqrt(5)) = 1/2 + sqrt(5)/10, the golden ratio over sqrt(5)
PHI_OVER_SQRT5 = Sqrt5(Fraction(1, 2), Fraction(1, 10))
