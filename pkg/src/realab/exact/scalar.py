"""Exact elements of Q and of real quadratic fields Q(sqrt d)."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational


class FieldMismatch(ValueError):
    """Raised when scalars from different quadratic fields are combined."""


@lru_cache(maxsize=None)
def check_discriminant(d: int | None) -> int | None:
    if d is None:
        return None
    if not isinstance(d, int) or isinstance(d, bool):
        raise TypeError(f"discriminant must be an int, got {d!r}")
    if d < 2:
        raise ValueError(f"discriminant must be a squarefree integer >= 2, got {d}")
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            raise ValueError(f"discriminant {d} is not squarefree")
        p += 1
    return d


def join_fields(d1: int | None, d2: int | None) -> int | None:
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise FieldMismatch(f"cannot mix Q(sqrt {d1}) and Q(sqrt {d2})")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class ExactScalar:
    """The real number ``a + b*sqrt(d)`` with rational ``a``, ``b``.

    ``d`` is the field context. A scalar may carry a context while having
    ``b == 0``; equality and hashing only look at the value.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if d is not None:
            check_discriminant(d)
        elif b:
            raise ValueError("surd part requires a discriminant")
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def coerce(cls, x, d: int | None = None) -> ExactScalar:
        if isinstance(x, ExactScalar):
            if d is None or x.d == d:
                return x
            join_fields(x.d, d)
            return cls(x.a, x.b, d)
        if isinstance(x, (int, Rational)):
            return cls(x, 0, d)
        raise TypeError(f"cannot convert {type(x).__name__} to ExactScalar")

    @classmethod
    def surd(cls, d: int, coeff=1) -> ExactScalar:
        return cls(0, coeff, d)

    # arithmetic ---------------------------------------------------------

    def _other(self, other) -> ExactScalar | None:
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Rational)):
            return ExactScalar(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.a + o.a, self.b + o.b, join_fields(self.d, o.d))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ExactScalar(self.a - o.a, self.b - o.b, join_fields(self.d, o.d))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = join_fields(self.d, o.d)
        if not self.b and not o.b:
            return ExactScalar(self.a * o.a, 0, d)
        return ExactScalar(
            self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d b^2``; zero only for the zero scalar."""
        if not self.b:
            return self.a * self.a
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.a, -self.b, self.d)

    def inverse(self) -> ExactScalar:
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("ExactScalar division by zero")
            return ExactScalar(1 / self.a, 0, self.d)
        n = self.norm()
        return ExactScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        join_fields(self.d, o.d)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # comparison ---------------------------------------------------------

    def sign(self) -> int:
        return scalar_sign(self)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.a != o.a or self.b != o.b:
            return False
        return not self.b or self.d == o.d

    def __lt__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return scalar_sign(self - o) < 0

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # conversions --------------------------------------------------------

    def is_rational(self) -> bool:
        return not self.b

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    def __float__(self):
        if not self.b:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.d is None:
            return f"ExactScalar({self.a})"
        return f"ExactScalar({self.a}, {self.b}, d={self.d})"

    def literal(self) -> str:
        """Canonical text form: ``p/q`` or ``p/q + r/s w``."""
        head = f"{self.a.numerator}/{self.a.denominator}"
        if self.d is None:
            return head
        op = "-" if self.b < 0 else "+"
        b = abs(self.b)
        return f"{head} {op} {b.numerator}/{b.denominator} w"

    def __str__(self):
        if not self.b:
            return str(self.a)
        op = "-" if self.b < 0 else "+"
        return f"{self.a} {op} {abs(self.b)}*sqrt({self.d})"


def scalar_sign(x: ExactScalar) -> int:
    """Exact sign of ``a + b*sqrt(d)``.

    When the two parts have opposite signs the sign follows the larger
    square: ``sign(a) * sign(a^2 - d b^2)``.
    """
    sa = _sign(x.a)
    sb = _sign(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa * _sign(x.a * x.a - x.d * x.b * x.b)
