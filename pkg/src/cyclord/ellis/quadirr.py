"""Exact arithmetic in Q(alpha), alpha = (sqrt 5 - 1) / 2 the root of x^2 + x - 1 in (0, 1).

Numbers are pairs of rationals ``p + q alpha``. Signs are decided exactly, which
makes the circle T = R/Z restricted to Q(alpha) an exactly ordered set.
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

from mpmath import ctx_iv

Rational = int | Fraction

@functools.cache
def _interval_context(prec: int) -> ctx_iv.MPIntervalContext:
    ctx = ctx_iv.MPIntervalContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True, order=False)
class QuadIrr:
    """The number ``p + q alpha`` with rational coordinates.

    Examples
    --------
    >>> a = QuadIrr(0, 1)
    >>> a * a == 1 - a
    True
    >>> (2 * a - 1).sign()
    1
    """

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    def __repr__(self) -> str:
        return f"QuadIrr({self.p}, {self.q})"

    @classmethod
    def coerce(cls, x: "QuadIrr | Rational") -> Self:
        return x if isinstance(x, QuadIrr) else cls(Fraction(x), Fraction(0))

    def __add__(self, other: "QuadIrr | Rational") -> "QuadIrr":
        o = QuadIrr.coerce(other)
        return QuadIrr(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self) -> "QuadIrr":
        return QuadIrr(-self.p, -self.q)

    def __sub__(self, other: "QuadIrr | Rational") -> "QuadIrr":
        return self + -QuadIrr.coerce(other)

    def __rsub__(self, other: "QuadIrr | Rational") -> "QuadIrr":
        return QuadIrr.coerce(other) - self

    def __mul__(self, other: "QuadIrr | Rational") -> "QuadIrr":
        # alpha^2 = 1 - alpha
        o = QuadIrr.coerce(other)
        return QuadIrr(
            self.p * o.p + self.q * o.q,
            self.p * o.q + o.p * self.q - self.q * o.q,
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        return qi_sign(self)

    def __lt__(self, other: "QuadIrr | Rational") -> bool:
        return qi_sign(self - other) < 0

    def __le__(self, other: "QuadIrr | Rational") -> bool:
        return qi_sign(self - other) <= 0

    def __gt__(self, other: "QuadIrr | Rational") -> bool:
        return qi_sign(self - other) > 0

    def __ge__(self, other: "QuadIrr | Rational") -> bool:
        return qi_sign(self - other) >= 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * (math.sqrt(5) - 1) / 2

    def floor(self) -> int:
        """Return the largest integer not above the number, exactly."""
        k = math.floor(float(self))
        while qi_sign(self - k) < 0:
            k -= 1
        while qi_sign(self - (k + 1)) >= 0:
            k += 1
        return k

    def frac(self) -> "QuadIrr":
        """Return the representative of the number mod 1 in [0, 1)."""
        return self - self.floor()

    def in_subgroup(self) -> bool:
        """Return True iff the number lies in Z + Z alpha.

        Since 1 and alpha are rationally independent this is integrality of both
        coordinates.
        """
        return self.p.denominator == 1 and self.q.denominator == 1

    def to_list(self) -> list[str]:
        return [str(self.p), str(self.q)]

    @classmethod
    def from_list(cls, pq: list) -> Self:
        return cls(Fraction(pq[0]), Fraction(pq[1]))


ALPHA = QuadIrr(0, 1)


def qi_sign(x: QuadIrr) -> int:
    """Return the exact sign of ``p + q alpha``.

    With alpha = (sqrt 5 - 1) / 2 we have 2(p + q alpha) = (2p - q) + q sqrt 5, so
    the sign follows from the signs of u = 2p - q and v = q and, when they
    differ, from comparing u^2 against 5 v^2. Zero only at p = q = 0.

    Examples
    --------
    >>> qi_sign(QuadIrr(-1, 2)), qi_sign(QuadIrr(1, -2)), qi_sign(QuadIrr())
    (1, -1, 0)
    """
    u, v = 2 * x.p - x.q, x.q
    if u >= 0 and v >= 0:
        return 0 if u == 0 and v == 0 else 1
    if u <= 0 and v <= 0:
        return -1
    if u > 0:
        return 1 if u * u > 5 * v * v else -1
    return 1 if 5 * v * v > u * u else -1


def interval_sign(x: QuadIrr, prec: int = 128) -> int | None:
    """Sign of ``p + q alpha`` by interval arithmetic, None when the enclosure straddles 0."""
    iv = _interval_context(prec)
    p = iv.mpf(x.p.numerator) / x.p.denominator
    q = iv.mpf(x.q.numerator) / x.q.denominator
    value = p + q * (iv.sqrt(5) - 1) / 2
    if (value > 0) is True:
        return 1
    if (value < 0) is True:
        return -1
    if value.a == 0 and value.b == 0:
        return 0
    return None


def circle_triple(a: QuadIrr, b: QuadIrr, c: QuadIrr) -> bool:
    """Counterclockwise triple on T = R/Z for three distinct reduced points."""
    return (b - a).frac() < (c - a).frac()
