"""Test exact arithmetic in Q(alpha)."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from cyclord.ellis.quadirr import ALPHA, QuadIrr, circle_triple, interval_sign, qi_sign

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=500)
numbers = st.builds(QuadIrr, rationals, rationals)


def test_alpha() -> None:
    """alpha is the positive root of x^2 + x - 1."""
    assert ALPHA * ALPHA + ALPHA - 1 == QuadIrr()
    assert 0 < ALPHA < 1
    assert ALPHA.floor() == 0
    assert (-ALPHA).floor() == -1
    assert (5 * ALPHA).floor() == 3
    assert (5 * ALPHA).frac() == 5 * ALPHA - 3


def test_sign_near_zero() -> None:
    """Convergent approximations of alpha are decided exactly."""
    # Fibonacci ratios approach alpha from alternating sides
    assert qi_sign(ALPHA - Fraction(89, 144)) == -1
    assert qi_sign(ALPHA - Fraction(144, 233)) == 1
    assert qi_sign(QuadIrr()) == 0
    assert interval_sign(QuadIrr()) == 0


def test_interval_sign_precisions_independent() -> None:
    """A coarse call abstains without disturbing a fine one, in either order."""
    x = QuadIrr(832040, -1346269)
    assert interval_sign(x, 8) is None
    assert interval_sign(x, 128) == qi_sign(x) != 0
    assert interval_sign(x, 8) is None
    assert interval_sign(x, 128) == qi_sign(x)


def test_subgroup() -> None:
    """Z + Z alpha is integrality of both coordinates."""
    assert QuadIrr(3, -2).in_subgroup()
    assert not QuadIrr(Fraction(1, 2), 0).in_subgroup()
    assert QuadIrr.from_list(QuadIrr(Fraction(1, 3), -2).to_list()) == QuadIrr(Fraction(1, 3), -2)


def test_circle_triple() -> None:
    """Counterclockwise order of three points of the circle."""
    a, b, c = QuadIrr(0), QuadIrr(Fraction(1, 4)), QuadIrr(Fraction(1, 2))
    assert circle_triple(a, b, c)
    assert circle_triple(b, c, a)
    assert not circle_triple(c, b, a)
    assert circle_triple(ALPHA.frac(), (2 * ALPHA).frac(), QuadIrr(Fraction(9, 10)))


@given(numbers)
def test_interval_sign_never_contradicts(x: QuadIrr) -> None:
    """The enclosure either agrees with the exact sign or abstains."""
    assert interval_sign(x) in (None, qi_sign(x))
    assert qi_sign(-x) == -qi_sign(x)


@given(numbers, numbers)
def test_sign_is_multiplicative(x: QuadIrr, y: QuadIrr) -> None:
    """Q(alpha) is an ordered field."""
    assert qi_sign(x * y) == qi_sign(x) * qi_sign(y)
    assert (x < y) == (qi_sign(y - x) == 1)


@given(numbers)
def test_frac_in_unit_interval(x: QuadIrr) -> None:
    """frac is in [0, 1) and differs from x by an integer."""
    f = x.frac()
    assert 0 <= f < 1
    assert (x - f).in_subgroup() and (x - f).q == 0


if __name__ == "__main__":
    test_alpha()
    test_sign_near_zero()
