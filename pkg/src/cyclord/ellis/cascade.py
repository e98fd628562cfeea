"""The translation cascade on the two-point compactification Z ∪ {-inf, +inf}.

Its enveloping semigroup is Z together with two absorbing limit maps: LimPlus
sends every integer to +inf, LimMinus every integer to -inf, both fixing the
endpoints.
"""

import math
from collections.abc import Iterator
from dataclasses import dataclass

from cyclord.ellis.finite import OrderedSystem
from cyclord.utils.log import get_logger

logger = get_logger(__name__)

ExtInt = int | float


@dataclass(frozen=True)
class Trans:
    n: int


@dataclass(frozen=True)
class LimMinus:
    pass


@dataclass(frozen=True)
class LimPlus:
    pass


CascadeElt = Trans | LimMinus | LimPlus


def cascade_apply(u: CascadeElt, x: ExtInt) -> ExtInt:
    if math.isinf(x):
        return x
    match u:
        case Trans(n):
            return x + n
        case LimPlus():
            return math.inf
        case LimMinus():
            return -math.inf
    raise TypeError(f"Not a cascade element: {u!r}")


def cascade_compose(u: CascadeElt, v: CascadeElt) -> CascadeElt:
    """Return u ∘ v: a limit on the right absorbs, then a limit on the left.

    Examples
    --------
    >>> cascade_compose(Trans(2), Trans(3))
    Trans(n=5)
    >>> cascade_compose(LimMinus(), LimPlus())
    LimPlus()
    """
    if not isinstance(v, Trans):
        return v
    if not isinstance(u, Trans):
        return u
    return Trans(u.n + v.n)


def window(radius: int) -> list[ExtInt]:
    return [-math.inf, *range(-radius, radius + 1), math.inf]


def cascade_elements(n_max: int) -> list[CascadeElt]:
    return [LimMinus(), *(Trans(n) for n in range(-n_max, n_max + 1)), LimPlus()]


def cascade_table_mismatches(n_max: int = 10, radius: int = 100) -> Iterator[tuple]:
    """Yield (u, v, x) where the symbolic product disagrees with evaluation."""
    points = window(radius)
    elements = cascade_elements(n_max)
    for u in elements:
        for v in elements:
            w = cascade_compose(u, v)
            for x in points:
                if cascade_apply(w, x) != cascade_apply(u, cascade_apply(v, x)):
                    yield u, v, x
                    break


def cascade_table_check(n_max: int = 10, radius: int = 100) -> bool:
    """Return True iff the composition table matches pointwise evaluation on the window."""
    mismatch = next(cascade_table_mismatches(n_max, radius), None)
    if mismatch is not None:
        logger.warning("Cascade composition table disagrees with evaluation at %r", mismatch)
    return mismatch is None


def cascade_system(radius: int) -> OrderedSystem:
    """The window with its endpoints, ordered as extended integers."""
    return OrderedSystem(
        points=tuple(window(radius)),
        less=lambda x, y: x < y,
        apply=cascade_apply,
        compose=cascade_compose,
    )
