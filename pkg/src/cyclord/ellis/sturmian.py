"""The double circle T_A and its symbolic enveloping semigroup.

T_A is the circle R/Z with every point of the subgroup A = Z + Z alpha doubled
into ``beta-`` < ``beta+``; points off A are single. The rotation sigma by alpha
generates a cascade on T_A whose enveloping semigroup consists of the powers
``Sigma(n)`` and the maps ``P(gamma, eps)``, x -> (x + gamma)^eps.

Nothing here is materialized: elements are symbols and every composition law
is checked against pointwise evaluation before it is trusted.
"""

import itertools
import random
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction

from cyclord.ellis.quadirr import ALPHA, QuadIrr, circle_triple
from cyclord.orders.lex import lex_triple
from cyclord.utils.errors import InputError
from cyclord.utils.log import get_logger

logger = get_logger(__name__)


class Side(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __repr__(self) -> str:
        return "-0+"[self.value + 1]


@dataclass(frozen=True)
class TAPoint:
    """A point ``beta^side`` of the double circle, normalized on construction."""

    beta: QuadIrr
    side: Side = Side.PLUS

    def __post_init__(self) -> None:
        beta = QuadIrr.coerce(self.beta).frac()
        object.__setattr__(self, "beta", beta)
        if self.side == Side.ZERO:
            raise InputError("Points of the double circle have side - or +.")
        if not beta.in_subgroup():
            object.__setattr__(self, "side", Side.PLUS)
        else:
            object.__setattr__(self, "side", Side(self.side))

    def __repr__(self) -> str:
        return f"TAPoint({self.beta.p}+{self.beta.q}a{self.side!r})"


@dataclass(frozen=True)
class Sigma:
    n: int


@dataclass(frozen=True)
class P:
    gamma: QuadIrr
    sign: Side = Side.PLUS

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", QuadIrr.coerce(self.gamma).frac())
        if self.sign == Side.ZERO:
            raise InputError("P elements carry sign - or +.")
        object.__setattr__(self, "sign", Side(self.sign))


SturmianElt = Sigma | P
Compose = Callable[[SturmianElt, SturmianElt], SturmianElt]


def sturmian_apply(e: SturmianElt, x: TAPoint) -> TAPoint:
    """Evaluate an element at a point.

    Examples
    --------
    >>> sturmian_apply(Sigma(1), TAPoint(0, Side.PLUS)) == TAPoint(ALPHA, Side.PLUS)
    True
    """
    match e:
        case Sigma(n):
            return TAPoint(x.beta + n * ALPHA, x.side)
        case P(gamma, sign):
            return TAPoint(x.beta + gamma, sign)
    raise TypeError(f"Not a Sturmian element: {e!r}")


def sturmian_compose(u: SturmianElt, v: SturmianElt) -> SturmianElt:
    """Return u ∘ v. The sign of a P factor on the left always wins."""
    match u, v:
        case Sigma(m), Sigma(n):
            return Sigma(m + n)
        case P(gamma, eps), Sigma(n):
            return P(gamma + n * ALPHA, eps)
        case Sigma(n), P(gamma, eps):
            return P(gamma + n * ALPHA, eps)
        case P(gamma, eps), P(delta, _):
            return P(gamma + delta, eps)
    raise TypeError(f"Not Sturmian elements: {u!r}, {v!r}")


def _side_less(x: TAPoint, y: TAPoint) -> bool:
    return x.side < y.side


def ta_triple(u: TAPoint, v: TAPoint, w: TAPoint) -> bool:
    """Triple of the lexicographic circular order T x {-, +}.

    Raises
    ------
    InputError
        If two of the points coincide.

    Examples
    --------
    >>> ta_triple(TAPoint(0, Side.MINUS), TAPoint(0, Side.PLUS), TAPoint(ALPHA))
    True
    """
    if len({u, v, w}) < 3:
        raise InputError(f"Triple arguments must be distinct: {u!r}, {v!r}, {w!r}.")
    return lex_triple(u, v, w, lambda x: x.beta, circle_triple, _side_less)


def _embed(e: SturmianElt) -> tuple[QuadIrr, Side]:
    match e:
        case Sigma(n):
            return (n * ALPHA).frac(), Side.ZERO
        case P(gamma, sign):
            return gamma, sign
    raise TypeError(f"Not a Sturmian element: {e!r}")


def sturmian_etriple(u: SturmianElt, v: SturmianElt, w: SturmianElt) -> bool:
    """Triple of the enveloping semigroup, ordered as T x {-, 0, +}.

    ``Sigma(n)`` sits at ``(n alpha, 0)`` between ``P(n alpha, -)`` and ``P(n alpha, +)``.

    Raises
    ------
    InputError
        If two of the elements coincide.

    Examples
    --------
    >>> a3 = 3 * ALPHA
    >>> sturmian_etriple(P(a3, Side.MINUS), Sigma(3), P(a3, Side.PLUS))
    True
    """
    if len({u, v, w}) < 3:
        raise InputError(f"Triple arguments must be distinct: {u!r}, {v!r}, {w!r}.")
    return lex_triple(
        _embed(u),
        _embed(v),
        _embed(w),
        lambda x: x[0],
        circle_triple,
        lambda x, y: x[1] < y[1],
    )


def sturmian_interval(
    lo: SturmianElt, hi: SturmianElt, candidates: Iterable[SturmianElt]
) -> list[SturmianElt]:
    """Return the candidates in the open interval (lo, hi)."""
    return [x for x in candidates if x not in (lo, hi) and sturmian_etriple(lo, x, hi)]


# Samplers


def random_quadirr(rng: random.Random, in_subgroup: bool | None = None) -> QuadIrr:
    """A random number mod 1; in A when `in_subgroup`, off A when False, either when None."""
    if in_subgroup is None:
        in_subgroup = rng.random() < 0.5
    if in_subgroup:
        return (rng.randint(-50, 50) * ALPHA).frac()
    while True:
        x = QuadIrr(
            Fraction(rng.randint(-1000, 1000), rng.randint(2, 60)),
            Fraction(rng.randint(-1000, 1000), rng.randint(1, 60)),
        )
        if not x.in_subgroup():
            return x.frac()


def random_point(rng: random.Random) -> TAPoint:
    return TAPoint(random_quadirr(rng), rng.choice((Side.MINUS, Side.PLUS)))


def random_element(rng: random.Random, n_range: int = 50) -> SturmianElt:
    if rng.random() < 0.4:
        return Sigma(rng.randint(-n_range, n_range))
    return P(random_quadirr(rng), rng.choice((Side.MINUS, Side.PLUS)))


def _random_of(shape: type, rng: random.Random) -> SturmianElt:
    while True:
        e = random_element(rng)
        if isinstance(e, shape):
            return e


LAWS = {
    "sigma_sigma": (Sigma, Sigma),
    "p_sigma": (P, Sigma),
    "sigma_p": (Sigma, P),
    "p_p": (P, P),
}


def _subgroup_cases(
    left: type, right: type
) -> Iterator[tuple[SturmianElt, SturmianElt, TAPoint]]:
    def shaped(shape: type, n: int, sign: Side) -> SturmianElt:
        return Sigma(n) if shape is Sigma else P(n * ALPHA, sign)

    sides = (Side.MINUS, Side.PLUS)
    for s, t, r in itertools.product(sides, repeat=3):
        yield shaped(left, 2, s), shaped(right, -1, t), TAPoint(ALPHA, r)


@dataclass
class LawReport:
    law: str
    samples: int
    seed: int | None
    witness: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.witness is None


def verify_composition_laws(
    samples: int = 500,
    rng: random.Random | None = None,
    seed: int | None = None,
    compose: Compose = sturmian_compose,
) -> list[LawReport]:
    """Check every composition law pointwise at `samples` random points.

    For each law a fresh pair (u, v) of the law's shape is drawn per point and
    ``compose(u, v)(x)`` is compared to ``u(v(x))``. After the random draws come
    fixed cases with the point and both shifts in A, under every choice of sides.
    """
    rng = random.Random(seed) if rng is None else rng
    reports = []
    for law, (left, right) in LAWS.items():
        report = LawReport(law, samples, seed)
        drawn = (
            (_random_of(left, rng), _random_of(right, rng), random_point(rng))
            for _ in range(samples)
        )
        for u, v, x in itertools.chain(drawn, _subgroup_cases(left, right)):
            if sturmian_apply(compose(u, v), x) != sturmian_apply(u, sturmian_apply(v, x)):
                report.witness = (u, v, x)
                logger.warning("Composition law %s fails at %r", law, report.witness)
                break
        reports.append(report)
    return reports


@dataclass
class IdealReport:
    ideal_sampled: bool
    left_closed: bool = True
    right_closed: bool = True
    witness: tuple | None = None
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ideal_sampled and self.left_closed and self.right_closed


def verify_minimal_ideal(
    samples: Sequence[SturmianElt], compose: Compose = sturmian_compose
) -> IdealReport:
    """Check that the P-part of the sample absorbs multiplication from both sides.

    Left closure is ``s ∘ p`` in the P-part, right closure ``p ∘ s``. The first
    counterexample stops the sweep.
    """
    ideal = [e for e in samples if isinstance(e, P)]
    if not ideal:
        return IdealReport(False, messages=["no ideal elements sampled"])
    report = IdealReport(True)
    for p, s in itertools.product(ideal, samples):
        if not isinstance(compose(s, p), P):
            report.left_closed = False
            report.witness = ("left", s, p)
            break
        if not isinstance(compose(p, s), P):
            report.right_closed = False
            report.witness = ("right", p, s)
            break
    if report.passed:
        report.messages.append(f"P-part of {len(ideal)} elements closed on both sides")
    return report


def _translation_preserves(
    f: Callable[[SturmianElt], SturmianElt],
    triples: Sequence[tuple[SturmianElt, SturmianElt, SturmianElt]],
) -> bool:
    pool = {x for t in triples for x in t}
    for a, b, c in triples:
        fa, fb, fc = f(a), f(b), f(c)
        if len({fa, fb, fc}) == 3:
            if not sturmian_etriple(fa, fb, fc):
                logger.info("Triple %r not preserved", (a, b, c))
                return False
            continue
        # a collapsed pair must have a constant closed arc between its ends
        for x, y in ((a, b), (b, c), (c, a)):
            if f(x) != f(y):
                continue
            forward = [x, y, *sturmian_interval(x, y, pool)]
            backward = [y, x, *sturmian_interval(y, x, pool)]
            if not (
                all(f(z) == f(x) for z in forward) or all(f(z) == f(x) for z in backward)
            ):
                logger.info("Collapse of %r and %r is not convex", x, y)
                return False
    return True


def verify_translation_cop(
    u: SturmianElt,
    triples: Sequence[tuple[SturmianElt, SturmianElt, SturmianElt]],
    compose: Compose = sturmian_compose,
) -> bool:
    """Return True iff both translations by `u` preserve or consistently collapse each triple.

    Parameters
    ----------
    u : SturmianElt
        The translating element.
    triples : Sequence
        Sampled triples ``(a, b, c)`` of distinct elements with ``[a, b, c]``.
    """
    return _translation_preserves(
        lambda s: compose(u, s), triples
    ) and _translation_preserves(lambda s: compose(s, u), triples)


def random_triples(
    rng: random.Random, count: int, n_range: int = 50
) -> list[tuple[SturmianElt, SturmianElt, SturmianElt]]:
    """Sample `count` positively oriented triples of distinct elements."""
    out = []
    while len(out) < count:
        a, b, c = (random_element(rng, n_range) for _ in range(3))
        if len({a, b, c}) < 3:
            continue
        out.append((a, b, c) if sturmian_etriple(a, b, c) else (a, c, b))
    return out
