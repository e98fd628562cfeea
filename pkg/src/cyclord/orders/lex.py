"""Lexicographic products and fibered lifts of circular orders.

Both constructions evaluate the same five-case rule: points over distinct base
points are ordered by the base, points sharing a base point by the fiber order.
"""

import itertools
import random
from collections.abc import Callable, Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from returns.result import Success

from cyclord.orders.cop import lop_check
from cyclord.orders.core import (
    CircOrder,
    LinOrder,
    TernaryRelation,
    verify_circular_axioms,
)
from cyclord.orders.oracle import Budget, CircularOracle, LinearOracle
from cyclord.utils.errors import (
    HypothesisError,
    InputError,
    InvariantViolation,
    LabelMismatchError,
    NotEquivariantError,
    PartialMapError,
)
from cyclord.utils.log import get_logger

logger = get_logger(__name__)


def _materialize(rel: TernaryRelation) -> CircOrder:
    verdict = verify_circular_axioms(rel)
    if not isinstance(verdict, Success):
        raise InvariantViolation(f"Constructed relation fails {verdict.failure()}.")
    return verdict.unwrap()


def lex_triple(
    x1: Hashable,
    x2: Hashable,
    x3: Hashable,
    project: Callable[[Hashable], Hashable],
    base_triple: Callable[[Hashable, Hashable, Hashable], bool],
    fiber_less: Callable[[Hashable, Hashable], bool],
) -> bool:
    """Evaluate the five-case lexicographic triple.

    Parameters
    ----------
    x1, x2, x3 : Hashable
        Points upstairs.
    project : Callable
        The map to the base.
    base_triple : Callable
        Triple predicate of the base circular order.
    fiber_less : Callable
        Strict order between two points with the same projection.

    Returns
    -------
    bool
        False unless the three points are distinct.
    """
    if x1 == x2 or x2 == x3 or x1 == x3:
        return False
    a, b, c = project(x1), project(x2), project(x3)
    if a != b and b != c and a != c:
        return base_triple(a, b, c)
    if a == b != c:
        return fiber_less(x1, x2)
    if b == c != a:
        return fiber_less(x2, x3)
    if c == a != b:
        return fiber_less(x3, x1)
    lt = fiber_less
    return (lt(x1, x2) and lt(x2, x3)) or (lt(x2, x3) and lt(x3, x1)) or (
        lt(x3, x1) and lt(x1, x2)
    )


def lex_lin_lin(L1: LinOrder, L2: LinOrder) -> LinOrder:
    """Return the lexicographic product, ordered first by `L1` then by `L2`.

    Examples
    --------
    >>> lex_lin_lin(LinOrder((0, 1)), LinOrder(("a", "b"))).labels
    ((0, 'a'), (0, 'b'), (1, 'a'), (1, 'b'))
    """
    return LinOrder(tuple((a, x) for a in L1.labels for x in L2.labels))


@dataclass(frozen=True)
class LexCircProduct:
    """Lexicographic product of a circular order with a linear order.

    Points are pairs ``(base label, fiber label)``. Either factor may be an oracle.
    """

    base: CircOrder | CircularOracle
    fiber: LinOrder | LinearOracle

    def triple(
        self, u: tuple, v: tuple, w: tuple, budget: Budget | None = None
    ) -> bool:
        def base_triple(a: Hashable, b: Hashable, c: Hashable) -> bool:
            if isinstance(self.base, CircularOracle):
                return self.base.triple(a, b, c, budget)
            return self.base.triple(a, b, c)

        def fiber_less(p: tuple, q: tuple) -> bool:
            if isinstance(self.fiber, LinearOracle):
                return self.fiber.less(p[1], q[1], budget)
            return self.fiber.less(p[1], q[1])

        return lex_triple(u, v, w, lambda p: p[0], base_triple, fiber_less)

    def as_oracle(self, limit: int | None = None) -> CircularOracle:
        """Return the product as a lazily evaluated triple oracle.

        Every query gets its own `Budget` of `limit` probes.
        """
        return CircularOracle(
            lambda u, v, w: self.triple(u, v, w, Budget(limit)),
            name=f"{self.base!r} ⊗ {self.fiber!r}",
        )

    def points(self) -> list[tuple]:
        if not isinstance(self.base, CircOrder) or not isinstance(self.fiber, LinOrder):
            raise InputError("Only a product of finite orders has a point list.")
        return [(a, x) for a in self.base.labels for x in self.fiber.labels]

    def to_circ_order(self) -> CircOrder:
        """Materialize a finite product, checked against the circular axioms."""
        return _materialize(self.as_oracle().relation(self.points()))


def lex_circ_lin(C: CircOrder, L: LinOrder) -> CircOrder:
    """Return the lexicographic circular order on C × L.

    Examples
    --------
    >>> lex_circ_lin(CircOrder.standard(3), LinOrder(("a", "b"))).labels[:3]
    ((0, 'a'), (0, 'b'), (1, 'a'))
    """
    out = LexCircProduct(C, L).to_circ_order()
    expected = CircOrder(tuple((a, x) for a in C.labels for x in L.labels))
    if out != expected:
        raise InvariantViolation("Lexicographic product is not the block sequence.")
    return out


@dataclass(frozen=True)
class FiberedLift:
    """Circular order on X lifted from a circular order on Y along q: X -> Y.

    Build it with `build_fibered_lift`, which validates the data.
    """

    q: Mapping[Hashable, Hashable]
    base: CircOrder
    fibers: Mapping[Hashable, LinOrder]
    points: tuple = field(default=())

    def project(self, x: Hashable) -> Hashable:
        return self.q[x]

    def fiber_less(self, a: Hashable, b: Hashable) -> bool:
        return self.fibers[self.q[a]].less(a, b)

    def triple(self, x1: Hashable, x2: Hashable, x3: Hashable) -> bool:
        return lex_triple(x1, x2, x3, self.project, self.base.triple, self.fiber_less)

    def sequence(self) -> tuple:
        """Fibers laid out in base order, each in its own linear order."""
        return tuple(x for y in self.base.labels for x in self.fibers[y].labels)

    def to_circ_order(self) -> CircOrder:
        """Materialize the lift and confirm that it satisfies the circular axioms."""
        out = _materialize(CircularOracle(self.triple).relation(self.points))
        if out != CircOrder(self.sequence()):
            raise InvariantViolation("Lifted relation is not the fiber sequence.")
        return out


def build_fibered_lift(
    q: Mapping[Hashable, Hashable],
    base: CircOrder,
    fibers: Mapping[Hashable, LinOrder],
) -> FiberedLift:
    """Validate and assemble the data of a fibered lift.

    Raises
    ------
    InputError
        If `q` is not onto the base.
    LabelMismatchError
        If the fiber orders do not partition the domain of `q` along its fibers.
    """
    for y in q.values():
        base.index(y)
    if set(q.values()) != base.label_set:
        missing = sorted(map(repr, base.label_set - set(q.values())))
        raise InputError(f"q is not onto, missing {', '.join(missing)}.")
    for y in base.labels:
        if y not in fibers:
            raise PartialMapError(f"No fiber order over {y!r}.")
        expected = {x for x, qx in q.items() if qx == y}
        if fibers[y].label_set != expected:
            raise LabelMismatchError(
                f"Fiber order over {y!r} does not match the preimage of {y!r}."
            )
    return FiberedLift(dict(q), base, dict(fibers), tuple(q))


def fibered_lift(
    q: Mapping[Hashable, Hashable],
    base: CircOrder,
    fibers: Mapping[Hashable, LinOrder],
) -> CircOrder:
    """Return the lifted circular order on the domain of `q`.

    Examples
    --------
    >>> q = {x: x // 2 for x in range(6)}
    >>> fibers = {y: LinOrder((2 * y, 2 * y + 1)) for y in range(3)}
    >>> fibered_lift(q, CircOrder.standard(3), fibers).labels
    (0, 1, 2, 3, 4, 5)
    """
    return build_fibered_lift(q, base, fibers).to_circ_order()


def fibered_lift_oracle(
    q: Callable[[Hashable], Hashable],
    base: CircOrder | CircularOracle,
    fiber_less: Callable[[Hashable, Hashable], bool],
    budget: Budget | None = None,
) -> CircularOracle:
    """Return the lift as a triple oracle, for infinite domains."""

    def base_triple(a: Hashable, b: Hashable, c: Hashable) -> bool:
        if isinstance(base, CircularOracle):
            return base.triple(a, b, c, budget)
        return base.triple(a, b, c)

    return CircularOracle(
        lambda x1, x2, x3: lex_triple(x1, x2, x3, q, base_triple, fiber_less),
        name="fibered lift",
    )


def lift_equivariance_witness(
    x_maps: Mapping[Any, Mapping],
    y_maps: Mapping[Any, Mapping],
    lift: FiberedLift,
    samples: int | None = None,
    rng: random.Random | None = None,
) -> tuple | None:
    """Return a (g, triple) whose image triple fails in the lift, or None.

    Raises
    ------
    NotEquivariantError
        If q is not a G-map for the two actions.
    """
    for g, gx in x_maps.items():
        for x in lift.points:
            if lift.q[gx[x]] != y_maps[g][lift.q[x]]:
                raise NotEquivariantError(
                    f"q(g x) != g q(x) for g={g!r}, x={x!r}."
                )
    triples: Sequence[tuple] = list(itertools.permutations(lift.points, 3))
    pairs = [(g, t) for g in x_maps for t in triples]
    if samples is not None and samples < len(pairs):
        pairs = (rng or random.Random(0)).sample(pairs, samples)
    for g, (a, b, c) in pairs:
        gx = x_maps[g]
        if lift.triple(a, b, c) and not lift.triple(gx[a], gx[b], gx[c]):
            logger.info("g=%r breaks the lifted triple %s", g, (a, b, c))
            return g, (a, b, c)
    return None


def lift_equivariance_check(
    x_maps: Mapping[Any, Mapping],
    y_maps: Mapping[Any, Mapping],
    lift: FiberedLift,
    samples: int | None = None,
    rng: random.Random | None = None,
) -> bool:
    """Return True iff every checked g preserves the lifted circular order.

    Parameters
    ----------
    x_maps, y_maps : Mapping
        For each group element, its action on X and on Y as a dict.
    lift : FiberedLift
        The lift whose order is tested.
    samples : int | None
        Number of random (g, triple) pairs to test. All pairs are tested if None.
    rng : random.Random | None
        Generator for the sample.
    """
    return lift_equivariance_witness(x_maps, y_maps, lift, samples, rng) is None


def _is_effective(maps: Mapping[Any, Mapping]) -> bool:
    tables = [tuple(sorted(m.items(), key=repr)) for m in maps.values()]
    return len(set(tables)) == len(tables)


def ordered_sum_action(
    K1: LinOrder,
    maps1: Mapping[Any, Mapping],
    K2: LinOrder,
    maps2: Mapping[Any, Mapping],
) -> tuple[LinOrder, dict]:
    """Order K1 before K2 and let pairs (g1, g2) act componentwise.

    Labels shared by K1 and K2 are tagged ``(0, x)`` and ``(1, x)``.

    Returns
    -------
    tuple[LinOrder, dict]
        The sum and the action of every pair (g1, g2) as a dict.

    Raises
    ------
    HypothesisError
        If either action is not order preserving or not effective.
    """
    for K, maps in ((K1, maps1), (K2, maps2)):
        for g, m in maps.items():
            if not lop_check(m, K, K):
                raise HypothesisError(f"{g!r} does not preserve the order.")
        if not _is_effective(maps):
            raise HypothesisError("The action is not effective.")
    tag = bool(K1.label_set & K2.label_set)

    def left(x: Hashable) -> Hashable:
        return (0, x) if tag else x

    def right(x: Hashable) -> Hashable:
        return (1, x) if tag else x

    K = LinOrder(tuple(map(left, K1.labels)) + tuple(map(right, K2.labels)))
    action = {}
    for g1, m1 in maps1.items():
        for g2, m2 in maps2.items():
            table = {left(x): left(m1[x]) for x in K1.labels}
            table |= {right(x): right(m2[x]) for x in K2.labels}
            action[(g1, g2)] = table
    if not all(lop_check(m, K, K) for m in action.values()) or not _is_effective(action):
        raise InvariantViolation("The ordered sum action is not LOP and effective.")
    return K, action
