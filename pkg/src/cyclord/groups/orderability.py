"""Invariant linear and circular orders on groups.

Contains the invariance checks, the decision procedure for finite groups (a finite
group has a left invariant circular order iff it is cyclic), torsion obstructions to
left invariant linear orders, the dynamically lexicographic comparison of order
automorphisms and the lift of a stabilizer order along an orbit map.
"""

import enum
import functools
import itertools
import random
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

from returns.result import Success

import cyclord as core
from cyclord.groups.action import GroupAction
from cyclord.groups.group import FGAbelian, Group, GroupTable
from cyclord.orders.cop import cop_check
from cyclord.orders.core import CircOrder, LinOrder, circularize, verify_circular_axioms
from cyclord.orders.lex import fibered_lift_oracle
from cyclord.orders.oracle import Budget, CircularOracle, LinearOracle
from cyclord.utils.errors import (
    BudgetExhausted,
    HypothesisError,
    InvariantViolation,
    LabelMismatchError,
    NotCopError,
    NotOrderPreservingError,
)
from cyclord.utils.log import get_logger

logger = get_logger(__name__)

Side = Literal["left", "right", "bi"]


def _translate(G: GroupTable, g: Hashable, x: Hashable, side: str) -> Hashable:
    return G.mul(g, x) if side == "left" else G.mul(x, g)


def invariance_witness(
    G: GroupTable, order: CircOrder | LinOrder, side: Side = "left"
) -> tuple | None:
    """Return (g, points) breaking invariance under translation by g, or None.

    Raises
    ------
    LabelMismatchError
        If the order is not on the elements of `G`.
    """
    if order.label_set != frozenset(G.elements):
        raise LabelMismatchError(f"The order is not on the elements of {G.name}.")
    sides = ("left", "right") if side == "bi" else (side,)
    for s in sides:
        for g in G.elements:
            if isinstance(order, CircOrder):
                for x, y, z in order.triples():
                    gx, gy, gz = (_translate(G, g, p, s) for p in (x, y, z))
                    if not order.triple(gx, gy, gz):
                        return g, (x, y, z)
            else:
                for a, b in itertools.pairwise(order.labels):
                    if not order.less(_translate(G, g, a, s), _translate(G, g, b, s)):
                        return g, (a, b)
    return None


def left_invariance_check(G: GroupTable, order: CircOrder | LinOrder) -> bool:
    """Return True iff left translations preserve `order`.

    For a circular order this means [x, y, z] iff [gx, gy, gz]; for a linear order
    a <= b iff ga <= gb.

    Examples
    --------
    >>> from cyclord.groups.group import cyclic
    >>> left_invariance_check(cyclic(5), CircOrder.standard(5))
    True
    >>> left_invariance_check(cyclic(4), CircOrder((0, 2, 1, 3)))
    False
    """
    return invariance_witness(G, order, "left") is None


def right_invariance_check(G: GroupTable, order: CircOrder | LinOrder) -> bool:
    return invariance_witness(G, order, "right") is None


def bi_invariance_check(G: GroupTable, order: CircOrder | LinOrder) -> bool:
    return invariance_witness(G, order, "bi") is None


@dataclass(frozen=True)
class GroupOrder:
    """An order on the elements of a group with its verified invariance flags."""

    group: GroupTable
    order: CircOrder | LinOrder
    left: bool
    right: bool

    @property
    def bi(self) -> bool:
        return self.left and self.right

    @classmethod
    def of(cls, G: GroupTable, order: CircOrder | LinOrder) -> "GroupOrder":
        return cls(G, order, left_invariance_check(G, order), right_invariance_check(G, order))


def circularize_group_order(G: GroupTable, order: LinOrder) -> GroupOrder:
    """Turn a left invariant linear order into a left invariant circular order.

    Raises
    ------
    HypothesisError
        If `order` is not left invariant.
    """
    if (w := invariance_witness(G, order, "left")) is not None:
        raise HypothesisError(f"The linear order is not left invariant, witness {w}.")
    out = GroupOrder.of(G, circularize(order))
    if not out.left:
        raise InvariantViolation("Circularization lost left invariance.")
    return out


def circularize_oracle(L: LinearOracle) -> CircularOracle:
    """Circular order of a linear oracle: [x, y, z] iff x<y<z, y<z<x or z<x<y."""

    def triple(x: Hashable, y: Hashable, z: Hashable) -> bool:
        lt = L.less
        return (lt(x, y) and lt(y, z)) or (lt(y, z) and lt(z, x)) or (lt(z, x) and lt(x, y))

    return CircularOracle(triple, name=f"circularized {L.name}")


@dataclass(frozen=True)
class LcordDecision:
    """Outcome of `finite_lcord_decide`."""

    orderable: bool
    certificate: CircOrder | None
    generator: Hashable | None
    transcript: tuple[str, ...]


def finite_lcord_decide(G: GroupTable) -> LcordDecision:
    """Decide whether a finite group has a left invariant circular order.

    A cyclic group is certified by the circular order of the powers of its least
    generator; any other group gets the element-order transcript as obstruction.

    Examples
    --------
    >>> from cyclord.groups.group import cyclic, klein
    >>> finite_lcord_decide(cyclic(6)).certificate.labels
    (0, 1, 2, 3, 4, 5)
    >>> finite_lcord_decide(klein()).orderable
    False
    """
    transcript = tuple(
        f"order({g!r}) = {G.orders[g]}" for g in G.elements
    ) + (f"|{G.name}| = {len(G)}",)
    g = G.generator()
    if g is None:
        logger.info("%s is not cyclic", G.name)
        return LcordDecision(False, None, None, (*transcript, "no element generates the group"))
    C = CircOrder(tuple(G.power(g, k) for k in range(len(G))))
    if (w := invariance_witness(G, C, "left")) is not None:
        raise InvariantViolation(f"Generator order of {G.name} not invariant: {w}.")
    return LcordDecision(True, C, g, (*transcript, f"{g!r} generates the group"))


@dataclass(frozen=True)
class TorsionWitness:
    element: Hashable
    order: int


@dataclass(frozen=True)
class NoTorsion:
    """The search was exhaustive and found no torsion."""


@dataclass(frozen=True)
class Inconclusive:
    """No torsion element was found before the search depth ran out."""

    depth: int


def torsion_obstruction(
    G: Group, depth: int = 50, candidates: Iterable[Hashable] | None = None
) -> TorsionWitness | NoTorsion | Inconclusive:
    """Look for g != e with g^n = e, which rules out a left invariant linear order.

    In a discrete group, being topologically torsion (e lies in the closure of the
    powers of g) is the same as being torsion, so this search covers that notion.

    Parameters
    ----------
    G : Group
        A finite `GroupTable` is searched exhaustively. Other groups are searched
        along `candidates` (default: the generators and their pairwise products).
    depth : int
        Largest exponent tried for non-table groups.

    Examples
    --------
    >>> from cyclord.groups.group import cyclic, FGAbelian
    >>> torsion_obstruction(cyclic(2))
    TorsionWitness(element=1, order=2)
    >>> torsion_obstruction(FGAbelian((None,)))
    Inconclusive(depth=50)
    """
    if isinstance(G, GroupTable):
        for g in sorted(G.elements, key=core.utils.labels.label_key):
            if g != G.identity:
                return TorsionWitness(g, G.orders[g])
        return NoTorsion()
    if candidates is None:
        gens = G.generators()
        candidates = gens + [G.mul(a, b) for a, b in itertools.combinations(gens, 2)]
    for g in candidates:
        if g == G.identity:
            continue
        x = g
        for n in range(1, depth + 1):
            if x == G.identity:
                return TorsionWitness(g, n)
            x = G.mul(x, g)
    return Inconclusive(depth)


class Comparison(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    UNRESOLVED = "unresolved"


def _as_callable(g: Callable | Mapping) -> Callable:
    return g.__getitem__ if isinstance(g, Mapping) else g


def dynlex_compare(
    g1: Callable | Mapping,
    g2: Callable | Mapping,
    enumeration: Iterable[Hashable] | None,
    order: LinOrder | LinearOracle,
    budget: int | None = None,
) -> Comparison:
    """Compare two order automorphisms at the first enumerated point they disagree on.

    Parameters
    ----------
    g1, g2 : Callable | Mapping
        The automorphisms.
    enumeration : Iterable[Hashable] | None
        The well-ordering of the space that decides which point is probed first.
        Different enumerations give different, equally valid, orders. For a finite
        `LinOrder` None means canonical label order.
    order : LinOrder | LinearOracle
        The linear order both maps preserve.
    budget : int | None
        Number of points that may be probed, `cyclord.config.PROBE_BUDGET` by default.

    Returns
    -------
    Comparison
        EQUAL if the (finite) enumeration runs out, UNRESOLVED if the budget does.

    Raises
    ------
    NotOrderPreservingError
        If one of the maps reverses two probed points.

    Examples
    --------
    >>> from cyclord.orders.oracle import integer_enumeration, integer_order
    >>> dynlex_compare(lambda x: x + 1, lambda x: x + 2, integer_enumeration(), integer_order())
    <Comparison.LESS: 'less'>
    """
    f1, f2 = _as_callable(g1), _as_callable(g2)
    if enumeration is None:
        if not isinstance(order, LinOrder):
            raise HypothesisError("An infinite space needs an explicit enumeration.")
        enumeration = core.utils.labels.sort_labels(order.labels)
    less = order.less
    probes = Budget(budget)
    seen: list[Hashable] = []
    try:
        for x in enumeration:
            probes.spend()
            for f in (f1, f2):
                for y in seen:
                    if (less(y, x) and not less(f(y), f(x))) or (
                        less(x, y) and not less(f(x), f(y))
                    ):
                        raise NotOrderPreservingError(
                            f"The map does not preserve the order of {y!r} and {x!r}."
                        )
            seen.append(x)
            a, b = f1(x), f2(x)
            if a != b:
                return Comparison.LESS if less(a, b) else Comparison.GREATER
    except BudgetExhausted:
        logger.debug("Maps agree on the first %d probes", probes.limit)
        return Comparison.UNRESOLVED
    return Comparison.EQUAL


def dynlex_order(
    maps: Sequence[Callable | Mapping],
    enumeration: Callable[[], Iterable[Hashable]],
    order: LinOrder | LinearOracle,
    budget: int | None = None,
) -> list[int]:
    """Sort a finite family of automorphisms by `dynlex_compare`.

    Parameters
    ----------
    enumeration : Callable
        Returns a fresh enumeration for every comparison.

    Returns
    -------
    list[int]
        Indices into `maps`, smallest first.

    Raises
    ------
    HypothesisError
        If two maps compare EQUAL or UNRESOLVED.
    """

    def cmp(i: int, j: int) -> int:
        if i == j:
            return 0
        match dynlex_compare(maps[i], maps[j], enumeration(), order, budget):
            case Comparison.LESS:
                return -1
            case Comparison.GREATER:
                return 1
            case outcome:
                raise HypothesisError(f"Maps {i} and {j} are {outcome.value}.")

    return sorted(range(len(maps)), key=functools.cmp_to_key(cmp))


@dataclass
class StabilizerLift:
    """Left invariant circular order on a group lifted from an orbit."""

    oracle: CircularOracle
    orbit: dict[Hashable, Hashable]
    base: CircOrder
    stabilizer_order: LinearOracle | None
    samples: int = 0
    witness: tuple | None = None

    @property
    def invariant(self) -> bool:
        return self.witness is None


def _coset_split(
    G: Group, act: GroupAction, a: Hashable, reps: Mapping[Hashable, Hashable], g: Hashable
) -> Hashable:
    # g = r h with r the representative of g a and h in the stabilizer
    return G.mul(G.inv(reps[act.act(g, a)]), g)


def stabilizer_lift(
    act: GroupAction,
    a: Hashable,
    h_order: LinearOracle | None = None,
    samples: int = 1000,
    rng: random.Random | None = None,
) -> StabilizerLift:
    """Lift an invariant circular order of an orbit to the acting group.

    The orbit map q(g) = g a is the quotient map; the orbit carries the circular
    order of the space and every fiber g St(a) is ordered by transporting
    `h_order`: r h1 < r h2 iff h1 < h2.

    Parameters
    ----------
    act : GroupAction
        A COP action on a `CircOrder`.
    a : Hashable
        Basepoint.
    h_order : LinearOracle | None
        Left invariant order on the stabilizer. If None, the stabilizer must be
        trivial, which is checked for a finite group and requires the action to be
        effective.
    samples : int
        Number of random (g, triple) checks of left invariance, and of (h, pair)
        checks of `h_order`.
    rng : random.Random | None
        Source of the samples, seeded from `cyclord.config.SEED` by default.

    Raises
    ------
    NotCopError
        If a generator does not preserve the circular order.
    HypothesisError
        If the action is not effective, the stabilizer order is missing or it is not
        left invariant on a sample.
    """
    G = act.group
    rng = random.Random(core.config.SEED) if rng is None else rng
    if not isinstance(act.space, CircOrder):
        raise HypothesisError("The action must be on a circular order.")
    if (bad := act.non_preserving()) is not None:
        raise NotCopError(f"Generator {bad[0]!r} is not COP: {bad[1]}.")
    reps = act.orbit(a)
    base = act.space.restrict(reps)
    if h_order is None:
        if not isinstance(G, GroupTable):
            raise HypothesisError("An infinite stabilizer needs an order.")
        if not act.is_effective():
            raise HypothesisError("The action is not effective.")
        if len(H := act.stabilizer(a)) > 1:
            raise HypothesisError(
                f"The stabilizer of {a!r} has {len(H)} elements and no invariant order."
            )

        def fiber_less(g1: Hashable, g2: Hashable) -> bool:
            return False

    else:
        checked = 0
        for _ in range(50 * samples):
            if checked == samples:
                break
            h, h1, h2 = (G.sample(rng) for _ in range(3))
            if any(act.act(x, a) != a for x in (h, h1, h2)) or h1 == h2:
                continue
            checked += 1
            if h_order.less(h1, h2) != h_order.less(G.mul(h, h1), G.mul(h, h2)):
                raise HypothesisError(
                    f"The stabilizer order is not left invariant: h={h!r}, {h1!r}, {h2!r}."
                )

        def fiber_less(g1: Hashable, g2: Hashable) -> bool:
            return h_order.less(
                _coset_split(G, act, a, reps, g1), _coset_split(G, act, a, reps, g2)
            )

    oracle = fibered_lift_oracle(lambda g: act.act(g, a), base, fiber_less)
    out = StabilizerLift(oracle, reps, base, h_order)
    elements = G.elements if isinstance(G, GroupTable) else None
    for _ in range(samples):
        if elements is not None and len(elements) < 3:
            break
        g, x, y, z = (G.sample(rng) for _ in range(4))
        if len({x, y, z}) < 3:
            continue
        out.samples += 1
        gx, gy, gz = (G.mul(g, p) for p in (x, y, z))
        if oracle.triple(x, y, z) != oracle.triple(gx, gy, gz):
            out.witness = (g, (x, y, z))
            logger.info("Lifted order not invariant at g=%r, %s", g, (x, y, z))
            break
    return out


@dataclass
class BsReport:
    """Whether the stabilizer route to a left invariant circular order applies."""

    applies: bool
    reason: str
    stabilizer: list = field(default_factory=list)
    orbit_map_cop: bool | None = None


def bs_condition_check(
    act: GroupAction, a: Hashable, h_order: LinearOracle | None = None
) -> BsReport:
    """Report whether a COP action with an orderable stabilizer yields a group order.

    For a finite group the stabilizer must be trivial, since a finite group has no
    left invariant linear order other than on the trivial group. On success the
    lifted order is materialized and the orbit map g -> g a is checked to be COP.

    Examples
    --------
    >>> from cyclord.groups.group import cyclic
    >>> act = GroupAction.rotations(cyclic(4), CircOrder.standard(4))
    >>> bs_condition_check(act, 0).applies
    True
    """
    G = act.group
    if not isinstance(act.space, CircOrder):
        return BsReport(False, "the space is not circularly ordered")
    if (bad := act.non_preserving()) is not None:
        return BsReport(False, f"generator {bad[0]!r} is not COP: {bad[1]}")
    if not isinstance(G, GroupTable):
        if h_order is None:
            return BsReport(False, "infinite stabilizer without an order")
        lift = stabilizer_lift(act, a, h_order)
        return BsReport(lift.invariant, f"invariance checked on {lift.samples} samples")
    H = act.stabilizer(a)
    if not act.is_effective():
        return BsReport(False, "the action is not effective", H)
    if len(H) > 1:
        return BsReport(False, f"finite stabilizer of order {len(H)} is not trivial", H)
    lift = stabilizer_lift(act, a)
    verdict = verify_circular_axioms(lift.oracle.relation(G.elements))
    if not isinstance(verdict, Success):
        raise InvariantViolation(f"Lifted relation fails {verdict.failure()}.")
    C = verdict.unwrap()
    q = {g: act.act(g, a) for g in G.elements}
    cop = isinstance(cop_check(q, C, lift.base), Success)
    return BsReport(lift.invariant and cop, "stabilizer is trivial", H, cop)


def product_rotation_action(n: int) -> GroupAction:
    """Let Z x Z_n act on the standard n-cycle by rotating through the second factor."""
    return GroupAction(
        FGAbelian((None, n)), CircOrder.standard(n), lambda g, x: (x + g[1]) % n
    )


def first_factor_order() -> LinearOracle:
    """Order the stabilizer Z x {0} by its first coordinate."""
    return LinearOracle(lambda h1, h2: h1[0] < h2[0], name="Z x {0}")
