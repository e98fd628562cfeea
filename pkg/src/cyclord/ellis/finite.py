"""Enveloping semigroups of actions on finite ordered sets, and the pointwise order on them.

For an action on a finite space K the enveloping semigroup E(K) is the image of
the group in K^K. Given a strongly monotone action on a chain, E(K) is linearly
ordered by ``s1 ⪯ s2`` iff ``s1 a <= s2 a`` for every a in K; `ellis_linear_order`
builds this order and checks each of its properties on the given instance. The
same routine accepts symbolic systems (see `cyclord.ellis.cascade`) through
`OrderedSystem`.
"""

import functools
import itertools
from collections.abc import Callable, Hashable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Self

import numpy as np
from returns.result import Failure, Result, Success

from cyclord.groups.action import GroupAction
from cyclord.orders.core import (
    AxiomViolation,
    CircOrder,
    LinOrder,
    TernaryRelation,
    verify_circular_axioms,
)
from cyclord.utils.errors import HypothesisError, InvariantViolation
from cyclord.utils.log import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class OrderedSystem:
    """Points of an ordered space together with how semigroup elements act on them.

    Attributes
    ----------
    points : tuple
        The (sampled) points; ``s1 ⪯ s2`` is decided on these.
    less : Callable
        Strict order between values of the space.
    apply : Callable
        ``apply(s, x)`` is ``s x``.
    compose : Callable
        ``compose(s, t)`` is ``s ∘ t``.
    """

    points: tuple
    less: Callable[[Any, Any], bool]
    apply: Callable[[Any, Any], Any]
    compose: Callable[[Any, Any], Any]

    def le(self, s1: Hashable, s2: Hashable) -> bool:
        """Pointwise ``s1 ⪯ s2``."""
        return not any(self.less(self.apply(s2, a), self.apply(s1, a)) for a in self.points)

    def agree(self, s1: Hashable, s2: Hashable) -> bool:
        return all(self.apply(s1, a) == self.apply(s2, a) for a in self.points)


@dataclass(frozen=True)
class TransformationSemigroup:
    """A set of self-maps of a finite carrier, closed under composition.

    Maps are tuples of image indices: ``s[i]`` is the index of the image of
    ``carrier[i]``.

    Examples
    --------
    >>> E = TransformationSemigroup.generated((0, 1, 2), [(1, 2, 0)])
    >>> len(E), E.identity in E.elements
    (3, True)
    """

    carrier: tuple
    elements: tuple[tuple[int, ...], ...]
    attribution: Mapping[Hashable, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = len(self.carrier)
        for s in self.elements:
            if len(s) != n or any(not 0 <= i < n for i in s):
                raise HypothesisError(f"{s!r} is not a self-map of {n} points.")
        if not self.is_closed():
            raise InvariantViolation("The maps are not closed under composition.")

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.carrier)}

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(range(len(self.carrier)))

    def apply(self, s: Sequence[int], x: Hashable) -> Hashable:
        return self.carrier[s[self.index[x]]]

    @staticmethod
    def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
        """Return s ∘ t."""
        return tuple(s[i] for i in t)

    def cayley(self) -> np.ndarray:
        """``M[i, j, x]`` is the image of point x under elements[i] ∘ elements[j]."""
        M = np.array(self.elements, dtype=int).reshape(len(self.elements), len(self.carrier))
        return M[:, M]

    def is_closed(self) -> bool:
        if not self.elements:
            return True
        members = set(self.elements)
        products = self.cayley().reshape(-1, len(self.carrier))
        return all(tuple(int(i) for i in row) in members for row in products)

    @property
    def j_injective(self) -> bool:
        return len(set(self.attribution.values())) == len(self.attribution)

    @classmethod
    def generated(
        cls,
        carrier: Sequence[Hashable],
        generators: Sequence[Sequence[int]],
        attribution: Mapping[Hashable, tuple[int, ...]] | None = None,
    ) -> Self:
        """Close the identity and `generators` under composition."""
        identity = tuple(range(len(carrier)))
        gens = [tuple(s) for s in generators]
        found = {identity}
        frontier = [identity]
        while frontier:
            new = []
            for s in frontier:
                for t in gens:
                    st = cls.compose(t, s)
                    if st not in found:
                        found.add(st)
                        new.append(st)
            frontier = new
        return cls(tuple(carrier), tuple(sorted(found)), dict(attribution or {}))

    def system(self, order: LinOrder) -> OrderedSystem:
        """The carrier ordered by `order`, acted on by this semigroup."""
        if order.label_set != set(self.carrier):
            raise HypothesisError("The order does not live on the carrier.")
        return OrderedSystem(
            points=order.labels,
            less=order.less,
            apply=self.apply,
            compose=self.compose,
        )


def finite_ellis(act: GroupAction) -> TransformationSemigroup:
    """Return the enveloping semigroup of an action on a finite space.

    On a finite space the pointwise closure of the translations is the set of
    translations, which is compared against the closure of the generator images.

    Raises
    ------
    InvariantViolation
        If the translations and the generated semigroup disagree.

    Examples
    --------
    >>> from cyclord.groups.group import cyclic
    >>> act = GroupAction.rotations(cyclic(6), CircOrder.standard(3))
    >>> E = finite_ellis(act)
    >>> len(E), E.j_injective
    (3, False)
    """
    carrier = act.space.labels
    index = {x: i for i, x in enumerate(carrier)}
    j = {g: tuple(index[m[x]] for x in carrier) for g, m in act.maps().items()}
    E = TransformationSemigroup.generated(
        carrier, [j[g] for g in act.group.generators()], j
    )
    if set(E.elements) != set(j.values()):
        raise InvariantViolation("Translations are not closed under composition.")
    if E.j_injective != act.is_effective():
        raise InvariantViolation("Injectivity of j disagrees with effectiveness.")
    logger.debug("Enveloping semigroup of %r has %d elements", act, len(E))
    return E


@dataclass(frozen=True)
class EllisFailure:
    """The first property of the pointwise order that fails, with a witness."""

    claim: str
    witness: tuple


@dataclass(frozen=True)
class EllisOrder:
    """The pointwise order on a set of semigroup elements with its verified properties."""

    order: LinOrder
    system: OrderedSystem
    claims: Mapping[str, bool | str]

    def less(self, s1: Hashable, s2: Hashable) -> bool:
        return self.order.less(s1, s2)


def ellis_linear_order(
    elements: Sequence[Hashable],
    system: OrderedSystem,
    group_order: Sequence[Hashable] | None = None,
    attribution: Mapping[Hashable, Hashable] | None = None,
) -> Result[EllisOrder, EllisFailure]:
    """Order `elements` pointwise and verify that the result is a linearly ordered semigroup.

    Checks run in this order and the first failure is returned:

    1. strong monotonicity: every orbit map ``g -> j(g) x`` is order preserving for
       `group_order` (only when a group order is given),
    2. totality and antisymmetry of ⪯ on the points of `system`,
    3. right invariance ``s1 ⪯ s2 => s1 p ⪯ s2 p``,
    4. left invariance ``s1 ⪯ s2 => p s1 ⪯ p s2``,
    5. ``j`` is an order embedding of the group order (only with a group order).

    Closedness of ⪯ is a topological property and is vacuous on finite samples.

    Parameters
    ----------
    elements : Sequence
        Distinct semigroup elements.
    system : OrderedSystem
        The points the order is decided on.
    group_order : Sequence | None
        Group elements in increasing order.
    attribution : Mapping | None
        The map j from group elements to semigroup elements.
    """
    elements = list(dict.fromkeys(elements))
    j = dict(attribution or {})
    claims: dict[str, bool | str] = {"closedness": "vacuous on a finite sample"}

    if group_order is not None:
        for g1, g2 in itertools.pairwise(group_order):
            for x in system.points:
                if system.less(system.apply(j[g2], x), system.apply(j[g1], x)):
                    return _fail("strong_monotonicity", (x, g1, g2))
        claims["strong_monotonicity"] = True

    for s1, s2 in itertools.combinations(elements, 2):
        le, ge = system.le(s1, s2), system.le(s2, s1)
        if not (le or ge):
            return _fail("totality", (s1, s2))
        if le and ge:
            return _fail("antisymmetry", (s1, s2))
    claims["totality"] = claims["antisymmetry"] = True

    ordered = sorted(
        elements, key=functools.cmp_to_key(lambda s, t: -1 if system.le(s, t) else 1)
    )
    # comparisons along consecutive pairs imply them for all pairs
    for s1, s2 in itertools.pairwise(ordered):
        for p in elements:
            if not system.le(system.compose(s1, p), system.compose(s2, p)):
                return _fail("right_invariance", (s1, s2, p))
    claims["right_invariance"] = True
    for s1, s2 in itertools.pairwise(ordered):
        for p in elements:
            if not system.le(system.compose(p, s1), system.compose(p, s2)):
                return _fail("left_invariance", (s1, s2, p))
    claims["left_invariance"] = True

    if group_order is not None:
        for g1, g2 in itertools.pairwise(group_order):
            a, b = j[g1], j[g2]
            if not system.le(a, b) or system.agree(a, b):
                return _fail("embedding", (g1, g2))
        claims["embedding"] = True

    return Success(EllisOrder(LinOrder(tuple(ordered)), system, claims))


def _fail(claim: str, witness: tuple) -> Result[EllisOrder, EllisFailure]:
    logger.info("Pointwise order fails %s, witness %s", claim, witness)
    return Failure(EllisFailure(claim, witness))


def finite_ellis_order(
    E: TransformationSemigroup, K: LinOrder, group_order: LinOrder | None = None
) -> Result[EllisOrder, EllisFailure]:
    """`ellis_linear_order` for a finite semigroup on a chain."""
    return ellis_linear_order(
        E.elements,
        E.system(K),
        None if group_order is None else group_order.labels,
        E.attribution if group_order is not None else None,
    )


@dataclass
class CorderProbe:
    """Evidence gathered by `ellis_corder_probe`. Experimental: no theorem backs it."""

    elements: int
    decided: int
    undecided: int
    verdict: Result[CircOrder, AxiomViolation] | None
    disagreements: list[tuple] = field(default_factory=list)
    experimental: bool = True

    @property
    def passed(self) -> bool:
        return (
            self.undecided == 0
            and not self.disagreements
            and (self.verdict is None or isinstance(self.verdict, Success))
        )


def ellis_corder_probe(
    elements: Sequence[Hashable],
    triple: Callable[[Any, Any, Any], bool],
    apply: Callable[[Any, Any], Any],
    basepoints: Sequence[Any],
    reference: Callable[[Any, Any, Any], bool] | None = None,
) -> CorderProbe:
    """Test whether pointwise evaluation induces a circular order on semigroup elements.

    ``[s1, s2, s3]`` is decided at the first basepoint where the three images are
    distinct, by `triple` on the images. The induced relation is then run through
    the circular order axioms and, when given, compared with `reference`.
    Whether the circular analogue of the linear theorem holds is open; the
    outcome is evidence on this instance only.
    """
    elements = list(dict.fromkeys(elements))
    triples = set()
    decided = undecided = 0
    disagreements = []
    for s1, s2, s3 in itertools.combinations(elements, 3):
        for b in basepoints:
            images = apply(s1, b), apply(s2, b), apply(s3, b)
            if len(set(images)) == 3:
                decided += 1
                for u, v, w in itertools.permutations((s1, s2, s3)):
                    holds = triple(apply(u, b), apply(v, b), apply(w, b))
                    if holds:
                        triples.add((u, v, w))
                    if reference is not None and holds != reference(u, v, w):
                        disagreements.append((u, v, w))
                break
        else:
            undecided += 1
    verdict = None
    if len(elements) >= 3:
        relation = TernaryRelation(frozenset(elements), frozenset(triples))
        verdict = verify_circular_axioms(relation, max_size=len(elements))
    logger.info(
        "Experimental probe: %d decided, %d undecided, %d disagreements",
        decided,
        undecided,
        len(disagreements),
    )
    return CorderProbe(len(elements), decided, undecided, verdict, disagreements)


def finite_corder_probe(
    E: TransformationSemigroup, K: CircOrder, basepoints: Sequence[Hashable] | None = None
) -> CorderProbe:
    """`ellis_corder_probe` for a finite semigroup on a circular order."""
    if K.label_set != set(E.carrier):
        raise HypothesisError("The circular order does not live on the carrier.")
    return ellis_corder_probe(
        E.elements, K.triple, E.apply, K.labels if basepoints is None else basepoints
    )
