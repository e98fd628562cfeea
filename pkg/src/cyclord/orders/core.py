"""Finite linear and circular orders, axiom verification, intervals and cuts.

A circular order on a finite set is stored as the cyclic sequence of its labels,
rotated so that the least label (see `cyclord.utils.labels.label_key`) comes first.
The ternary predicate ``[a, b, c]`` then holds iff the three labels are distinct and
their positions occur in strictly ascending cyclic order.
"""

import functools
import itertools
from collections.abc import Collection, Hashable, Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Literal, Self

from returns.result import Failure, Result, Success

import cyclord as core
from cyclord.utils.errors import (
    InputError,
    InvariantViolation,
    LabelMismatchError,
    SizeBoundError,
    UnknownLabelError,
)
from cyclord.utils.labels import label_key, sort_labels
from cyclord.utils.log import get_logger

logger = get_logger(__name__)

IntervalKind = Literal["open", "closed", "closed_open", "open_closed"]


def _check_distinct(labels: tuple) -> None:
    seen: set[Hashable] = set()
    for x in labels:
        if x in seen:
            raise InputError(f"Label {x!r} occurs more than once.")
        seen.add(x)


@dataclass(frozen=True)
class LinOrder:
    """A finite linear order, given by its labels in ascending order.

    Examples
    --------
    >>> L = LinOrder((2, 0, 1))
    >>> L.less(2, 1)
    True
    """

    labels: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        _check_distinct(self.labels)

    @cached_property
    def position(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.labels)}

    @cached_property
    def label_set(self) -> frozenset:
        return frozenset(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator:
        return iter(self.labels)

    def __contains__(self, x: object) -> bool:
        return x in self.position

    def index(self, x: Hashable) -> int:
        """Return the position of `x`, raising `UnknownLabelError` if it is absent."""
        try:
            return self.position[x]
        except KeyError:
            raise UnknownLabelError(f"Label {x!r} is not in the linear order.") from None

    def less(self, a: Hashable, b: Hashable) -> bool:
        """Return True iff a < b."""
        return self.index(a) < self.index(b)

    def restrict(self, subset: Iterable[Hashable]) -> Self:
        """Return the induced order on `subset`."""
        keep = set(subset)
        return type(self)(tuple(x for x in self.labels if x in keep))


@dataclass(frozen=True)
class CircOrder:
    """A finite circular order in canonical form.

    Parameters
    ----------
    labels : tuple
        Any rotation of the cyclic sequence. It is stored rotated so that the least
        label comes first, which makes equality and hashing canonical.

    Examples
    --------
    >>> C = CircOrder((2, 3, 0, 1))
    >>> C.labels
    (0, 1, 2, 3)
    >>> C.triple(3, 0, 2), C.triple(0, 3, 2)
    (True, False)
    """

    labels: tuple

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        _check_distinct(labels)
        if labels:
            i = min(range(len(labels)), key=lambda k: label_key(labels[k]))
            labels = labels[i:] + labels[:i]
        object.__setattr__(self, "labels", labels)

    @classmethod
    def standard(cls, n: int) -> Self:
        """Return the standard circular order modulo `n` on ``0, ..., n-1``."""
        return cls(tuple(range(n)))

    @cached_property
    def position(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.labels)}

    @cached_property
    def label_set(self) -> frozenset:
        return frozenset(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator:
        return iter(self.labels)

    def __contains__(self, x: object) -> bool:
        return x in self.position

    def index(self, x: Hashable) -> int:
        """Return the canonical position of `x`."""
        try:
            return self.position[x]
        except KeyError:
            raise UnknownLabelError(
                f"Label {x!r} is not in the circular order."
            ) from None

    def triple(self, a: Hashable, b: Hashable, c: Hashable) -> bool:
        """Return True iff [a, b, c] holds."""
        pa, pb, pc = self.index(a), self.index(b), self.index(c)
        if pa == pb or pb == pc or pa == pc:
            return False
        n = len(self.labels)
        return (pb - pa) % n < (pc - pa) % n

    def triples(self) -> Iterator[tuple]:
        """Iterate over all triples that hold, three rotations per 3-subset."""
        for a, b, c in itertools.combinations(self.labels, 3):
            yield a, b, c
            yield b, c, a
            yield c, a, b

    def successor(self, x: Hashable) -> Hashable:
        """Return the label that follows `x` in the cyclic sequence."""
        return self.labels[(self.index(x) + 1) % len(self.labels)]

    def restrict(self, subset: Iterable[Hashable]) -> Self:
        """Return the induced circular order on `subset`."""
        keep = set(subset)
        return type(self)(tuple(x for x in self.labels if x in keep))

    def relation(self) -> "TernaryRelation":
        """Return the derived ternary relation."""
        return TernaryRelation(self.label_set, frozenset(self.triples()))


@dataclass(frozen=True)
class TernaryRelation:
    """Raw ternary relation on a finite ground set; no axioms are assumed."""

    points: frozenset
    triples: frozenset

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", frozenset(self.points))
        object.__setattr__(self, "triples", frozenset(tuple(t) for t in self.triples))
        for t in self.triples:
            if len(t) != 3:
                raise InputError(f"Expected a triple, got {t!r}.")
            for x in t:
                if x not in self.points:
                    raise UnknownLabelError(
                        f"Triple {t!r} references unknown label {x!r}."
                    )


@dataclass(frozen=True)
class Cut:
    """A linear order on the labels of a circular order that is compatible with it.

    Raises
    ------
    LabelMismatchError
        If the two orders live on different label sets.
    InvariantViolation
        If some a < b < c in `order` does not satisfy [a, b, c] in `base`.
    """

    base: CircOrder
    order: LinOrder

    def __post_init__(self) -> None:
        if not verify_cut(self.base, self.order):
            raise InvariantViolation(
                f"{self.order.labels} is not a cut of {self.base.labels}."
            )

    @property
    def least(self) -> Hashable | None:
        return self.order.labels[0] if self.order.labels else None

    @property
    def greatest(self) -> Hashable | None:
        return self.order.labels[-1] if self.order.labels else None


@dataclass(frozen=True)
class AxiomViolation:
    """First failing circular-order axiom and a witness for it."""

    axiom: Literal["Cyclicity", "Asymmetry", "Transitivity", "Totality"]
    witness: tuple


def _size_guard(n: int, max_size: int | None) -> None:
    bound = core.config.MAX_SIZE if max_size is None else max_size
    if n > bound:
        raise SizeBoundError(
            f"{n} labels exceed the exhaustive verification bound of {bound}."
        )


def verify_circular_axioms(
    rel: TernaryRelation, max_size: int | None = None
) -> Result[CircOrder, AxiomViolation]:
    """Check Cyclicity, Asymmetry, Transitivity and Totality of a ternary relation.

    Parameters
    ----------
    rel : TernaryRelation
        The relation to verify.
    max_size : int | None
        Size bound, defaults to `cyclord.config.MAX_SIZE`.

    Returns
    -------
    Result[CircOrder, AxiomViolation]
        The canonical circular order on success, otherwise the first failing axiom in
        the order listed above together with the smallest witness.

    Raises
    ------
    SizeBoundError
        If the ground set is larger than the size bound.

    Examples
    --------
    >>> rel = TernaryRelation({0, 1, 2}, {(0, 1, 2), (1, 2, 0), (2, 0, 1)})
    >>> verify_circular_axioms(rel).unwrap().labels
    (0, 1, 2)
    """
    _size_guard(len(rel.points), max_size)
    T = rel.triples
    ordered = sorted(T, key=label_key)

    def fail(axiom: Any, witness: tuple) -> Result[CircOrder, AxiomViolation]:
        logger.info("%s fails, witness %s", axiom, witness)
        return Failure(AxiomViolation(axiom, witness))

    for a, b, c in ordered:
        if (b, c, a) not in T:
            return fail("Cyclicity", (a, b, c))
    for a, b, c in ordered:
        if (c, b, a) in T:
            return fail("Asymmetry", (a, b, c))
    by_prefix: dict[tuple, list] = {}
    for a, b, c in ordered:
        by_prefix.setdefault((a, b), []).append(c)
    for a, b, c in ordered:
        for d in by_prefix.get((a, c), []):
            if (a, b, d) not in T:
                return fail("Transitivity", (a, b, c, d))
    points = sort_labels(rel.points)
    for a, b, c in itertools.combinations(points, 3):
        if (a, b, c) not in T and (c, b, a) not in T:
            return fail("Totality", (a, b, c))

    if len(points) < 3:
        return Success(CircOrder(tuple(points)))
    z, rest = points[0], points[1:]
    seq = sorted(rest, key=functools.cmp_to_key(lambda x, y: -1 if (z, x, y) in T else 1))
    out = CircOrder((z, *seq))
    if frozenset(out.triples()) != T:
        raise InvariantViolation("Axioms hold but the relation is not realized.")
    return Success(out)


def circularize(L: LinOrder) -> CircOrder:
    """Return the standard circular order of a linear order.

    [x, y, z] holds iff x < y < z, y < z < x or z < x < y.
    """
    return CircOrder(L.labels)


def cut_order(C: CircOrder, z: Hashable) -> LinOrder:
    """Return the standard cut at `z`, where a <_z b iff [z, a, b].

    Examples
    --------
    >>> cut_order(CircOrder.standard(4), 2).labels
    (2, 3, 0, 1)
    """
    i = C.index(z)
    return LinOrder(C.labels[i:] + C.labels[:i])


def verify_cut(C: CircOrder, L: LinOrder) -> bool:
    """Return True iff a < b < c in `L` always gives [a, b, c] in `C`.

    Raises
    ------
    LabelMismatchError
        If `C` and `L` have different label sets.
    """
    if C.label_set != L.label_set:
        raise LabelMismatchError("The circular and linear orders have different labels.")
    return all(C.triple(a, b, c) for a, b, c in itertools.combinations(L.labels, 3))


def interval(
    C: CircOrder, a: Hashable, b: Hashable, kind: IntervalKind = "open"
) -> frozenset:
    """Return the circular interval from `a` to `b`.

    The open interval is ``{x : [a, x, b]}``; the other kinds add the named
    endpoints. In particular ``[a, a] = {a}``.

    Examples
    --------
    >>> sorted(interval(CircOrder.standard(5), 1, 4))
    [2, 3]
    >>> sorted(interval(CircOrder.standard(5), 4, 1, "closed"))
    [0, 1, 4]
    """
    C.index(a), C.index(b)
    out = {x for x in C.labels if C.triple(a, x, b)}
    match kind:
        case "open":
            pass
        case "closed":
            out |= {a, b}
        case "closed_open":
            out.add(a)
        case "open_closed":
            out.add(b)
        case _:
            raise InputError(f"Unknown interval kind {kind!r}.")
    return frozenset(out)


def is_convex(C: CircOrder, S: Collection[Hashable]) -> bool:
    """Return True iff for all a, b in `S` one of [a, b] and [b, a] lies in `S`."""
    S = frozenset(S)
    for x in S:
        C.index(x)
    return all(
        interval(C, a, b, "closed") <= S or interval(C, b, a, "closed") <= S
        for a, b in itertools.combinations(S, 2)
    )


def convex_family(C: CircOrder) -> set[frozenset]:
    """Return every convex subset: the empty set, the whole set and all arcs."""
    n = len(C)
    family = {frozenset(), C.label_set}
    for start in range(n):
        for length in range(1, n + 1):
            family.add(frozenset(C.labels[(start + k) % n] for k in range(length)))
    return family


def cut_from_subset(L: LinOrder, A: Collection[Hashable], base: CircOrder) -> Cut:
    """Move the strict upper bounds of `A` in front of the rest of `L`.

    With ``X1 = {x : a < x for every a in A}`` the new order keeps `L` inside X1 and
    inside its complement and puts every element of X1 first.

    Examples
    --------
    >>> C = CircOrder.standard(4)
    >>> cut_from_subset(LinOrder((0, 1, 2, 3)), {0, 1}, C).order.labels
    (2, 3, 0, 1)
    """
    for a in A:
        L.index(a)
    upper = [x for x in L.labels if all(L.less(a, x) for a in A)]
    keep = set(upper)
    return Cut(base, LinOrder(tuple(upper) + tuple(x for x in L.labels if x not in keep)))


def is_gap(cut: Cut) -> bool:
    """Return True iff the cut has neither a least nor a greatest element."""
    L = cut.order
    least = [x for x in L if not any(L.less(y, x) for y in L)]
    greatest = [x for x in L if not any(L.less(x, y) for y in L)]
    return bool(L.labels) and not least and not greatest


def cut_triple_property(cut: Cut, a: Hashable, b: Hashable, c: Hashable) -> bool:
    """Return True iff [a, b, c] implies a < b < c, b < c < a or c < a < b in the cut."""
    if not cut.base.triple(a, b, c):
        return True
    lt = cut.order.less
    return (
        (lt(a, b) and lt(b, c)) or (lt(b, c) and lt(c, a)) or (lt(c, a) and lt(a, b))
    )


def cut_interval_agrees(cut: Cut, a: Hashable, b: Hashable) -> bool:
    """Check that for a < b the linear and circular intervals between them coincide."""
    L = cut.order
    if not L.less(a, b):
        return True
    i, j = L.index(a), L.index(b)
    linear = {
        "open": set(L.labels[i + 1 : j]),
        "closed": set(L.labels[i : j + 1]),
        "closed_open": set(L.labels[i:j]),
        "open_closed": set(L.labels[i + 1 : j + 1]),
    }
    return all(interval(cut.base, a, b, k) == v for k, v in linear.items())  # type: ignore[arg-type]


def enumerate_circ_orders(labels: Iterable[Hashable]) -> Iterator[CircOrder]:
    """Yield every circular order on `labels`, (n-1)! of them."""
    points = sort_labels(labels)
    if not points:
        yield CircOrder(())
        return
    head, rest = points[0], points[1:]
    for perm in itertools.permutations(rest):
        yield CircOrder((head, *perm))


def enumerate_oriented_relations(labels: Iterable[Hashable]) -> Iterator[TernaryRelation]:
    """Yield every cyclic, asymmetric and total relation on `labels`.

    Each 3-subset gets one of its two orientations together with its rotations, so
    there are ``2 ** C(n, 3)`` relations. Only those that are transitive are circular
    orders.
    """
    points = sort_labels(labels)
    subsets = list(itertools.combinations(points, 3))
    for choice in itertools.product((False, True), repeat=len(subsets)):
        triples = set()
        for (a, b, c), flip in zip(subsets, choice, strict=True):
            if flip:
                b, c = c, b
            triples |= {(a, b, c), (b, c, a), (c, a, b)}
        yield TernaryRelation(frozenset(points), frozenset(triples))
