"""Cycles, c-order preserving (COP) maps and automorphism groups of finite orders.

A map f between circular orders is COP if it moves every cycle to a cycle, which
happens iff

1. [a, b, c] with f(a), f(b), f(c) distinct gives [f(a), f(b), f(c)], and
2. f(a) = f(c) makes f constant on [a, c] or on [c, a].
"""

import itertools
import math
from collections.abc import Callable, Hashable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Self

from returns.result import Failure, Result, Success

import cyclord as core
from cyclord.orders.core import CircOrder, LinOrder, interval, is_convex
from cyclord.utils.errors import (
    BudgetExceededError,
    DomainMismatchError,
    InvariantViolation,
    PartialMapError,
    SizeBoundError,
    UnknownLabelError,
)
from cyclord.utils.log import get_logger

logger = get_logger(__name__)

Perm = tuple


def _cyclic_blocks_ok(v: Sequence[Hashable]) -> bool:
    m = len(v)
    positions: dict[Hashable, set[int]] = {}
    for i, x in enumerate(v):
        positions.setdefault(x, set()).add(i)
    for pos in positions.values():
        starts = sum(1 for i in pos if (i - 1) % m not in pos)
        if starts > 1:
            return False
    return True


def is_cycle(host: CircOrder, v: Sequence[Hashable]) -> bool:
    """Return True iff `v` is a cycle in `host`.

    Examples
    --------
    >>> C3, C4 = CircOrder.standard(3), CircOrder.standard(4)
    >>> is_cycle(C3, (0, 0, 1, 1, 2)), is_cycle(C4, (0, 1, 0, 1))
    (True, False)
    """
    for x in v:
        host.index(x)
    for i, j, k in itertools.combinations(range(len(v)), 3):
        a, b, c = v[i], v[j], v[k]
        if len({a, b, c}) == 3 and not host.triple(a, b, c):
            return False
    return _cyclic_blocks_ok(v)


def _total(f: Mapping, X1: CircOrder | LinOrder, X2: CircOrder | LinOrder) -> None:
    for x in X1.labels:
        if x not in f:
            raise PartialMapError(f"The map is undefined at {x!r}.")
        if f[x] not in X2:
            raise UnknownLabelError(f"Image {f[x]!r} of {x!r} is not in the codomain.")


@dataclass(frozen=True)
class CopFailure:
    """Which COP condition fails, with its lexicographically smallest witness."""

    condition: Literal[1, 2]
    witness: tuple


def condition_one_witness(f: Mapping, X1: CircOrder, X2: CircOrder) -> tuple | None:
    """Return the first [a, b, c] with distinct images that is not preserved."""
    for a, b, c in itertools.combinations(X1.labels, 3):
        for t in ((a, b, c), (b, c, a), (c, a, b)):
            fa, fb, fc = (f[x] for x in t)
            if len({fa, fb, fc}) == 3 and not X2.triple(fa, fb, fc):
                return t
    return None


def condition_two_witness(f: Mapping, X1: CircOrder) -> tuple | None:
    """Return the first pair with equal images whose intervals are both non-constant."""
    for a, c in itertools.combinations(X1.labels, 2):
        if f[a] != f[c]:
            continue
        if all(f[x] == f[a] for x in interval(X1, a, c, "closed")):
            continue
        if all(f[x] == f[a] for x in interval(X1, c, a, "closed")):
            continue
        return a, c
    return None


def cop_check(f: Mapping, X1: CircOrder, X2: CircOrder) -> Result[dict, CopFailure]:
    """Decide whether `f` is COP.

    Returns
    -------
    Result[dict, CopFailure]
        The map as a dict when it is COP, otherwise the failing condition (1 is tried
        first) and its witness.

    Raises
    ------
    PartialMapError
        If `f` is not defined on every label of `X1`.

    Examples
    --------
    >>> C4 = CircOrder((1, 2, 3, 4))
    >>> cop_check({1: 1, 2: 2, 3: 1, 4: 2}, C4, C4).failure()
    CopFailure(condition=2, witness=(1, 3))
    """
    _total(f, X1, X2)
    if (w := condition_one_witness(f, X1, X2)) is not None:
        logger.info("Condition (1) fails at %s", w)
        return Failure(CopFailure(1, w))
    if (w := condition_two_witness(f, X1)) is not None:
        logger.info("Condition (2) fails at %s", w)
        return Failure(CopFailure(2, w))
    return Success({x: f[x] for x in X1.labels})


def lop_witness(f: Mapping, L1: LinOrder, L2: LinOrder) -> tuple | None:
    """Return consecutive a < b with f(b) < f(a), if any."""
    _total(f, L1, L2)
    for a, b in itertools.pairwise(L1.labels):
        if L2.less(f[b], f[a]):
            return a, b
    return None


def lop_check(f: Mapping, L1: LinOrder, L2: LinOrder) -> bool:
    """Return True iff a <= b gives f(a) <= f(b)."""
    return lop_witness(f, L1, L2) is None


@dataclass(frozen=True)
class CopMap:
    """A map between finite circular orders together with its COP verdict.

    Use `CopMap.of` to build one; the verdict is always computed, never supplied.
    """

    domain: CircOrder
    codomain: CircOrder
    pairs: tuple
    verdict: Result[dict, CopFailure]

    @classmethod
    def of(cls, f: Mapping, domain: CircOrder, codomain: CircOrder) -> Self:
        verdict = cop_check(f, domain, codomain)
        pairs = tuple((x, f[x]) for x in domain.labels)
        return cls(domain, codomain, pairs, verdict)

    @cached_property
    def table(self) -> dict:
        return dict(self.pairs)

    def __call__(self, x: Hashable) -> Hashable:
        try:
            return self.table[x]
        except KeyError:
            raise UnknownLabelError(f"{x!r} is not in the domain.") from None

    @property
    def is_cop(self) -> bool:
        return isinstance(self.verdict, Success)

    def is_onto(self) -> bool:
        return set(self.table.values()) == self.codomain.label_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CopMap):
            return NotImplemented
        return (self.domain, self.codomain, self.pairs) == (
            other.domain,
            other.codomain,
            other.pairs,
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.pairs))


def identity_map(C: CircOrder) -> CopMap:
    return CopMap.of({x: x for x in C.labels}, C, C)


def compose(f: CopMap, g: CopMap) -> CopMap:
    """Return f∘g, re-verifying the verdict.

    Raises
    ------
    DomainMismatchError
        If the codomain of `g` is not the domain of `f`.
    InvariantViolation
        If both factors are COP but the composite is not.
    """
    if g.codomain != f.domain:
        raise DomainMismatchError("Codomain of the inner map is not the outer domain.")
    out = CopMap.of({x: f(g(x)) for x in g.domain.labels}, g.domain, f.codomain)
    if f.is_cop and g.is_cop and not out.is_cop:
        raise InvariantViolation(f"COP maps composed to a non-COP map: {out.verdict}")
    return out


def is_isomorphism(f: Mapping, X1: CircOrder, X2: CircOrder) -> bool:
    """Return True iff `f` is a bijection preserving all triples."""
    _total(f, X1, X2)
    if len(X1) != len(X2) or len(set(f[x] for x in X1.labels)) != len(X1):
        return False
    return condition_one_witness(f, X1, X2) is None


def find_isomorphism(X1: CircOrder, X2: CircOrder) -> dict | None:
    """Return an isomorphism X1 -> X2 if there is one (try every rotation)."""
    if len(X1) != len(X2):
        return None
    n = len(X1)
    for k in range(max(n, 1)):
        f = {X1.labels[i]: X2.labels[(i + k) % n] for i in range(n)}
        if is_isomorphism(f, X1, X2):
            return f
    return None


@dataclass(frozen=True)
class PermGroup:
    """A group of permutations of a finite label set.

    Elements are tuples of images, listed in the order of `ground`.
    """

    ground: tuple
    elements: tuple

    def __post_init__(self) -> None:
        members = set(self.elements)
        if self.identity not in members:
            raise InvariantViolation("The identity is missing.")
        for p in self.elements:
            if self.inverse(p) not in members:
                raise InvariantViolation(f"{p} has no inverse in the group.")
            for r in self.elements:
                if self.mul(p, r) not in members:
                    raise InvariantViolation(f"{p}∘{r} is not in the group.")

    @cached_property
    def _pos(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.ground)}

    @property
    def identity(self) -> Perm:
        return tuple(self.ground)

    def __len__(self) -> int:
        return len(self.elements)

    def as_map(self, p: Perm) -> dict:
        return dict(zip(self.ground, p, strict=True))

    def mul(self, p: Perm, r: Perm) -> Perm:
        """Return p∘r."""
        return tuple(p[self._pos[r[i]]] for i in range(len(self.ground)))

    def inverse(self, p: Perm) -> Perm:
        out = [None] * len(self.ground)
        for i, x in enumerate(p):
            out[self._pos[x]] = self.ground[i]
        return tuple(out)

    def element_order(self, p: Perm) -> int:
        k, q = 1, p
        while q != self.identity:
            q, k = self.mul(p, q), k + 1
        return k

    def is_cyclic(self) -> bool:
        return any(self.element_order(p) == len(self) for p in self.elements)

    def orbit(self, p: Perm) -> list[Perm]:
        """Return the powers of `p` up to its order."""
        out, q = [self.identity], p
        while q != self.identity:
            out.append(q)
            q = self.mul(p, q)
        return out


def _perm_filter(
    ground: tuple, keep: Callable[[dict], bool], perm_bound: int | None
) -> PermGroup:
    bound = core.config.PERM_BOUND if perm_bound is None else perm_bound
    if len(ground) > bound:
        raise SizeBoundError(
            f"{len(ground)} labels exceed the permutation bound of {bound}."
        )
    elements = tuple(
        p
        for p in itertools.permutations(ground)
        if keep(dict(zip(ground, p, strict=True)))
    )
    return PermGroup(ground, elements)


def automorphism_group(C: CircOrder, perm_bound: int | None = None) -> PermGroup:
    """Return all COP bijections of `C`, found by filtering every permutation.

    Raises
    ------
    SizeBoundError
        If `C` has more labels than the permutation bound.
    """
    return _perm_filter(
        C.labels, lambda f: isinstance(cop_check(f, C, C), Success), perm_bound
    )


def linear_automorphism_group(L: LinOrder, perm_bound: int | None = None) -> PermGroup:
    """Return the order automorphisms of a finite chain (only the identity)."""
    return _perm_filter(L.labels, lambda f: lop_check(f, L, L), perm_bound)


def rotations(C: CircOrder) -> PermGroup:
    """Return the rotation group of `C`, every rotation certified COP.

    Works at any size, so it stands in for `automorphism_group` above the
    permutation bound.
    """
    n = len(C)
    elements = []
    for k in range(max(n, 1)):
        p = tuple(C.labels[(i + k) % n] for i in range(n))
        if not isinstance(cop_check(dict(zip(C.labels, p, strict=True)), C, C), Success):
            raise InvariantViolation(f"Rotation by {k} is not COP.")
        elements.append(p)
    return PermGroup(C.labels, tuple(elements))


def enumerate_cop_maps(
    X1: CircOrder, X2: CircOrder, budget: int | None = None
) -> list[CopMap]:
    """Return every COP map X1 -> X2 in a deterministic order.

    Raises
    ------
    BudgetExceededError
        If ``|X2| ** |X1|`` exceeds the enumeration budget.
    """
    limit = core.config.ENUMERATION_BUDGET if budget is None else budget
    if len(X1) * math.log(max(len(X2), 1)) > math.log(limit):
        raise BudgetExceededError(
            f"{len(X2)}^{len(X1)} candidate maps exceed the budget of {limit}."
        )
    logger.debug("Enumerating %d candidate maps", len(X2) ** len(X1))
    out = []
    for images in itertools.product(X2.labels, repeat=len(X1)):
        f = dict(zip(X1.labels, images, strict=True))
        m = CopMap.of(f, X1, X2)
        if m.is_cop:
            out.append(m)
    return out


def fibers_convex(f: Mapping, X1: CircOrder) -> bool:
    """Return True iff every fiber of `f` is convex in `X1`."""
    fibers: dict[Hashable, set] = {}
    for x in X1.labels:
        fibers.setdefault(f[x], set()).add(x)
    return all(is_convex(X1, S) for S in fibers.values())


def cycles(host: CircOrder, length: int) -> Iterator[tuple]:
    """Yield every cycle of the given length in `host`."""
    for v in itertools.product(host.labels, repeat=length):
        if is_cycle(host, v):
            yield v


def maps_cycles_to_cycles(f: Mapping, X1: CircOrder, X2: CircOrder, max_len: int) -> bool:
    """Return True iff `f` sends every cycle of length at most `max_len` to a cycle."""
    _total(f, X1, X2)
    return all(
        is_cycle(X2, tuple(f[x] for x in v))
        for m in range(1, max_len + 1)
        for v in cycles(X1, m)
    )
