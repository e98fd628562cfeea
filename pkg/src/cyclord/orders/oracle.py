"""Comparison procedures standing in for orders on infinite or symbolic sets.

An oracle answers pair queries (linear) or triple queries (circular). Queries may be
charged to a `Budget`; once it is spent, `BudgetExhausted` is raised and the caller
reports an unresolved outcome.
"""

import itertools
from collections.abc import Callable, Hashable, Iterable, Iterator
from typing import Self

import cyclord as core
from cyclord.orders.core import CircOrder, LinOrder, TernaryRelation
from cyclord.utils.errors import BudgetExhausted


class Budget:
    """Per-call probe counter.

    Parameters
    ----------
    limit : int | None
        Number of probes allowed, defaults to `cyclord.config.PROBE_BUDGET`.

    Examples
    --------
    >>> b = Budget(2)
    >>> b.spend(); b.spend()
    >>> b.spend()
    Traceback (most recent call last):
    ...
    cyclord.utils.errors.BudgetExhausted: Probe budget of 2 exhausted.
    """

    def __init__(self, limit: int | None = None) -> None:
        self.limit = core.config.PROBE_BUDGET if limit is None else limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExhausted(self.limit)

    @property
    def remaining(self) -> int:
        return max(self.limit - self.used, 0)


class LinearOracle:
    """A strict linear order given by a less-than procedure."""

    def __init__(self, less_than: Callable[[Hashable, Hashable], bool], name: str = "") -> None:
        self._less = less_than
        self.name = name

    def __repr__(self) -> str:
        return f"LinearOracle({self.name or self._less!r})"

    @classmethod
    def from_order(cls, L: LinOrder) -> Self:
        return cls(L.less, name=f"chain of {len(L)}")

    def less(self, a: Hashable, b: Hashable, budget: Budget | None = None) -> bool:
        """Return True iff a < b, charging one probe to `budget`."""
        if budget is not None:
            budget.spend()
        return self._less(a, b)

    def sort(self, labels: Iterable[Hashable]) -> LinOrder:
        """Materialize the order on a finite subset."""
        out: list[Hashable] = []
        for x in labels:
            i = 0
            while i < len(out) and self._less(out[i], x):
                i += 1
            out.insert(i, x)
        return LinOrder(tuple(out))


class CircularOracle:
    """A circular order given by a triple procedure."""

    def __init__(
        self, triple_fn: Callable[[Hashable, Hashable, Hashable], bool], name: str = ""
    ) -> None:
        self._triple = triple_fn
        self.name = name

    def __repr__(self) -> str:
        return f"CircularOracle({self.name or self._triple!r})"

    @classmethod
    def from_order(cls, C: CircOrder) -> Self:
        return cls(C.triple, name=f"cycle of {len(C)}")

    def triple(
        self, a: Hashable, b: Hashable, c: Hashable, budget: Budget | None = None
    ) -> bool:
        """Return True iff [a, b, c], charging one probe to `budget`."""
        if budget is not None:
            budget.spend()
        return self._triple(a, b, c)

    def relation(self, labels: Iterable[Hashable]) -> TernaryRelation:
        """Evaluate the oracle on every ordered triple of a finite subset."""
        points = frozenset(labels)
        triples = frozenset(
            t for t in itertools.permutations(points, 3) if self._triple(*t)
        )
        return TernaryRelation(points, triples)


def integer_enumeration() -> Iterator[int]:
    """Enumerate the integers as 0, 1, -1, 2, -2, ...

    Examples
    --------
    >>> import itertools
    >>> list(itertools.islice(integer_enumeration(), 5))
    [0, 1, -1, 2, -2]
    """
    yield 0
    for n in itertools.count(1):
        yield n
        yield -n


def integer_order() -> LinearOracle:
    """Return the usual order on the integers."""
    return LinearOracle(lambda a, b: a < b, name="Z")  # type: ignore[operator]
