"""Groups given by Cayley tables, finitely generated abelian groups and a small corpus.

The Cayley table is a numpy array of element indices, so the group axioms can be
checked with a handful of fancy-indexing comparisons.
"""

import itertools
import random
from collections.abc import Callable, Hashable, Iterable, Sequence
from functools import cached_property
from typing import Protocol, Self, runtime_checkable

import numpy as np

from cyclord.utils.errors import InputError, InvariantViolation, UnknownLabelError
from cyclord.utils.labels import label_key
from cyclord.utils.log import get_logger

logger = get_logger(__name__)


@runtime_checkable
class Group(Protocol):
    """What the orderability and action code needs from a group."""

    @property
    def identity(self) -> Hashable: ...

    def mul(self, a: Hashable, b: Hashable) -> Hashable: ...

    def inv(self, a: Hashable) -> Hashable: ...

    def generators(self) -> list[Hashable]: ...

    def sample(self, rng: random.Random) -> Hashable: ...


class GroupTable:
    """A finite group given by its elements and Cayley table.

    Parameters
    ----------
    elements : Sequence[Hashable]
        Element labels.
    table : array_like
        ``table[i][j]`` is the label of ``elements[i] * elements[j]``. Integer
        indices into `elements` are accepted when the entries are not labels.
    name : str
        Display name.

    Raises
    ------
    InputError
        If the table has the wrong shape or refers to unknown elements.
    InvariantViolation
        If associativity, the identity law or the inverse law fails.

    Examples
    --------
    >>> Z3 = cyclic(3)
    >>> Z3.mul(2, 2), Z3.inv(1), Z3.is_cyclic()
    (1, 2, True)
    """

    def __init__(
        self, elements: Sequence[Hashable], table: Sequence[Sequence], name: str = "group"
    ) -> None:
        self.elements = tuple(elements)
        self.name = name
        n = len(self.elements)
        if n == 0:
            raise InputError("A group has at least one element.")
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != n:
            raise InputError("Group elements must be distinct.")
        raw = [list(row) for row in table]
        if len(raw) != n or any(len(row) != n for row in raw):
            raise InputError(f"Cayley table of {name} must be {n}x{n}.")
        if all(v in self._index for row in raw for v in row):
            self.table = np.asarray(
                [[self._index[v] for v in row] for row in raw], dtype=np.int64
            )
        elif all(isinstance(v, int) and 0 <= v < n for row in raw for v in row):
            self.table = np.asarray(raw, dtype=np.int64)
        else:
            raise InputError(f"Cayley table of {name} refers to unknown elements.")
        self._verify()

    @classmethod
    def from_func(
        cls, elements: Sequence[Hashable], mul: Callable, name: str = "group"
    ) -> Self:
        table = [[mul(a, b) for b in elements] for a in elements]
        return cls(elements, table, name)

    def _verify(self) -> None:
        T = self.table
        n = len(self.elements)
        idx = np.arange(n)
        left = T[T, :]
        right = T[idx[:, None, None], T[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise InvariantViolation(
                f"{self.name} is not associative at "
                f"{(self.elements[a], self.elements[b], self.elements[c])}."
            )
        units = [
            e for e in range(n) if np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx)
        ]
        if not units:
            raise InvariantViolation(f"{self.name} has no identity element.")
        self._e = units[0]
        inverses = np.argmax(T == self._e, axis=1)
        if not np.all(T[idx, inverses] == self._e) or not np.all(
            T[inverses, idx] == self._e
        ):
            raise InvariantViolation(f"{self.name} has an element without inverse.")
        self._inv = inverses

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order {len(self)})"

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def index(self, x: Hashable) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownLabelError(f"{x!r} is not an element of {self.name}.") from None

    @property
    def identity(self) -> Hashable:
        return self.elements[self._e]

    def mul(self, a: Hashable, b: Hashable) -> Hashable:
        return self.elements[self.table[self.index(a), self.index(b)]]

    def inv(self, a: Hashable) -> Hashable:
        return self.elements[self._inv[self.index(a)]]

    def power(self, a: Hashable, k: int) -> Hashable:
        base = a if k >= 0 else self.inv(a)
        out = self.identity
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def element_order(self, a: Hashable) -> int:
        k, x = 1, a
        while x != self.identity:
            x, k = self.mul(x, a), k + 1
        return k

    @cached_property
    def orders(self) -> dict[Hashable, int]:
        return {a: self.element_order(a) for a in self.elements}

    def is_cyclic(self) -> bool:
        return len(self) in self.orders.values()

    def generator(self) -> Hashable | None:
        """Return the least element (in label order) that generates the group."""
        full = [a for a in self.elements if self.orders[a] == len(self)]
        return min(full, key=label_key) if full else None

    def generators(self) -> list[Hashable]:
        """Return a small generating set, greedily chosen in label order."""
        gens: list[Hashable] = []
        span = {self.identity}
        for a in sorted(self.elements, key=label_key):
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
        return gens

    def closure(self, gens: Iterable[Hashable]) -> set[Hashable]:
        """Return the subgroup generated by `gens`."""
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return out

    def sample(self, rng: random.Random) -> Hashable:
        return rng.choice(self.elements)

    def to_dict(self) -> dict:
        return {
            "kind": "group",
            "name": self.name,
            "elements": list(self.elements),
            "table": [[self.elements[v] for v in row] for row in self.table.tolist()],
        }


class FGAbelian:
    """Finitely generated abelian group Z^r x Z_m1 x ... written additively.

    Parameters
    ----------
    moduli : Sequence[int | None]
        One entry per coordinate; None stands for a copy of Z.

    Examples
    --------
    >>> G = FGAbelian((None, 4))
    >>> G.mul((2, 3), (-5, 2)), G.inv((1, 1))
    ((-3, 1), (-1, 3))
    """

    def __init__(self, moduli: Sequence[int | None], name: str | None = None) -> None:
        self.moduli = tuple(moduli)
        if any(m is not None and m < 1 for m in self.moduli):
            raise InputError("Moduli must be positive.")
        self.name = name or " x ".join("Z" if m is None else f"Z{m}" for m in self.moduli)

    def __repr__(self) -> str:
        return f"FGAbelian({self.name})"

    def _reduce(self, x: Sequence[int]) -> tuple:
        return tuple(v if m is None else v % m for v, m in zip(x, self.moduli, strict=True))

    def __contains__(self, x: object) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.moduli)
            and all(isinstance(v, int) for v in x)
            and self._reduce(x) == x
        )

    @property
    def is_finite(self) -> bool:
        return None not in self.moduli

    @property
    def identity(self) -> tuple:
        return (0,) * len(self.moduli)

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self._reduce([x + y for x, y in zip(a, b, strict=True)])

    def inv(self, a: tuple) -> tuple:
        return self._reduce([-x for x in a])

    def power(self, a: tuple, k: int) -> tuple:
        return self._reduce([k * x for x in a])

    def generators(self) -> list[tuple]:
        out = []
        for i, m in enumerate(self.moduli):
            if m == 1:
                continue
            out.append(tuple(1 if j == i else 0 for j in range(len(self.moduli))))
        return out

    def sample(self, rng: random.Random, radius: int = 20) -> tuple:
        return tuple(
            rng.randint(-radius, radius) if m is None else rng.randrange(m)
            for m in self.moduli
        )

    def to_table(self) -> GroupTable:
        """Return the Cayley table of a finite instance."""
        if not self.is_finite:
            raise InputError(f"{self.name} is infinite.")
        elements = list(itertools.product(*(range(m) for m in self.moduli)))  # type: ignore[arg-type]
        return GroupTable.from_func(elements, self.mul, self.name)


def cyclic(n: int) -> GroupTable:
    """Return Z_n on the labels ``0, ..., n-1``."""
    return GroupTable(range(n), [[(i + j) % n for j in range(n)] for i in range(n)], f"Z{n}")


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    elements = [(g, h) for g in G.elements for h in H.elements]
    return GroupTable.from_func(
        elements,
        lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])),
        f"{G.name}x{H.name}",
    )


def klein() -> GroupTable:
    G = direct_product(cyclic(2), cyclic(2))
    G.name = "Z2xZ2"
    return G


def from_permutations(gens: Sequence[Sequence[int]], name: str = "perm") -> GroupTable:
    """Return the permutation group generated by `gens` (tuples of images)."""
    gens = [tuple(g) for g in gens]
    n = len(gens[0])
    e = tuple(range(n))

    def mul(p: tuple, q: tuple) -> tuple:
        return tuple(p[q[i]] for i in range(n))

    seen = {e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return GroupTable.from_func(sorted(seen), mul, name)


def symmetric(n: int) -> GroupTable:
    if n < 2:
        return from_permutations([tuple(range(max(n, 1)))], f"S{n}")
    swap = (1, 0, *range(2, n))
    cycle = (*range(1, n), 0)
    return from_permutations([swap, cycle], f"S{n}")


def dihedral(n: int) -> GroupTable:
    """Return the symmetry group of the n-gon, of order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations([rot, ref], f"D{n}")


def alternating(n: int) -> GroupTable:
    gens = []
    for k in range(n - 2):
        p = list(range(n))
        p[k], p[k + 1], p[k + 2] = p[k + 1], p[k + 2], p[k]
        gens.append(tuple(p))
    return from_permutations(gens or [tuple(range(n))], f"A{n}")


_QUATERNION_UNITS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}  # fmt: skip


def quaternion() -> GroupTable:
    """Return Q8 on the labels ``"1", "-1", "i", "-i", ...``."""

    def split(x: str) -> tuple[int, str]:
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def mul(a: str, b: str) -> str:
        (sa, ua), (sb, ub) = split(a), split(b)
        s, u = _QUATERNION_UNITS[(ua, ub)]
        return u if s * sa * sb == 1 else f"-{u}"

    elements = [f"{s}{u}" for u in "1ijk" for s in ("", "-")]
    return GroupTable.from_func(elements, mul, "Q8")


def corpus() -> dict[str, GroupTable]:
    """Return the bundled groups of order at most 12."""
    out = {f"Z{n}": cyclic(n) for n in range(1, 9)}
    out["Z12"] = cyclic(12)
    out["Z2xZ2"] = klein()
    out["S3"] = symmetric(3)
    out["D4"] = dihedral(4)
    out["Q8"] = quaternion()
    out["Z2xZ4"] = direct_product(cyclic(2), cyclic(4))
    out["Z2xZ3"] = direct_product(cyclic(2), cyclic(3))
    out["A4"] = alternating(4)
    for name, G in out.items():
        G.name = name
    return out
