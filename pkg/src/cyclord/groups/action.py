"""Left actions of groups on explicit finite spaces."""

from collections import deque
from collections.abc import Callable, Hashable, Mapping
from typing import Self

from returns.result import Success

from cyclord.groups.group import Group, GroupTable
from cyclord.orders.cop import cop_check, lop_witness
from cyclord.orders.core import CircOrder, LinOrder
from cyclord.utils.errors import HypothesisError, LabelMismatchError, PartialMapError
from cyclord.utils.log import get_logger

logger = get_logger(__name__)


class GroupAction:
    """A left action of `group` on the labels of `space`.

    Parameters
    ----------
    group : Group
        A `GroupTable` or any group following the `Group` protocol.
    space : CircOrder | LinOrder
        The ordered set acted on. Only its label set is used by the action laws.
    act : Callable
        ``act(g, x)`` returns ``g x``.

    Examples
    --------
    >>> from cyclord.groups.group import cyclic
    >>> rot = GroupAction.rotations(cyclic(3), CircOrder.standard(3))
    >>> rot.act(2, 2), rot.is_effective()
    (1, True)
    """

    def __init__(
        self, group: Group, space: CircOrder | LinOrder, act: Callable[[Hashable, Hashable], Hashable]
    ) -> None:
        self.group = group
        self.space = space
        self.act = act

    def __repr__(self) -> str:
        return f"GroupAction({self.group!r} on {len(self.space)} points)"

    @classmethod
    def from_maps(
        cls, group: GroupTable, space: CircOrder | LinOrder, maps: Mapping[Hashable, Mapping]
    ) -> Self:
        """Build an action from one table per group element and check the action laws.

        Raises
        ------
        PartialMapError
            If some element has no table or a table is not total.
        HypothesisError
            If the identity or composition law fails.
        """
        for g in group.elements:
            if g not in maps:
                raise PartialMapError(f"No map given for group element {g!r}.")
            for x in space.labels:
                if x not in maps[g]:
                    raise PartialMapError(f"The map of {g!r} is undefined at {x!r}.")
                if maps[g][x] not in space:
                    raise LabelMismatchError(f"{g!r} sends {x!r} outside the space.")
        tables = {g: dict(maps[g]) for g in group.elements}
        out = cls(group, space, lambda g, x: tables[g][x])
        out.verify_laws()
        return out

    @classmethod
    def rotations(cls, group: GroupTable, C: CircOrder, generator: Hashable | None = None) -> Self:
        """Let a cyclic group act on `C` by rotating through `generator` powers.

        The generator turns the circle one step; a group of order m acts on
        ``len(C)`` points through the quotient when m is a multiple of ``len(C)``.
        """
        g0 = group.generator() if generator is None else generator
        if g0 is None:
            raise HypothesisError(f"{group.name} is not cyclic.")
        n = len(C)
        steps = {group.power(g0, k): k for k in range(len(group))}
        maps = {
            g: {C.labels[i]: C.labels[(i + k) % n] for i in range(n)}
            for g, k in steps.items()
        }
        return cls.from_maps(group, C, maps)

    @classmethod
    def translations(cls, group: GroupTable) -> Self:
        """Left multiplication of a group on its own elements (unordered space)."""
        return cls(group, LinOrder(group.elements), group.mul)

    def map_of(self, g: Hashable) -> dict:
        return {x: self.act(g, x) for x in self.space.labels}

    def maps(self) -> dict[Hashable, dict]:
        """Tables of all elements of a finite group."""
        return {g: self.map_of(g) for g in self._finite_elements()}

    def _finite_elements(self) -> tuple:
        if not isinstance(self.group, GroupTable):
            raise HypothesisError("This needs a finite group given by a table.")
        return self.group.elements

    def verify_laws(self) -> None:
        """Check e x = x and g (h x) = (g h) x on every point.

        Raises
        ------
        HypothesisError
            With the first violating element(s) and point.
        """
        G = self.group
        elements = self._finite_elements()
        for x in self.space.labels:
            if self.act(G.identity, x) != x:
                raise HypothesisError(f"The identity moves {x!r}.")
        for g in elements:
            for h in elements:
                for x in self.space.labels:
                    if self.act(g, self.act(h, x)) != self.act(G.mul(g, h), x):
                        raise HypothesisError(
                            f"g(hx) != (gh)x for g={g!r}, h={h!r}, x={x!r}."
                        )

    def kernel(self) -> list[Hashable]:
        return [
            g
            for g in self._finite_elements()
            if all(self.act(g, x) == x for x in self.space.labels)
        ]

    def is_effective(self) -> bool:
        """Return True iff only the identity acts trivially."""
        return len(self.kernel()) == 1

    def orbit(self, a: Hashable) -> dict[Hashable, Hashable]:
        """Return the orbit of `a`, each point with its coset representative.

        The representative of ``y`` is the first group element found carrying `a`
        to ``y`` in a breadth-first search over the generators.
        """
        G = self.group
        gens = G.generators()
        gens += [G.inv(g) for g in gens]
        reps = {a: G.identity}
        queue = deque([a])
        while queue:
            y = queue.popleft()
            for s in gens:
                z = self.act(s, y)
                if z not in reps:
                    reps[z] = G.mul(s, reps[y])
                    queue.append(z)
        return reps

    def stabilizer(self, a: Hashable) -> list[Hashable]:
        return [g for g in self._finite_elements() if self.act(g, a) == a]

    def non_preserving(self) -> tuple | None:
        """Return (g, witness) for a generator that does not preserve the order."""
        for g in self.group.generators():
            table = self.map_of(g)
            if isinstance(self.space, CircOrder):
                verdict = cop_check(table, self.space, self.space)
                if not isinstance(verdict, Success):
                    return g, verdict.failure()
            elif (w := lop_witness(table, self.space, self.space)) is not None:
                return g, w
        return None

    def preserves_order(self) -> bool:
        """Return True iff every generator acts COP (circular) or LOP (linear)."""
        return self.non_preserving() is None
