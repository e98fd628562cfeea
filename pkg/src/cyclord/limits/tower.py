"""Finite towers of covers approximating the inverse limit of the quotients X_F.

A tower holds a family of cycles closed under joins, the quotient of the host by
each of them and the bonding maps between comparable levels. Points of the limit
are represented by threads: one block per level, coherent under all bondings.
"""

import itertools
from collections.abc import Hashable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

import cyclord as core
from cyclord.limits.cover import (
    Block,
    ChainCover,
    CycleCover,
    bonding_map,
    build_chain_cover,
    build_cycle_cover,
    chain_bonding_map,
    induced_quotient_action,
    is_subcycle,
    join_cycles,
    normalize_cycle,
)
from cyclord.orders.cop import compose, is_isomorphism
from cyclord.orders.core import CircOrder, LinOrder
from cyclord.utils.errors import (
    BudgetExceededError,
    InvariantViolation,
    LabelMismatchError,
    NotCopError,
    UnknownLabelError,
)
from cyclord.utils.labels import label_key
from cyclord.utils.log import get_logger

logger = get_logger(__name__)

Thread = Mapping[tuple, Block]


@dataclass(frozen=True)
class Tower:
    """Covers of one host indexed by a join-closed family of cycles (or chains).

    Attributes
    ----------
    host : CircOrder | LinOrder
        The ordered set being approximated.
    cycles : tuple
        Normalized cycles, sorted by length and then by label.
    covers : Mapping
        The cover of each cycle.
    bondings : Mapping
        ``bondings[F2, F1]`` is the block table X_F2 -> X_F1 for F1 < F2.
    """

    host: CircOrder | LinOrder
    cycles: tuple
    covers: Mapping[tuple, CycleCover | ChainCover]
    bondings: Mapping[tuple[tuple, tuple], dict]

    @property
    def circular(self) -> bool:
        return isinstance(self.host, CircOrder)

    @cached_property
    def poset(self) -> nx.DiGraph:
        """Sub-cycle relation, with an edge F1 -> F2 for every F1 < F2."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.cycles)
        graph.add_edges_from((F1, F2) for F2, F1 in self.bondings)
        return graph

    @cached_property
    def hasse(self) -> nx.DiGraph:
        return nx.transitive_reduction(self.poset)

    def comparable_pairs(self) -> Iterator[tuple[tuple, tuple]]:
        """Yield (F2, F1) with F1 < F2."""
        yield from self.bondings

    def to_dict(self) -> dict:
        return {
            "kind": "tower",
            "host": list(self.host.labels),
            "circular": self.circular,
            "levels": [
                {"cycle": list(F), "blocks": [list(b) for b in self.covers[F].blocks]}
                for F in self.cycles
            ],
            "bondings": [
                {
                    "from": list(F2),
                    "to": list(F1),
                    "table": [[list(b), list(c)] for b, c in t.items()],
                }
                for (F2, F1), t in self.bondings.items()
            ],
        }


def _close_under_joins(host: CircOrder, cycles: Sequence[tuple], budget: int) -> list[tuple]:
    family = {normalize_cycle(host, F) for F in cycles}
    frontier = set(family)
    while frontier:
        new = set()
        for F1 in frontier:
            for F2 in family:
                F3 = join_cycles(F1, F2, host)
                if F3 not in family and F3 not in new:
                    new.add(F3)
        family |= new
        if len(family) > budget:
            raise BudgetExceededError(
                f"Closing under joins needs more than {budget} cycles."
            )
        frontier = new
    return sorted(family, key=lambda F: (len(F), label_key(F)))


def _check_composition(tower: Tower) -> None:
    for F1, F2, F3 in itertools.permutations(tower.cycles, 3):
        if (F2, F1) in tower.bondings and (F3, F2) in tower.bondings:
            f21, f32 = tower.bondings[F2, F1], tower.bondings[F3, F2]
            f31 = tower.bondings[F3, F1]
            if any(f21[f32[b]] != f31[b] for b in f32):
                raise InvariantViolation(f"f_{F3},{F1} != f_{F2},{F1} ∘ f_{F3},{F2}.")


def build_tower(
    host: CircOrder, cycles: Sequence[Sequence[Hashable]], join_budget: int | None = None
) -> Tower:
    """Close `cycles` under joins and build every cover and bonding map.

    Parameters
    ----------
    host : CircOrder
        The circular order being approximated.
    cycles : Sequence
        Injective cycles of `host`.
    join_budget : int | None
        Largest family allowed after closing, `cyclord.config.JOIN_BUDGET` by default.

    Raises
    ------
    BudgetExceededError
        If the join closure has too many cycles.
    InvariantViolation
        If coherence or the composition law fails.

    Examples
    --------
    >>> tower = build_tower(CircOrder.standard(6), [(0,), (0, 3), (0, 2, 4)])
    >>> [len(tower.covers[F].blocks) for F in tower.cycles]
    [2, 4, 6, 6]
    """
    budget = core.config.JOIN_BUDGET if join_budget is None else join_budget
    family = _close_under_joins(host, [tuple(F) for F in cycles], budget)
    covers = {F: build_cycle_cover(host, F) for F in family}
    bondings = {}
    for F1, F2 in itertools.permutations(family, 2):
        if is_subcycle(F1, F2):
            bondings[F2, F1] = bonding_map(covers[F2], covers[F1]).table
    tower = Tower(host, tuple(family), covers, bondings)
    _check_composition(tower)
    logger.debug("Tower with %d levels and %d bondings", len(family), len(bondings))
    return tower


def build_chain_tower(host: LinOrder, chains: Sequence[Sequence[Hashable]]) -> Tower:
    """Linear counterpart of `build_tower`; unions of chains are always chains."""
    family = {tuple(sorted(set(F), key=host.index)) for F in chains}
    while True:
        joins = {
            tuple(sorted(set(F1) | set(F2), key=host.index))
            for F1, F2 in itertools.combinations(family, 2)
        }
        if joins <= family:
            break
        family |= joins
    ordered = sorted(family, key=lambda F: (len(F), label_key(F)))
    covers = {F: build_chain_cover(host, F) for F in ordered}
    bondings = {}
    for F1, F2 in itertools.permutations(ordered, 2):
        if is_subcycle(F1, F2):
            bondings[F2, F1] = chain_bonding_map(covers[F2], covers[F1])
    tower = Tower(host, tuple(ordered), covers, bondings)
    _check_composition(tower)
    return tower


def host_thread(tower: Tower, x: Hashable) -> dict[tuple, Block]:
    """Return the thread of projections of a host point."""
    return {F: tower.covers[F].project(x) for F in tower.cycles}


def thread_check(t: Thread, tower: Tower) -> bool:
    """Return True iff `t` picks a block at every level, coherently with all bondings.

    Raises
    ------
    LabelMismatchError
        If `t` is not indexed by exactly the cycles of the tower.
    UnknownLabelError
        If some entry is not a block of its level.
    """
    if set(t) != set(tower.cycles):
        raise LabelMismatchError("The thread is not indexed by the tower's cycles.")
    for F, b in t.items():
        if b not in tower.covers[F].members:
            raise UnknownLabelError(f"{b!r} is not a block of level {F}.")
    return all(table[t[F2]] == t[F1] for (F2, F1), table in tower.bondings.items())


def enumerate_threads(tower: Tower) -> list[dict[tuple, Block]]:
    """Return every thread, by depth-first search from the coarsest level."""
    levels = tower.cycles
    out: list[dict[tuple, Block]] = []

    def extend(partial: dict[tuple, Block], i: int) -> None:
        if i == len(levels):
            out.append(dict(partial))
            return
        F = levels[i]
        for b in tower.covers[F].blocks:
            consistent = all(
                tower.bondings[F, G][b] == partial[G]
                for G in levels[:i]
                if (F, G) in tower.bondings
            ) and all(
                tower.bondings[G, F][partial[G]] == b
                for G in levels[:i]
                if (G, F) in tower.bondings
            )
            if consistent:
                partial[F] = b
                extend(partial, i + 1)
                del partial[F]

    extend({}, 0)
    return out


def thread_triple(tower: Tower, t1: Thread, t2: Thread, t3: Thread) -> bool:
    """Return True iff the three threads form a triple at some level."""
    if not tower.circular:
        raise LabelMismatchError("Threads of a chain tower are linearly ordered.")
    for F in tower.cycles:
        q = tower.covers[F].quotient
        if q.triple(t1[F], t2[F], t3[F]):  # type: ignore[union-attr]
            return True
    return False


def verify_tower(tower: Tower) -> list[str]:
    """Re-check a tower independently of its builder and list every problem found."""
    problems = []
    for F in tower.cycles:
        cover = tower.covers[F]
        if len(cover.blocks) > 2 * len(F) + (0 if tower.circular else 1):
            problems.append(f"level {F} has {len(cover.blocks)} blocks")
        if set(cover.projection) != tower.host.label_set:
            problems.append(f"level {F} does not cover the host")
    for (F2, F1), table in tower.bondings.items():
        for x in tower.host.labels:
            if table[tower.covers[F2].project(x)] != tower.covers[F1].project(x):
                problems.append(f"f_{F2},{F1} ∘ pi_{F2} != pi_{F1} at {x!r}")
                break
    try:
        _check_composition(tower)
    except InvariantViolation as err:
        problems.append(str(err))
    for x in tower.host.labels:
        if not thread_check(host_thread(tower, x), tower):
            problems.append(f"projections of {x!r} are not a thread")
    return problems


def induced_action_commutes(tower: Tower, g: Mapping[Hashable, Hashable]) -> bool:
    """Check f_{gF2,gF1} ∘ g_F2 = g_F1 ∘ f_{F2,F1} for every bonding of the tower.

    Raises
    ------
    NotCopError
        If `g` is not a COP automorphism of the host.
    """
    host = tower.host
    if not isinstance(host, CircOrder) or not is_isomorphism(g, host, host):
        raise NotCopError("The map is not a COP automorphism of the host.")
    for (F2, F1), table in tower.bondings.items():
        c2, c1 = tower.covers[F2], tower.covers[F1]
        g2, g1 = induced_quotient_action(g, c2), induced_quotient_action(g, c1)
        image2 = build_cycle_cover(host, tuple(g[t] for t in F2))
        image1 = build_cycle_cover(host, tuple(g[t] for t in F1))
        f_image = bonding_map(image2, image1)
        left = compose(f_image, g2)
        for b in c2.blocks:
            if left(b) != g1(table[b]):
                logger.info("Induced maps do not commute at %s, block %s", (F2, F1), b)
                return False
    return True


def tower_to_dot(tower: Tower) -> str:
    """Render the tower in DOT: one cluster per level, Hasse bonding maps as edges."""
    node = {}
    lines = ["digraph tower {", "  rankdir=LR;", "  node [shape=box];"]
    for i, F in enumerate(tower.cycles):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="F = {_dot_text(F)}";')
        for j, b in enumerate(tower.covers[F].blocks):
            node[F, b] = f"n{i}_{j}"
            lines.append(f'    n{i}_{j} [label="{_dot_text(b)}"];')
        lines.append("  }")
    level = {F: i for i, F in enumerate(tower.cycles)}
    for F1, F2 in sorted(tower.hasse.edges, key=lambda e: (level[e[1]], level[e[0]])):
        for b, c in tower.bondings[F2, F1].items():
            lines.append(f"  {node[F2, b]} -> {node[F1, c]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_text(x: object) -> str:
    return str(x).replace('"', r"\"")
