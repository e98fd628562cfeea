"""Covers of ordered sets by the points of a finite cycle (or chain) and the gaps between them.

A finite injective cycle t1, ..., tm of a circular order X splits X into the point
blocks {ti} and the interval blocks (ti, ti+1), dropping empty intervals. The blocks,
in cyclic order, form the finite circular order X_F and x -> block of x is the
projection pi_F. Block identifiers are tuples:

- ``("pt", t)`` for a point of the cycle,
- ``("iv", a, b)`` for the open interval from a to b (``("iv", t, t)`` when m = 1),
- ``("lo", t)`` and ``("hi", t)`` for the two rays of a chain cover.
"""

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from returns.result import Success

from cyclord.orders.cop import CopMap, cop_check, is_cycle, is_isomorphism, lop_check
from cyclord.orders.core import CircOrder, LinOrder, interval
from cyclord.utils.errors import (
    InvariantViolation,
    LabelMismatchError,
    NotACycleError,
    NotCopError,
    NotSubcycleError,
    UnknownLabelError,
    WindowExceededError,
)
from cyclord.utils.labels import label_key
from cyclord.utils.log import get_logger

logger = get_logger(__name__)

Block = tuple


def normalize_cycle(host: CircOrder, F: Sequence[Hashable]) -> tuple:
    """Rotate an injective cycle to start at its least label.

    Raises
    ------
    NotACycleError
        If `F` is empty, repeats a label or is not a cycle of `host`.
    """
    F = tuple(F)
    if not F:
        raise NotACycleError("A cover needs at least one point.")
    if len(set(F)) != len(F):
        raise NotACycleError(f"{F} is not injective.")
    try:
        ok = is_cycle(host, F)
    except UnknownLabelError as err:
        raise NotACycleError(*err.message) from err
    if not ok:
        raise NotACycleError(f"{F} does not follow the circular order.")
    i = min(range(len(F)), key=lambda k: label_key(F[k]))
    return F[i:] + F[:i]


@dataclass(frozen=True)
class CycleCover:
    """Cover of a circular order by a finite injective cycle; see `build_cycle_cover`."""

    host: CircOrder
    cycle: tuple
    blocks: tuple
    members: Mapping[Block, frozenset]

    @cached_property
    def projection(self) -> dict[Hashable, Block]:
        return {x: b for b, xs in self.members.items() for x in xs}

    @cached_property
    def quotient(self) -> CircOrder:
        return CircOrder(self.blocks)

    def project(self, x: Hashable) -> Block:
        try:
            return self.projection[x]
        except KeyError:
            raise UnknownLabelError(f"{x!r} is not in the host.") from None

    def to_dict(self) -> dict:
        return {
            "kind": "cover",
            "cycle": list(self.cycle),
            "blocks": [[list(b), sorted(self.members[b], key=label_key)] for b in self.blocks],
        }


def build_cycle_cover(host: CircOrder, F: Sequence[Hashable]) -> CycleCover:
    """Split `host` into the points of `F` and the open intervals between them.

    Raises
    ------
    NotACycleError
        If `F` is not an injective cycle of `host`.
    InvariantViolation
        If the projection is not COP and onto or the quotient is too large.

    Examples
    --------
    >>> cover = build_cycle_cover(CircOrder.standard(6), (0, 3))
    >>> [sorted(cover.members[b]) for b in cover.blocks]
    [[0], [1, 2], [3], [4, 5]]
    >>> cover.blocks[1]
    ('iv', 0, 3)
    """
    F = normalize_cycle(host, F)
    m = len(F)
    blocks: list[Block] = []
    members: dict[Block, frozenset] = {}
    for i, t in enumerate(F):
        nxt = F[(i + 1) % m]
        blocks.append(("pt", t))
        members[("pt", t)] = frozenset({t})
        gap = interval(host, t, nxt) if m > 1 else host.label_set - {t}
        if gap:
            blocks.append(("iv", t, nxt))
            members[("iv", t, nxt)] = frozenset(gap)
    cover = CycleCover(host, F, tuple(blocks), members)
    if len(blocks) > 2 * m:
        raise InvariantViolation(f"{len(blocks)} blocks for a cycle of length {m}.")
    verdict = cop_check(cover.projection, host, cover.quotient)
    if not isinstance(verdict, Success) or set(cover.projection.values()) != set(blocks):
        raise InvariantViolation(f"Projection of the cover of {F} is not COP onto.")
    logger.debug("Cover of %s has %d blocks", F, len(blocks))
    return cover


def join_cycles(F1: Sequence[Hashable], F2: Sequence[Hashable], host: CircOrder) -> tuple:
    """Return the cycle whose support is the union of both supports.

    Examples
    --------
    >>> join_cycles((0, 2), (1, 4), CircOrder.standard(5))
    (0, 1, 2, 4)
    """
    support = set(normalize_cycle(host, F1)) | set(normalize_cycle(host, F2))
    return normalize_cycle(host, tuple(x for x in host.labels if x in support))


def is_subcycle(F1: Sequence[Hashable], F2: Sequence[Hashable]) -> bool:
    """Return True iff F1 <= F2, meaning the support of F1 lies in that of F2."""
    return set(F1) <= set(F2)


def bonding_map(cover2: CycleCover, cover1: CycleCover) -> CopMap:
    """Send every block of the finer cover to the block of the coarser one containing it.

    Raises
    ------
    LabelMismatchError
        If the covers have different hosts.
    NotSubcycleError
        If the cycle of `cover1` is not a sub-cycle of that of `cover2`.
    InvariantViolation
        If the map is not COP onto or does not satisfy f∘pi_F2 = pi_F1.
    """
    if cover1.host != cover2.host:
        raise LabelMismatchError("The covers live on different hosts.")
    if not is_subcycle(cover1.cycle, cover2.cycle):
        raise NotSubcycleError(f"{cover1.cycle} is not a sub-cycle of {cover2.cycle}.")
    table = {b: cover1.project(next(iter(cover2.members[b]))) for b in cover2.blocks}
    f = CopMap.of(table, cover2.quotient, cover1.quotient)
    if not f.is_cop or not f.is_onto():
        raise InvariantViolation(f"Bonding map is not COP onto: {f.verdict}.")
    for x in cover2.host.labels:
        if f(cover2.project(x)) != cover1.project(x):
            raise InvariantViolation(f"Bonding map is not coherent at {x!r}.")
    return f


def _image_block(g: Mapping, b: Block) -> Block:
    return (b[0], *(g[t] for t in b[1:]))


def induced_quotient_action(g: Mapping[Hashable, Hashable], cover: CycleCover) -> CopMap:
    """Return the isomorphism X_F -> X_gF induced by an automorphism g of the host.

    Raises
    ------
    NotCopError
        If `g` is not a COP automorphism of the host.
    """
    host = cover.host
    if not is_isomorphism(g, host, host):
        raise NotCopError("The map is not a COP automorphism of the host.")
    image = build_cycle_cover(host, tuple(g[t] for t in cover.cycle))
    table = {b: _image_block(g, b) for b in cover.blocks}
    f = CopMap.of(table, cover.quotient, image.quotient)
    if not is_isomorphism(table, cover.quotient, image.quotient):
        raise InvariantViolation("Induced map is not an isomorphism.")
    for x in host.labels:
        if f(cover.project(x)) != image.project(g[x]):
            raise InvariantViolation(f"Induced map disagrees with g at {x!r}.")
    return f


@dataclass(frozen=True)
class ChainCover:
    """Cover of a linear order by a finite chain, rays included; see `build_chain_cover`."""

    host: LinOrder
    chain: tuple
    blocks: tuple
    members: Mapping[Block, frozenset]

    @cached_property
    def projection(self) -> dict[Hashable, Block]:
        return {x: b for b, xs in self.members.items() for x in xs}

    @cached_property
    def quotient(self) -> LinOrder:
        return LinOrder(self.blocks)

    def project(self, x: Hashable) -> Block:
        try:
            return self.projection[x]
        except KeyError:
            raise UnknownLabelError(f"{x!r} is not in the host.") from None


def build_chain_cover(host: LinOrder, F: Sequence[Hashable]) -> ChainCover:
    """Split `host` into the points of `F`, the gaps between them and the two rays.

    Examples
    --------
    >>> cover = build_chain_cover(LinOrder(tuple(range(10))), (6, 3))
    >>> cover.blocks
    (('lo', 3), ('pt', 3), ('iv', 3, 6), ('pt', 6), ('hi', 6))
    """
    if not F:
        raise NotACycleError("A cover needs at least one point.")
    if len(set(F)) != len(F):
        raise NotACycleError(f"{tuple(F)} is not injective.")
    chain = tuple(sorted(F, key=host.index))
    labels = host.labels
    pos = [host.index(t) for t in chain]
    pieces: list[tuple[Block, tuple]] = [(("lo", chain[0]), labels[: pos[0]])]
    for i, t in enumerate(chain):
        pieces.append((("pt", t), (t,)))
        if i + 1 < len(chain):
            pieces.append((("iv", t, chain[i + 1]), labels[pos[i] + 1 : pos[i + 1]]))
    pieces.append((("hi", chain[-1]), labels[pos[-1] + 1 :]))
    blocks = tuple(b for b, xs in pieces if xs)
    members = {b: frozenset(xs) for b, xs in pieces if xs}
    cover = ChainCover(host, chain, blocks, members)
    if not lop_check(cover.projection, host, cover.quotient):
        raise InvariantViolation("Projection of the chain cover is not LOP.")
    return cover


def chain_bonding_map(cover2: ChainCover, cover1: ChainCover) -> dict[Block, Block]:
    """Linear counterpart of `bonding_map`, checked to be LOP and coherent."""
    if cover1.host != cover2.host:
        raise LabelMismatchError("The covers live on different hosts.")
    if not is_subcycle(cover1.chain, cover2.chain):
        raise NotSubcycleError(f"{cover1.chain} is not a sub-chain of {cover2.chain}.")
    table = {b: cover1.project(next(iter(cover2.members[b]))) for b in cover2.blocks}
    if not lop_check(table, cover2.quotient, cover1.quotient):
        raise InvariantViolation("Chain bonding map is not LOP.")
    for x in cover2.host.labels:
        if table[cover2.project(x)] != cover1.project(x):
            raise InvariantViolation(f"Chain bonding map is not coherent at {x!r}.")
    return table


class WindowedTranslation:
    """Translation x -> x + shift on the window ``lo, ..., hi`` of the integers.

    Points whose image leaves the window raise `WindowExceededError`.

    Examples
    --------
    >>> t = WindowedTranslation(-10, 10, 1)
    >>> t(9)
    10
    >>> t(10)
    Traceback (most recent call last):
    ...
    cyclord.utils.errors.WindowExceededError: 10 + 1 leaves the window [-10, 10].
    """

    def __init__(self, lo: int, hi: int, shift: int) -> None:
        self.lo, self.hi, self.shift = lo, hi, shift

    @property
    def host(self) -> LinOrder:
        return LinOrder(tuple(range(self.lo, self.hi + 1)))

    def __call__(self, x: int) -> int:
        if not self.lo <= x <= self.hi:
            raise WindowExceededError(f"{x} is outside the window [{self.lo}, {self.hi}].")
        y = x + self.shift
        if not self.lo <= y <= self.hi:
            raise WindowExceededError(
                f"{x} + {self.shift} leaves the window [{self.lo}, {self.hi}]."
            )
        return y


def induced_chain_map(g: WindowedTranslation, cover: ChainCover) -> dict[Block, Block]:
    """Return the block map X_F -> X_gF of a windowed translation, where it is defined.

    Blocks whose image block is empty in the window are left out. The result is
    checked to be LOP on its domain.
    """
    image = build_chain_cover(cover.host, tuple(g(t) for t in cover.chain))
    table = {}
    for b in cover.blocks:
        target = (b[0], *(g(t) for t in b[1:]))
        if target in image.members:
            table[b] = target
    domain = cover.quotient.restrict(table)
    if not lop_check(table, domain, image.quotient):
        raise InvariantViolation("Induced chain map is not LOP.")
    return table


def quotient_orbit_maps_lop(
    cover: ChainCover, elements: Sequence[WindowedTranslation], points: Sequence[int]
) -> bool:
    """Check that orbit maps stay order preserving after projecting to X_F.

    `elements` are listed in increasing group order. For each point x the blocks
    of g x, over the elements g for which g x lies in the window, must not decrease.

    Raises
    ------
    NotCopError
        If some host orbit map is not order preserving already.
    """
    q = cover.quotient
    for x in points:
        images = []
        for g in elements:
            try:
                images.append(g(x))
            except WindowExceededError:
                continue
        if any(b <= a for a, b in zip(images, images[1:])):
            raise NotCopError(f"The orbit map of {x} is not order preserving.")
        blocks = [cover.project(y) for y in images]
        if any(q.less(b, a) for a, b in zip(blocks, blocks[1:])):
            logger.info("Quotient orbit map of %s decreases", x)
            return False
    return True
