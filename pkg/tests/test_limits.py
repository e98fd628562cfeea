"""Test covers, bonding maps and towers of quotients."""

import pytest

from cyclord.limits.cover import (
    WindowedTranslation,
    bonding_map,
    build_chain_cover,
    build_cycle_cover,
    chain_bonding_map,
    induced_chain_map,
    induced_quotient_action,
    join_cycles,
    normalize_cycle,
    quotient_orbit_maps_lop,
)
from cyclord.limits.tower import (
    build_chain_tower,
    build_tower,
    enumerate_threads,
    host_thread,
    induced_action_commutes,
    thread_check,
    thread_triple,
    tower_to_dot,
    verify_tower,
)
from cyclord.orders.core import CircOrder, LinOrder
from cyclord.utils.errors import (
    BudgetExceededError,
    LabelMismatchError,
    NotACycleError,
    NotCopError,
    NotSubcycleError,
    UnknownLabelError,
    WindowExceededError,
)

C6 = CircOrder.standard(6)
ROTATE = {x: (x + 1) % 6 for x in range(6)}
REFLECT = {x: (-x) % 6 for x in range(6)}


def test_normalize_cycle() -> None:
    """Cycles are rotated to their least label; bad cycles are refused."""
    assert normalize_cycle(C6, (4, 0, 2)) == (0, 2, 4)
    for bad in [(), (1, 1), (0, 2, 1), (0, 9)]:
        with pytest.raises(NotACycleError):
            normalize_cycle(C6, bad)


def test_cycle_covers() -> None:
    """One point leaves one interval; the whole host leaves none."""
    single = build_cycle_cover(C6, (2,))
    assert single.blocks == (("pt", 2), ("iv", 2, 2))
    assert single.members["iv", 2, 2] == frozenset({0, 1, 3, 4, 5})
    full = build_cycle_cover(C6, tuple(range(6)))
    assert full.blocks == tuple(("pt", x) for x in range(6))
    assert build_cycle_cover(C6, (3, 0)).project(5) == ("iv", 3, 0)
    with pytest.raises(UnknownLabelError):
        single.project(8)


def test_bonding_map() -> None:
    """Refining (0,) to (0, 3) merges everything but 0 back into one interval."""
    fine, coarse = build_cycle_cover(C6, (0, 3)), build_cycle_cover(C6, (0,))
    f = bonding_map(fine, coarse)
    assert f.table == {
        ("pt", 0): ("pt", 0),
        ("iv", 0, 3): ("iv", 0, 0),
        ("pt", 3): ("iv", 0, 0),
        ("iv", 3, 0): ("iv", 0, 0),
    }
    assert f.is_onto()
    with pytest.raises(NotSubcycleError):
        bonding_map(coarse, fine)
    with pytest.raises(LabelMismatchError):
        bonding_map(build_cycle_cover(CircOrder.standard(4), (0, 2)), coarse)


def test_join_cycles() -> None:
    """The join is the union of supports in host order."""
    assert join_cycles((0, 3), (4, 2), C6) == (0, 2, 3, 4)


def test_induced_quotient_action() -> None:
    """Rotating the host moves the cover of (0, 3) onto the cover of (1, 4)."""
    cover = build_cycle_cover(C6, (0, 3))
    f = induced_quotient_action(ROTATE, cover)
    assert f(("pt", 3)) == ("pt", 4)
    assert f(("iv", 3, 0)) == ("iv", 4, 1)
    with pytest.raises(NotCopError):
        induced_quotient_action(REFLECT, cover)


def test_chain_covers() -> None:
    """Chain covers keep the two rays and bond coherently."""
    host = LinOrder(tuple(range(10)))
    fine, coarse = build_chain_cover(host, (3, 6)), build_chain_cover(host, (3,))
    assert fine.blocks == (("lo", 3), ("pt", 3), ("iv", 3, 6), ("pt", 6), ("hi", 6))
    table = chain_bonding_map(fine, coarse)
    assert table["pt", 6] == ("hi", 3)
    assert table["lo", 3] == ("lo", 3)
    assert build_chain_cover(host, (0,)).blocks == (("pt", 0), ("hi", 0))
    with pytest.raises(NotSubcycleError):
        chain_bonding_map(coarse, fine)


def test_windowed_translation() -> None:
    """Block maps are defined where the image block is present in the window."""
    t = WindowedTranslation(-10, 10, 1)
    with pytest.raises(WindowExceededError):
        t(11)
    assert induced_chain_map(t, build_chain_cover(t.host, (0,))) == {
        ("lo", 0): ("lo", 1),
        ("pt", 0): ("pt", 1),
        ("hi", 0): ("hi", 1),
    }
    assert induced_chain_map(t, build_chain_cover(t.host, (9,))) == {
        ("lo", 9): ("lo", 10),
        ("pt", 9): ("pt", 10),
    }


def test_quotient_orbit_maps() -> None:
    """Orbit maps of translations stay monotone after projecting."""
    shifts = [WindowedTranslation(-10, 10, k) for k in range(-2, 3)]
    cover = build_chain_cover(shifts[0].host, (0, 4))
    assert quotient_orbit_maps_lop(cover, shifts, range(-8, 9))
    with pytest.raises(NotCopError):
        quotient_orbit_maps_lop(cover, shifts[::-1], [0])


def test_tower_levels() -> None:
    """Closing under joins adds (0, 2, 3, 4)."""
    tower = build_tower(C6, [(0,), (0, 3), (4, 0, 2)])
    assert tower.cycles == ((0,), (0, 3), (0, 2, 4), (0, 2, 3, 4))
    assert verify_tower(tower) == []
    assert len(tower.hasse.edges) == 4
    assert ((0, 2, 3, 4), (0,)) in tower.bondings
    assert tower.to_dict()["kind"] == "tower"


def test_join_budget() -> None:
    """The join closure is bounded."""
    with pytest.raises(BudgetExceededError):
        build_tower(C6, [(0,), (1,), (2,), (3,)], join_budget=3)


def test_threads() -> None:
    """On a finite host every thread is the thread of a host point."""
    tower = build_tower(C6, [(0,), (0, 3), (0, 2, 4)])
    threads = enumerate_threads(tower)
    assert len(threads) == 6
    assert sorted(map(str, threads)) == sorted(str(host_thread(tower, x)) for x in range(6))
    a, b, c = (host_thread(tower, x) for x in (0, 2, 4))
    assert thread_triple(tower, a, b, c)
    assert not thread_triple(tower, c, b, a)


def test_thread_check() -> None:
    """Threads must cover every level with coherent blocks."""
    tower = build_tower(C6, [(0,), (0, 3)])
    t = host_thread(tower, 3)
    assert thread_check(t, tower)
    assert not thread_check(t | {(0,): ("pt", 0)}, tower)
    with pytest.raises(UnknownLabelError):
        thread_check(t | {(0,): ("pt", 3)}, tower)
    with pytest.raises(LabelMismatchError):
        thread_check({(0,): ("pt", 0)}, tower)


def test_induced_action_commutes() -> None:
    """Rotations commute with every bonding; reflections are refused."""
    tower = build_tower(C6, [(0,), (0, 3), (0, 2, 4)])
    assert induced_action_commutes(tower, ROTATE)
    assert induced_action_commutes(tower, {x: (x + 3) % 6 for x in range(6)})
    with pytest.raises(NotCopError):
        induced_action_commutes(tower, REFLECT)


def test_chain_tower() -> None:
    """Chain towers verify and have no triples."""
    tower = build_chain_tower(LinOrder(tuple(range(6))), [(1,), (4,)])
    assert tower.cycles == ((1,), (4,), (1, 4))
    assert verify_tower(tower) == []
    t = host_thread(tower, 0)
    with pytest.raises(LabelMismatchError):
        thread_triple(tower, t, t, t)


def test_tower_to_dot() -> None:
    """Each level is a cluster and each Hasse bonding contributes one edge per block."""
    dot = tower_to_dot(build_tower(C6, [(0,), (0, 3)]))
    assert dot.startswith("digraph tower {")
    assert dot.count("subgraph cluster_") == 2
    assert dot.count("->") == 4
    assert "('iv', 0, 3)" in dot


if __name__ == "__main__":
    test_tower_levels()
    test_threads()
