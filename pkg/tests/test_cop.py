"""Test cycles, COP maps and automorphism groups."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from returns.result import Success

from cyclord.orders.cop import (
    CopFailure,
    CopMap,
    automorphism_group,
    compose,
    condition_one_witness,
    condition_two_witness,
    cop_check,
    enumerate_cop_maps,
    fibers_convex,
    find_isomorphism,
    identity_map,
    is_cycle,
    is_isomorphism,
    linear_automorphism_group,
    lop_check,
    maps_cycles_to_cycles,
    rotations,
)
from cyclord.orders.core import CircOrder, LinOrder
from cyclord.utils.errors import (
    BudgetExceededError,
    DomainMismatchError,
    PartialMapError,
    SizeBoundError,
    UnknownLabelError,
)

C3, C4, C5 = CircOrder.standard(3), CircOrder.standard(4), CircOrder.standard(5)


def test_is_cycle() -> None:
    """Repetitions must form cyclic blocks and distinct entries must follow the host."""
    assert is_cycle(C3, (0, 0, 1, 1, 2))
    assert is_cycle(C3, (2, 0, 0, 1, 2))
    assert not is_cycle(C4, (0, 1, 0, 1))
    assert not is_cycle(C3, (0, 2, 1))
    assert is_cycle(C3, ())
    with pytest.raises(UnknownLabelError):
        is_cycle(C3, (0, 5))


def test_cop_condition_two_failure() -> None:
    """Folding C4 onto two points alternately breaks fiber convexity."""
    verdict = cop_check({1: 1, 2: 2, 3: 1, 4: 2}, CircOrder((1, 2, 3, 4)), CircOrder((1, 2, 3, 4)))
    assert verdict.failure() == CopFailure(2, (1, 3))


def test_cop_condition_one_failure() -> None:
    """A reflection of C3 reverses the orientation."""
    verdict = cop_check({0: 0, 1: 2, 2: 1}, C3, C3)
    assert verdict.failure().condition == 1
    assert verdict.failure().witness == (0, 1, 2)


def test_cop_success() -> None:
    """Rotations and collapsing an arc are COP."""
    assert cop_check({0: 1, 1: 2, 2: 0}, C3, C3) == Success({0: 1, 1: 2, 2: 0})
    assert isinstance(cop_check({0: 0, 1: 0, 2: 1, 3: 2}, C4, C3), Success)


def test_cop_partial_map() -> None:
    """Maps must be total and land in the codomain."""
    with pytest.raises(PartialMapError):
        cop_check({0: 0}, C3, C3)
    with pytest.raises(UnknownLabelError):
        cop_check({0: 0, 1: 1, 2: 9}, C3, C3)


def test_cop_map_count() -> None:
    """C3 -> C3: 3 constant maps, 18 with two values and the 3 rotations."""
    maps = enumerate_cop_maps(C3, C3)
    assert len(maps) == 24
    assert sum(m.is_onto() for m in maps) == 3


def test_enumeration_budget() -> None:
    """Enumeration refuses to start when the candidate count exceeds the budget."""
    with pytest.raises(BudgetExceededError):
        enumerate_cop_maps(C5, C5, budget=100)


def test_cop_iff_cycles_to_cycles() -> None:
    """On C4 -> C3 the COP maps are the maps sending short cycles to cycles."""
    for images in itertools.product(C3.labels, repeat=4):
        f = dict(zip(C4.labels, images))
        m = CopMap.of(f, C4, C3)
        assert m.is_cop == maps_cycles_to_cycles(f, C4, C3, 4)
        if m.is_cop:
            assert fibers_convex(f, C4)


@given(st.lists(st.integers(min_value=0, max_value=4), min_size=5, max_size=5))
def test_condition_one_gives_two(images: list[int]) -> None:
    """With at least three values, preserving triples forces convex fibers."""
    f = dict(enumerate(images))
    if len(set(images)) >= 3 and condition_one_witness(f, C5, C5) is None:
        assert condition_two_witness(f, C5) is None


def test_compose() -> None:
    """Composites of COP maps are COP; domains must line up."""
    r = CopMap.of({0: 1, 1: 2, 2: 0}, C3, C3)
    r2 = compose(r, r)
    assert r2.table == {0: 2, 1: 0, 2: 1}
    assert r2.is_cop
    assert compose(identity_map(C3), r) == r
    collapse = CopMap.of({0: 0, 1: 0, 2: 1, 3: 2}, C4, C3)
    assert compose(r, collapse).is_cop
    with pytest.raises(DomainMismatchError):
        compose(collapse, r)


def test_call_unknown_label() -> None:
    """Evaluating outside the domain is an input error."""
    with pytest.raises(UnknownLabelError):
        identity_map(C3)(7)


def test_isomorphisms() -> None:
    """Relabeling is found by trying rotations."""
    D = CircOrder(("a", "b", "c"))
    f = find_isomorphism(C3, D)
    assert f == {0: "a", 1: "b", 2: "c"}
    assert is_isomorphism(f, C3, D)
    assert find_isomorphism(C3, C4) is None
    assert not is_isomorphism({0: "a", 1: "c", 2: "b"}, C3, D)


def test_automorphism_group() -> None:
    """The COP automorphisms of C5 are its five rotations."""
    G = automorphism_group(C5)
    assert len(G) == 5
    assert set(G.elements) == set(rotations(C5).elements)
    assert G.is_cyclic()
    p = (1, 2, 3, 4, 0)
    assert G.element_order(p) == 5
    assert G.mul(p, G.inverse(p)) == G.identity
    assert len(G.orbit(p)) == 5
    with pytest.raises(SizeBoundError):
        automorphism_group(C5, perm_bound=4)


def test_linear_automorphisms() -> None:
    """A finite chain has only the identity."""
    L = LinOrder((0, 1, 2, 3))
    assert linear_automorphism_group(L).elements == (L.labels,)
    assert lop_check({0: 0, 1: 0, 2: 3, 3: 3}, L, L)
    assert not lop_check({0: 1, 1: 0, 2: 2, 3: 3}, L, L)


if __name__ == "__main__":
    test_cop_map_count()
    test_cop_iff_cycles_to_cycles()
