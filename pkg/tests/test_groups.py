"""Test groups, actions and the orderability procedures."""

import random

import pytest

from cyclord.groups.action import GroupAction
from cyclord.groups.group import (
    FGAbelian,
    GroupTable,
    corpus,
    cyclic,
    dihedral,
    klein,
    quaternion,
)
from cyclord.groups.orderability import (
    Comparison,
    GroupOrder,
    Inconclusive,
    NoTorsion,
    TorsionWitness,
    bs_condition_check,
    circularize_group_order,
    dynlex_compare,
    dynlex_order,
    finite_lcord_decide,
    first_factor_order,
    invariance_witness,
    left_invariance_check,
    product_rotation_action,
    stabilizer_lift,
    torsion_obstruction,
)
from cyclord.orders.core import CircOrder, LinOrder
from cyclord.orders.oracle import integer_enumeration, integer_order
from cyclord.utils.errors import (
    HypothesisError,
    InputError,
    InvariantViolation,
    LabelMismatchError,
    NotCopError,
    NotOrderPreservingError,
    PartialMapError,
)

CYCLIC = {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z12", "Z2xZ3"}


def _reflection() -> GroupAction:
    flip = {0: 0, 1: 2, 2: 1}
    ident = {x: x for x in range(3)}
    return GroupAction.from_maps(cyclic(2), CircOrder.standard(3), {0: ident, 1: flip})


def test_group_table_validation() -> None:
    """Shapes are checked and so are the group axioms."""
    with pytest.raises(InputError):
        GroupTable([0, 1], [[0, 1]])
    with pytest.raises(InputError):
        GroupTable([0, 1], [[0, 1], [1, 7]])
    with pytest.raises(InvariantViolation):
        GroupTable([0, 1], [[0, 1], [1, 1]])


def test_corpus() -> None:
    """Bundled groups have the expected orders and cyclicity."""
    groups = corpus()
    assert len(groups["D4"]) == len(groups["Q8"]) == len(groups["Z2xZ4"]) == 8
    assert len(groups["A4"]) == 12
    assert len(groups["S3"]) == 6
    for name, G in groups.items():
        assert G.is_cyclic() == (name in CYCLIC), name
    assert quaternion().mul("i", "j") == "k"
    assert quaternion().inv("-k") == "k"


def test_generators_span() -> None:
    """The greedy generating set spans the group."""
    for G in corpus().values():
        assert G.closure(G.generators()) == set(G.elements)


def test_fg_abelian() -> None:
    """Arithmetic of Z x Z4."""
    G = FGAbelian((None, 4))
    assert G.mul((2, 3), (-5, 2)) == (-3, 1)
    assert G.power((1, 3), 3) == (3, 1)
    assert (0, 5) not in G
    assert len(FGAbelian((2, 3)).to_table()) == 6
    with pytest.raises(InputError):
        G.to_table()


def test_lcord_iff_cyclic() -> None:
    """A finite group is circularly orderable exactly when it is cyclic."""
    for name, G in corpus().items():
        decision = finite_lcord_decide(G)
        assert decision.orderable == (name in CYCLIC)
        if decision.orderable:
            assert left_invariance_check(G, decision.certificate)
        else:
            assert decision.certificate is None
            assert decision.transcript[-1] == "no element generates the group"


def test_torsion_obstruction() -> None:
    """Finite groups are searched exhaustively, infinite ones along candidates."""
    assert torsion_obstruction(cyclic(1)) == NoTorsion()
    assert torsion_obstruction(klein()).order == 2
    assert torsion_obstruction(FGAbelian((None, 4))) == TorsionWitness((0, 1), 4)
    assert torsion_obstruction(FGAbelian((None, None)), depth=10) == Inconclusive(10)


def test_invariance() -> None:
    """Abelian groups have bi-invariant circular orders; sides are reported."""
    order = GroupOrder.of(cyclic(5), CircOrder.standard(5))
    assert order.bi
    g, points = invariance_witness(cyclic(4), CircOrder((0, 2, 1, 3)))
    assert g != 0
    assert len(points) == 3
    with pytest.raises(LabelMismatchError):
        left_invariance_check(cyclic(3), CircOrder.standard(4))
    assert not dihedral(3).is_cyclic()
    assert not left_invariance_check(dihedral(3), CircOrder(dihedral(3).elements))


def test_circularize_group_order() -> None:
    """Only a left invariant linear order may be circularized."""
    trivial = circularize_group_order(cyclic(1), LinOrder((0,)))
    assert trivial.left
    with pytest.raises(HypothesisError):
        circularize_group_order(cyclic(2), LinOrder((0, 1)))


def test_action_laws() -> None:
    """Tables must be total and satisfy the action laws."""
    Z2, C3 = cyclic(2), CircOrder.standard(3)
    ident = {x: x for x in range(3)}
    with pytest.raises(PartialMapError):
        GroupAction.from_maps(Z2, C3, {0: ident})
    with pytest.raises(HypothesisError):
        GroupAction.from_maps(Z2, C3, {0: {0: 1, 1: 0, 2: 2}, 1: ident})
    with pytest.raises(LabelMismatchError):
        GroupAction.from_maps(Z2, C3, {0: ident, 1: {0: 5, 1: 1, 2: 2}})


def test_rotation_action() -> None:
    """Z6 rotates C3 through a quotient, with kernel {0, 3}."""
    act = GroupAction.rotations(cyclic(6), CircOrder.standard(3))
    assert act.kernel() == [0, 3]
    assert not act.is_effective()
    assert act.stabilizer(1) == [0, 3]
    assert set(act.orbit(0)) == {0, 1, 2}
    assert act.preserves_order()
    with pytest.raises(HypothesisError):
        GroupAction.rotations(klein(), CircOrder.standard(2))


def test_non_preserving() -> None:
    """A reflection of C3 is caught at the generator."""
    g, failure = _reflection().non_preserving()
    assert g == 1
    assert failure.condition == 1


def test_dynlex_compare() -> None:
    """Translations of Z compare by their shift."""
    Z, enum_ = integer_order(), integer_enumeration
    assert dynlex_compare(lambda x: x + 2, lambda x: x - 1, enum_(), Z) == Comparison.GREATER
    assert dynlex_compare(lambda x: x, lambda x: x, enum_(), Z, budget=20) == Comparison.UNRESOLVED

    def late(x: int) -> int:
        return x if x < 100 else x + 1

    assert dynlex_compare(lambda x: x, late, enum_(), Z, budget=50) == Comparison.UNRESOLVED
    assert dynlex_compare(lambda x: x, late, enum_(), Z, budget=300) == Comparison.LESS
    with pytest.raises(NotOrderPreservingError):
        dynlex_compare(lambda x: -x, lambda x: -x, enum_(), Z)


def test_dynlex_finite() -> None:
    """On a finite chain the identity compares EQUAL to itself."""
    L = LinOrder((0, 1, 2))
    ident = {x: x for x in range(3)}
    assert dynlex_compare(ident, dict(ident), None, L) == Comparison.EQUAL
    with pytest.raises(HypothesisError):
        dynlex_compare(ident, ident, None, integer_order())


def test_dynlex_order() -> None:
    """Sorting shifts of Z by the first disagreement."""
    shifts = [3, -1, 0, 7]
    maps = [lambda x, k=k: x + k for k in shifts]
    ranked = dynlex_order(maps, integer_enumeration, integer_order())
    assert [shifts[i] for i in ranked] == [-1, 0, 3, 7]
    with pytest.raises(HypothesisError):
        dynlex_order([maps[0], maps[0]], integer_enumeration, integer_order(), budget=10)


def test_stabilizer_lift_finite() -> None:
    """A free COP action of Z4 lifts to a left invariant order."""
    act = GroupAction.rotations(cyclic(4), CircOrder.standard(4))
    lift = stabilizer_lift(act, 0, samples=200, rng=random.Random(1))
    assert lift.invariant
    assert lift.samples > 0
    with pytest.raises(HypothesisError):
        stabilizer_lift(GroupAction.rotations(cyclic(6), CircOrder.standard(3)), 0)
    with pytest.raises(NotCopError):
        stabilizer_lift(_reflection(), 0)


def test_stabilizer_lift_infinite() -> None:
    """Z x Z3 rotating C3 lifts through the stabilizer Z x {0}."""
    act = product_rotation_action(3)
    lift = stabilizer_lift(act, 0, first_factor_order(), samples=300, rng=random.Random(7))
    assert lift.invariant
    assert set(lift.orbit) == {0, 1, 2}
    assert lift.oracle.triple((0, 0), (0, 1), (0, 2))
    assert lift.oracle.triple((-5, 0), (2, 0), (0, 1))


def test_bs_condition() -> None:
    """The stabilizer route applies to free actions and orderable stabilizers."""
    free = bs_condition_check(GroupAction.rotations(cyclic(5), CircOrder.standard(5)), 2)
    assert free.applies
    assert free.orbit_map_cop
    assert free.stabilizer == [0]
    quotient = bs_condition_check(GroupAction.rotations(cyclic(6), CircOrder.standard(3)), 0)
    assert not quotient.applies
    assert quotient.reason == "the action is not effective"
    assert not bs_condition_check(_reflection(), 0).applies
    assert bs_condition_check(product_rotation_action(3), 0, first_factor_order()).applies
    assert not bs_condition_check(product_rotation_action(3), 0).applies


if __name__ == "__main__":
    test_lcord_iff_cyclic()
    test_stabilizer_lift_infinite()
