"""Test enveloping semigroups of finite actions and the pointwise order."""

import pytest
from returns.result import Success

from cyclord.ellis.finite import (
    OrderedSystem,
    TransformationSemigroup,
    ellis_corder_probe,
    ellis_linear_order,
    finite_corder_probe,
    finite_ellis,
    finite_ellis_order,
)
from cyclord.groups.action import GroupAction
from cyclord.groups.group import cyclic
from cyclord.orders.core import CircOrder, LinOrder
from cyclord.utils.errors import HypothesisError, InvariantViolation

C3 = CircOrder.standard(3)
ID, SWAP = (0, 1), (1, 0)
C0, R, C2 = (0, 0, 0), (2, 1, 0), (2, 2, 2)


def _tuples_on(points: tuple) -> OrderedSystem:
    return OrderedSystem(
        points=points,
        less=lambda x, y: x < y,
        apply=lambda s, x: s[x],
        compose=TransformationSemigroup.compose,
    )


def test_generated_semigroup() -> None:
    """Closing a rotation gives the cyclic group of maps."""
    E = TransformationSemigroup.generated((0, 1, 2), [(1, 2, 0)])
    assert set(E.elements) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    assert E.cayley().shape == (3, 3, 3)
    assert E.apply((1, 2, 0), 2) == 0
    assert E.compose((1, 2, 0), (1, 2, 0)) == (2, 0, 1)


def test_semigroup_validation() -> None:
    """Maps must be self-maps and closed under composition."""
    with pytest.raises(HypothesisError):
        TransformationSemigroup((0, 1), ((0, 2),))
    with pytest.raises(InvariantViolation):
        TransformationSemigroup((0, 1, 2), ((1, 2, 0),))


def test_finite_ellis() -> None:
    """j is injective exactly for effective actions."""
    E = finite_ellis(GroupAction.rotations(cyclic(3), C3))
    assert len(E) == 3
    assert E.j_injective
    quotient = finite_ellis(GroupAction.rotations(cyclic(6), C3))
    assert len(quotient) == 3
    assert not quotient.j_injective


def test_trivial_order() -> None:
    """The trivial group on a chain passes every check."""
    act = GroupAction.from_maps(cyclic(1), LinOrder((0, 1, 2)), {0: {x: x for x in range(3)}})
    verdict = finite_ellis_order(finite_ellis(act), LinOrder((0, 1, 2)), LinOrder((0,)))
    assert isinstance(verdict, Success)
    claims = verdict.unwrap().claims
    assert claims["closedness"] == "vacuous on a finite sample"
    assert all(claims[k] is True for k in claims if k != "closedness")


def test_constant_maps_are_ordered() -> None:
    """Constants sit at the ends of the pointwise order."""
    E = TransformationSemigroup((0, 1), ((0, 0), ID, (1, 1)))
    order = finite_ellis_order(E, LinOrder((0, 1))).unwrap()
    assert order.order.labels == ((0, 0), ID, (1, 1))
    assert order.less((0, 0), (1, 1))


def test_swap_is_not_total() -> None:
    """A swap of a chain is incomparable with the identity."""
    E = TransformationSemigroup.generated((0, 1), [SWAP])
    verdict = finite_ellis_order(E, LinOrder((0, 1)))
    assert verdict.failure().claim == "totality"
    assert set(verdict.failure().witness) == {ID, SWAP}


def test_strong_monotonicity_failure() -> None:
    """An orbit map that decreases fails before anything else is checked."""
    verdict = ellis_linear_order([ID, SWAP], _tuples_on((0, 1)), [0, 1], {0: ID, 1: SWAP})
    assert verdict.failure().claim == "strong_monotonicity"
    assert verdict.failure().witness == (1, 0, 1)


def test_left_invariance_failure() -> None:
    """A reversal can keep right invariance and still break left invariance."""
    verdict = ellis_linear_order([C0, R, C2], _tuples_on((0, 1, 2)))
    assert verdict.failure().claim == "left_invariance"
    assert verdict.failure().witness == (C0, R, R)


def test_embedding_failure() -> None:
    """Distinct group elements must not act identically."""
    verdict = ellis_linear_order([ID], _tuples_on((0, 1)), ["a", "b"], {"a": ID, "b": ID})
    assert verdict.failure().claim == "embedding"


def test_corder_probe() -> None:
    """Rotations of C3 induce the circular order of C3 on themselves."""
    E = finite_ellis(GroupAction.rotations(cyclic(3), C3))
    probe = finite_corder_probe(E, C3)
    assert probe.experimental
    assert probe.decided == 1
    assert probe.passed
    assert len(probe.verdict.unwrap()) == 3
    contrary = ellis_corder_probe(E.elements, C3.triple, E.apply, [0], lambda *_: False)
    assert contrary.disagreements
    assert not contrary.passed


def test_corder_probe_undecided() -> None:
    """Constant maps agree too often to be decided at a single basepoint."""
    E = TransformationSemigroup((0, 1, 2), (C0, (0, 1, 2), (1, 1, 1)))
    probe = finite_corder_probe(E, C3, basepoints=[0])
    assert probe.undecided == 1
    assert not probe.passed
    with pytest.raises(HypothesisError):
        finite_corder_probe(E, CircOrder.standard(4))


if __name__ == "__main__":
    test_finite_ellis()
    test_left_invariance_failure()
