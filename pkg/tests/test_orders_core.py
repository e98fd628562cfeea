"""Test circular orders, cuts and the axiom verifier."""

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from returns.result import Success

import cyclord as core
from cyclord.orders.core import (
    CircOrder,
    Cut,
    LinOrder,
    TernaryRelation,
    circularize,
    convex_family,
    cut_from_subset,
    cut_interval_agrees,
    cut_order,
    cut_triple_property,
    enumerate_circ_orders,
    enumerate_oriented_relations,
    interval,
    is_convex,
    is_gap,
    verify_circular_axioms,
    verify_cut,
)
from cyclord.utils.errors import (
    InputError,
    InvariantViolation,
    LabelMismatchError,
    SizeBoundError,
    UnknownLabelError,
)

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(n)))
)


def test_canonical_rotation() -> None:
    """Rotations of one cyclic sequence give equal orders."""
    assert CircOrder((2, 3, 0, 1)) == CircOrder((0, 1, 2, 3))
    assert CircOrder(("b", "a")).labels == ("a", "b")
    assert CircOrder((1, 0, 2)) != CircOrder((0, 1, 2))


def test_duplicate_labels() -> None:
    """A label may appear only once."""
    with pytest.raises(InputError):
        CircOrder((0, 1, 0))
    with pytest.raises(InputError):
        LinOrder((3, 3))


def test_triple_c5() -> None:
    """The triple of C5 is decided on canonical positions."""
    C = CircOrder.standard(5)
    assert C.triple(0, 1, 2)
    assert C.triple(3, 4, 1)
    assert not C.triple(2, 1, 0)
    assert not C.triple(1, 1, 2)
    with pytest.raises(UnknownLabelError):
        C.triple(0, 1, 7)


def test_verify_c5_relation() -> None:
    """The relation of C5 passes and reproduces C5."""
    C = CircOrder.standard(5)
    assert verify_circular_axioms(C.relation()) == Success(C)


def test_verify_asymmetry_failure() -> None:
    """Both orientations of one triple break asymmetry."""
    both = {(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)}
    verdict = verify_circular_axioms(TernaryRelation({0, 1, 2}, both))
    assert verdict.failure().axiom == "Asymmetry"


def test_verify_cyclicity_failure() -> None:
    """A triple without its rotations breaks cyclicity."""
    verdict = verify_circular_axioms(TernaryRelation({0, 1, 2}, {(0, 1, 2)}))
    assert verdict.failure().axiom == "Cyclicity"
    assert verdict.failure().witness == (0, 1, 2)


def test_verify_totality_failure() -> None:
    """The empty relation on three points is not total."""
    verdict = verify_circular_axioms(TernaryRelation({0, 1, 2}, set()))
    assert verdict.failure().axiom == "Totality"


def test_verify_small_sets() -> None:
    """Sets with fewer than three points carry exactly one circular order."""
    assert verify_circular_axioms(TernaryRelation(set(), set())).unwrap().labels == ()
    assert verify_circular_axioms(TernaryRelation({"x", "y"}, set())).unwrap().labels == (
        "x",
        "y",
    )


def test_verify_size_bound() -> None:
    """Exhaustive verification refuses relations above the bound."""
    with pytest.raises(SizeBoundError):
        verify_circular_axioms(CircOrder.standard(6).relation(), max_size=5)


def test_unknown_label_in_relation() -> None:
    """Triples must use points of the ground set."""
    with pytest.raises(UnknownLabelError):
        TernaryRelation({0, 1}, {(0, 1, 2)})


def test_oriented_relations_against_sequences() -> None:
    """For n <= 5 the valid relations are exactly the relations of canonical sequences."""
    for n in range(3, 6):
        canonical = {C.labels for C in enumerate_circ_orders(range(n))}
        assert len(canonical) == math.factorial(n - 1)
        valid = [
            v.unwrap().labels
            for v in map(verify_circular_axioms, enumerate_oriented_relations(range(n)))
            if isinstance(v, Success)
        ]
        assert len(valid) == len(canonical)
        assert set(valid) == canonical


def test_transitivity_failure_on_four_points() -> None:
    """A cyclic, asymmetric, total relation on four points can still fail transitivity."""
    failures = {
        v.failure().axiom
        for v in map(verify_circular_axioms, enumerate_oriented_relations(range(4)))
        if not isinstance(v, Success)
    }
    assert failures == {"Transitivity"}


@given(permutations)
def test_cut_round_trip(labels: list[int]) -> None:
    """Circularizing a standard cut gives back the circular order."""
    C = CircOrder(tuple(labels))
    for z in C.labels:
        L = cut_order(C, z)
        assert L.labels[0] == z
        assert verify_cut(C, L)
        assert circularize(L) == C


def test_cut_order_example() -> None:
    """The cut of C4 at 2 starts at 2."""
    assert cut_order(CircOrder.standard(4), 2).labels == (2, 3, 0, 1)


def test_verify_cut() -> None:
    """A cut must follow the circular order; labels must match."""
    C = CircOrder.standard(4)
    assert verify_cut(C, LinOrder((1, 2, 3, 0)))
    assert not verify_cut(C, LinOrder((0, 2, 1, 3)))
    with pytest.raises(LabelMismatchError):
        verify_cut(C, LinOrder((0, 1, 2)))
    with pytest.raises(InvariantViolation):
        Cut(C, LinOrder((0, 2, 1, 3)))


def test_interval_kinds() -> None:
    """Open, closed and half open intervals of C5."""
    C = CircOrder.standard(5)
    assert interval(C, 1, 4) == {2, 3}
    assert interval(C, 4, 1, "closed") == {4, 0, 1}
    assert interval(C, 4, 1, "closed_open") == {4, 0}
    assert interval(C, 4, 1, "open_closed") == {0, 1}
    assert interval(C, 2, 2, "closed") == {2}
    assert interval(C, 2, 2) == frozenset()
    with pytest.raises(InputError):
        interval(C, 0, 1, "ajar")  # type: ignore[arg-type]


def test_convexity() -> None:
    """Arcs are convex, a set with two separated points is not."""
    C = CircOrder.standard(6)
    assert is_convex(C, {4, 5, 0})
    assert not is_convex(C, {0, 1, 3, 4})
    assert is_convex(C, set())
    family = convex_family(C)
    for k in range(7):
        for S in itertools.combinations(C.labels, k):
            assert (frozenset(S) in family) == is_convex(C, S)


def test_cut_from_subset() -> None:
    """The strict upper bounds of A come first."""
    C = CircOrder.standard(4)
    cut = cut_from_subset(LinOrder((0, 1, 2, 3)), {0, 1}, C)
    assert cut.order.labels == (2, 3, 0, 1)
    assert cut.least == 2
    assert cut.greatest == 1
    assert not is_gap(cut)


def test_cut_properties() -> None:
    """Every triple is read as one of the three rotations, and intervals agree."""
    C = CircOrder.standard(6)
    for z in C.labels:
        cut = Cut(C, cut_order(C, z))
        for a, b, c in itertools.permutations(C.labels, 3):
            assert cut_triple_property(cut, a, b, c)
        for a, b in itertools.permutations(C.labels, 2):
            assert cut_interval_agrees(cut, a, b)


def test_restrict_and_successor() -> None:
    """Induced orders keep the cyclic sequence."""
    C = CircOrder((0, 3, 1, 4, 2))
    assert C.restrict({1, 2, 3}).labels == (1, 2, 3)
    assert C.successor(2) == 0
    assert core.orders.core.LinOrder((5, 1)).restrict({1}).labels == (1,)


if __name__ == "__main__":
    test_verify_c5_relation()
    test_oriented_relations_against_sequences()
