"""Test the translation cascade on the two-point compactification of Z."""

import logging
import math

import pytest
from returns.result import Success

from cyclord.ellis import cascade
from cyclord.ellis.cascade import (
    LimMinus,
    LimPlus,
    Trans,
    cascade_apply,
    cascade_compose,
    cascade_elements,
    cascade_system,
    cascade_table_check,
    cascade_table_mismatches,
    window,
)
from cyclord.ellis.finite import ellis_linear_order


def test_apply() -> None:
    """Limits send integers to the ends and every element fixes the ends."""
    assert cascade_apply(Trans(3), -7) == -4
    assert cascade_apply(LimPlus(), 5) == math.inf
    assert cascade_apply(LimMinus(), 5) == -math.inf
    assert cascade_apply(Trans(3), -math.inf) == -math.inf
    assert cascade_apply(LimMinus(), math.inf) == math.inf


def test_compose() -> None:
    """A limit on the right wins over anything on the left."""
    assert cascade_compose(Trans(-2), Trans(2)) == Trans(0)
    assert cascade_compose(LimPlus(), Trans(4)) == LimPlus()
    assert cascade_compose(Trans(4), LimMinus()) == LimMinus()
    assert cascade_compose(LimPlus(), LimMinus()) == LimMinus()


def test_table_matches_evaluation() -> None:
    """Symbolic products agree with evaluation on the window."""
    assert cascade_table_check(n_max=6, radius=30)
    assert list(cascade_table_mismatches(n_max=3, radius=10)) == []
    assert len(cascade_elements(4)) == 11
    assert window(2) == [-math.inf, -2, -1, 0, 1, 2, math.inf]


def test_table_mismatch_is_logged(
    monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture
) -> None:
    """A table where the left factor wins is rejected with a warning."""
    monkeypatch.setattr(cascade, "cascade_compose", lambda u, v: u)
    with caplog.at_level(logging.WARNING, logger="cyclord"):
        assert not cascade_table_check(n_max=2, radius=5)
    assert "disagrees" in caplog.text


def test_pointwise_order() -> None:
    """The enveloping semigroup is linearly ordered with the limits at the ends."""
    n_max = 5
    elements = cascade_elements(n_max)
    group = range(-n_max, n_max + 1)
    verdict = ellis_linear_order(
        elements, cascade_system(40), list(group), {n: Trans(n) for n in group}
    )
    assert isinstance(verdict, Success)
    order = verdict.unwrap()
    assert order.order.labels[0] == LimMinus()
    assert order.order.labels[-1] == LimPlus()
    assert order.less(Trans(-1), Trans(2))
    assert order.claims["embedding"] is True
