"""Helpers for the opaque point identifiers used by every order structure.

Labels are ints, strings, fractions, or tuples of labels. Their own order is only
used to pick canonical representatives, never as mathematical content.
"""

import numbers
from collections.abc import Hashable, Iterable
from typing import Any

Label = Hashable


def label_key(label: Any) -> tuple:
    """Return a sort key that totally orders labels of mixed types.

    Examples
    --------
    >>> sorted([3, "a", (1, 2), 0], key=label_key)
    [0, 3, 'a', (1, 2)]
    """
    if isinstance(label, bool):
        return (0, int(label))
    if isinstance(label, numbers.Real):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    return (3, repr(label))


def sort_labels(labels: Iterable[Any]) -> list[Any]:
    """Sort labels by `label_key`."""
    return sorted(labels, key=label_key)


def to_label(raw: Any) -> Any:
    """Turn a JSON value back into a hashable label (lists become tuples)."""
    if isinstance(raw, list):
        return tuple(to_label(x) for x in raw)
    return raw


def parse_label(token: str) -> Any:
    """Read a label given on the command line; integers are recognised."""
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        return token
