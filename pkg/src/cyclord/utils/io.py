"""Read and write the JSON documents understood by the command line.

Every document is a JSON object with a ``kind``. References to other documents
are paths relative to the referring file; the same slot also accepts the
referenced document inline. Labels are JSON scalars or arrays; arrays become
tuples.
"""

import json
import pathlib
from collections.abc import Collection
from typing import Any

import cyclord as core
from cyclord.utils.errors import ParseError
from cyclord.utils.labels import to_label

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"

KINDS = ("corder", "linorder", "ternary", "group", "action", "lift", "scenario")
FAMILIES = ("finite", "cascade", "sturmian")


def read_document(
    path: pathlib.Path | str, kinds: Collection[str] | None = None
) -> dict[str, Any]:
    """Parse a JSON document and check its kind.

    Raises
    ------
    ParseError
        If the file cannot be read, is not a JSON object or has an unexpected kind.
    """
    path = pathlib.Path(path)
    try:
        with path.open(encoding="utf-8") as f:
            doc = json.load(f)
    except OSError as err:
        raise ParseError(f"Cannot read {path}: {err.strerror}.") from err
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}:{err.lineno}:{err.colno}: {err.msg}.") from err
    _check_kind(doc, kinds, str(path))
    doc.setdefault("_dir", str(path.parent))
    return doc


def _check_kind(doc: Any, kinds: Collection[str] | None, where: str) -> None:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError(f"{where}: expected an object with a 'kind'.")
    if doc["kind"] not in KINDS:
        raise ParseError(f"{where}: unknown kind {doc['kind']!r}.")
    if kinds is not None and doc["kind"] not in kinds:
        raise ParseError(
            f"{where}: expected kind {' or '.join(kinds)}, got {doc['kind']!r}."
        )


def write_document(payload: dict[str, Any], path: pathlib.Path | str | None = None) -> str:
    """Serialize `payload` with sorted keys; write it to `path` when given."""
    text = json.dumps(payload, indent=2, sort_keys=True, default=_default) + "\n"
    if path is not None:
        pathlib.Path(path).write_text(text, encoding="utf-8")
    return text


def _default(obj: Any) -> Any:
    if isinstance(obj, (tuple, frozenset, set)):
        return list(obj)
    return repr(obj)


def _field(doc: dict, key: str) -> Any:
    try:
        return doc[key]
    except KeyError:
        raise ParseError(f"A {doc.get('kind')} document needs {key!r}.") from None


def _labels(raw: Any, what: str) -> list:
    if not isinstance(raw, list):
        raise ParseError(f"{what} must be a list.")
    return [to_label(x) for x in raw]


def resolve(ref: Any, base: pathlib.Path, kinds: Collection[str]) -> Any:
    """Convert a reference slot: a path relative to `base` or an inline document."""
    if isinstance(ref, str):
        return convert(read_document(base / ref, kinds))
    if isinstance(ref, dict):
        ref.setdefault("_dir", str(base))
        _check_kind(ref, kinds, "inline document")
        return convert(ref)
    raise ParseError(f"Expected a path or an inline {' or '.join(kinds)} document.")


def _element(group: Any, key: Any) -> Any:
    lookup = {str(g): g for g in group.elements} | {
        json.dumps(g, default=_default): g for g in group.elements
    }
    if (label := to_label(key)) in group.elements:
        return label
    if isinstance(key, str) and key in lookup:
        return lookup[key]
    raise ParseError(f"{key!r} is not an element of {group.name}.")


def convert(doc: dict[str, Any]) -> Any:
    """Turn a parsed document into the matching `cyclord` object.

    Returns
    -------
    Any
        `CircOrder` for corder, `LinOrder` for linorder, `TernaryRelation` for
        ternary, `GroupTable` for group, `GroupAction` for action, `FiberedLift`
        for lift and the validated dictionary for scenario.
    """
    base = pathlib.Path(doc.get("_dir", "."))
    match doc["kind"]:
        case "corder":
            return core.orders.core.CircOrder(tuple(_labels(_field(doc, "cycle"), "cycle")))
        case "linorder":
            return core.orders.core.LinOrder(tuple(_labels(_field(doc, "labels"), "labels")))
        case "ternary":
            triples = [tuple(_labels(t, "triple")) for t in _field(doc, "triples")]
            return core.orders.core.TernaryRelation(
                frozenset(_labels(_field(doc, "points"), "points")), frozenset(triples)
            )
        case "group":
            if "elements" not in doc and "name" in doc:
                named = core.groups.group.corpus()
                if doc["name"] not in named:
                    raise ParseError(f"No bundled group called {doc['name']!r}.")
                return named[doc["name"]]
            elements = _labels(_field(doc, "elements"), "elements")
            table = [_labels(row, "table row") for row in _field(doc, "table")]
            return core.groups.group.GroupTable(elements, table, doc.get("name", "group"))
        case "action":
            return _action(doc, base)
        case "lift":
            return _lift(doc, base)
        case "scenario":
            family = _field(doc, "family")
            if family not in FAMILIES:
                raise ParseError(f"Unknown scenario family {family!r}.")
            return dict(doc)
    raise ParseError(f"Unknown kind {doc['kind']!r}.")


def _action(doc: dict[str, Any], base: pathlib.Path) -> Any:
    group = resolve(_field(doc, "group"), base, ("group",))
    space = resolve(_field(doc, "space"), base, ("corder", "linorder"))
    GroupAction = core.groups.action.GroupAction
    if "rotation" in doc:
        generator = None if doc["rotation"] is None else _element(group, doc["rotation"])
        return GroupAction.rotations(group, space, generator)
    raw = _field(doc, "maps")
    pairs = raw.items() if isinstance(raw, dict) else raw
    maps = {}
    for key, images in pairs:
        images = _labels(images, f"images of {key!r}")
        if len(images) != len(space):
            raise ParseError(f"The map of {key!r} must list {len(space)} images.")
        maps[_element(group, key)] = dict(zip(space.labels, images))
    return GroupAction.from_maps(group, space, maps)


def _lift(doc: dict[str, Any], base: pathlib.Path) -> Any:
    circle = resolve(_field(doc, "base"), base, ("corder",))
    q = {to_label(x): to_label(y) for x, y in _field(doc, "q")}
    fibers = {
        to_label(y): core.orders.core.LinOrder(tuple(_labels(xs, "fiber")))
        for y, xs in _field(doc, "fibers")
    }
    return core.orders.lex.build_fibered_lift(q, circle, fibers)


def load(path: pathlib.Path | str, kinds: Collection[str] | None = None) -> tuple[str, Any]:
    """Read and convert a document; return its kind and the object."""
    doc = read_document(path, kinds)
    return doc["kind"], convert(doc)


def to_document(obj: Any) -> dict[str, Any]:
    """Inverse of `convert`: the document describing `obj`, references inlined."""
    orders = core.orders.core
    match obj:
        case orders.CircOrder():
            return {"kind": "corder", "cycle": list(obj.labels)}
        case orders.LinOrder():
            return {"kind": "linorder", "labels": list(obj.labels)}
        case orders.TernaryRelation():
            return {
                "kind": "ternary",
                "points": core.utils.labels.sort_labels(obj.points),
                "triples": [list(t) for t in core.utils.labels.sort_labels(obj.triples)],
            }
        case core.groups.group.GroupTable():
            return obj.to_dict()
        case core.groups.action.GroupAction():
            return {
                "kind": "action",
                "group": obj.group.to_dict(),
                "space": to_document(obj.space),
                "maps": [
                    [g, [table[x] for x in obj.space.labels]]
                    for g, table in obj.maps().items()
                ],
            }
        case core.orders.lex.FiberedLift():
            return {
                "kind": "lift",
                "base": to_document(obj.base),
                "q": [[x, y] for x, y in obj.q.items()],
                "fibers": [[y, list(obj.fibers[y].labels)] for y in obj.base.labels],
            }
        case dict() if obj.get("kind") == "scenario":
            return {k: v for k, v in obj.items() if k != "_dir"}
    raise ParseError(f"No document form for {type(obj).__name__}.")
