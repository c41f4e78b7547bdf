"""Reading and writing semigroups, presheaves, actions and Yamada specs.

The ``.sgp`` text format::

    # comment
    3
    0 1 0
    0 1 0
    0 1 2
    labels: a b c

Line one is the order, then one row per element with 0-based entries.
A JSON document ``{"order": n, "table": [...], "labels": [...]}`` is
accepted wherever a ``.sgp`` file is.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from ..core import FiniteSemigroup, validate
from ..errors import ParseError, SemigroupError
from ..etale import EtaleAction, InverseSemigroup, validate_etale
from ..presheaf import Presheaf, presheaf_from_dict, presheaf_to_dict


def parse_sgp(text: str, path=None) -> FiniteSemigroup:
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, path, exc.lineno) from None
        return semigroup_from_dict(doc, path)
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ParseError("empty file", path)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected the order, got {head!r}", path, lineno) from None
    if n < 1:
        raise ParseError("order must be positive", path, lineno)
    rows, labels = [], None
    for lineno, body in lines[1:]:
        if body.startswith("labels:"):
            labels = body[len("labels:"):].split()
            if len(labels) != n:
                raise ParseError(f"{len(labels)} labels for {n} elements", path, lineno)
            continue
        if labels is not None:
            raise ParseError("table rows after the labels line", path, lineno)
        try:
            row = [int(tok) for tok in body.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {body!r}", path, lineno) from None
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", path, lineno)
        rows.append(row)
    if len(rows) != n:
        raise ParseError(f"{len(rows)} rows, expected {n}", path, lines[-1][0])
    return validate(rows, labels)


def semigroup_from_dict(doc: Mapping, path=None) -> FiniteSemigroup:
    try:
        table = doc["table"]
    except (KeyError, TypeError):
        raise ParseError("semigroup document needs a 'table'", path) from None
    if "order" in doc and doc["order"] != len(table):
        raise ParseError(f"order {doc['order']} does not match {len(table)} rows", path)
    return validate(table, doc.get("labels"))


def semigroup_to_dict(S: FiniteSemigroup) -> dict:
    doc = {"order": S.order, "table": S.as_lists()}
    if S.labels:
        doc["labels"] = list(S.labels)
    return doc


def format_sgp(S: FiniteSemigroup, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(str(S.order))
    width = len(str(S.order - 1))
    out.extend(" ".join(str(x).rjust(width) for x in row) for row in S.table)
    if S.labels:
        out.append("labels: " + " ".join(S.labels))
    return "\n".join(out) + "\n"


def read_semigroup(path) -> FiniteSemigroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    return parse_sgp(text, path)


def write_semigroup(S: FiniteSemigroup, path) -> None:
    Path(path).write_text(format_sgp(S))


def _load_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path, exc.lineno) from None


def _resolve(ref, base: Path | None):
    """Inline documents pass through; strings are paths relative to ``base``."""
    if isinstance(ref, str):
        p = Path(ref)
        if base is not None and not p.is_absolute():
            p = base / p
        return p
    return ref


def semigroup_ref(ref, base: Path | None = None) -> FiniteSemigroup:
    ref = _resolve(ref, base)
    return read_semigroup(ref) if isinstance(ref, Path) else semigroup_from_dict(ref)


def presheaf_ref(ref, base: Path | None = None) -> Presheaf:
    ref = _resolve(ref, base)
    doc = _load_json(ref) if isinstance(ref, Path) else ref
    try:
        return presheaf_from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed presheaf document ({exc})", ref if isinstance(ref, Path) else None) from None


def read_presheaf(path) -> Presheaf:
    return presheaf_ref(Path(path))


def write_presheaf(P: Presheaf, path) -> None:
    Path(path).write_text(json.dumps(presheaf_to_dict(P), indent=2) + "\n")


def action_from_dict(doc: Mapping, base: Path | None = None) -> EtaleAction:
    """``{"semigroup": .., "inverse_of": [..], "support": [..], "act": [[..]]}``."""
    try:
        S = semigroup_ref(doc["semigroup"], base)
        inv = doc.get("inverse_of")
        T = InverseSemigroup(S, tuple(inv)) if inv is not None else InverseSemigroup.from_semigroup(S)
        return validate_etale(T, doc["support"], doc["act"], doc.get("labels"))
    except KeyError as exc:
        raise ParseError(f"action document lacks {exc}") from None


def action_to_dict(A: EtaleAction) -> dict:
    doc = {
        "semigroup": semigroup_to_dict(A.actor.base),
        "inverse_of": list(A.actor.inv),
        "support": list(A.support),
        "act": [list(r) for r in A.act],
    }
    if A.labels:
        doc["labels"] = list(A.labels)
    return doc


def read_action(path) -> EtaleAction:
    path = Path(path)
    return action_from_dict(_load_json(path), path.parent)


def read_yamada_spec(path) -> tuple[FiniteSemigroup, Presheaf, Presheaf | None]:
    """``{"T": .., "X": .., "Y": ..}``; ``Y`` is optional. Refs may be inline or paths."""
    path = Path(path)
    doc = _load_json(path)
    if not isinstance(doc, dict) or "T" not in doc or "X" not in doc:
        raise ParseError("spec needs 'T' and 'X'", path)
    base = path.parent
    T = semigroup_ref(doc["T"], base)
    X = presheaf_ref(doc["X"], base)
    Y = presheaf_ref(doc["Y"], base) if "Y" in doc else None
    return T, X, Y


__all__ = [
    "ParseError",
    "SemigroupError",
    "parse_sgp",
    "format_sgp",
    "read_semigroup",
    "write_semigroup",
    "semigroup_from_dict",
    "semigroup_to_dict",
    "read_presheaf",
    "write_presheaf",
    "presheaf_ref",
    "semigroup_ref",
    "action_from_dict",
    "action_to_dict",
    "read_action",
    "read_yamada_spec",
]
