"""Canonical JSON documents for contexts, soft sets, mappings and reports.

Canonical output has sorted keys, sorted name lists, no insignificant
whitespace and a single trailing newline, so equal values always serialize
to identical bytes.  Soft sets and mappings embed their contexts inline;
on input a context may also be given as a name resolved against a
registry of known contexts.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from typing import Any, Mapping

from .errors import DocumentSyntaxError, SchemaError, SoftClassError
from .mapping import ClassMapping, validate_mapping
from .oracle import LawReport, Witness, get_law
from .softset import Context, SoftSet, validate_soft_set

KIND_FIELDS = {
    "context": {"universe", "attributes"},
    "softset": {"context", "values"},
    "mapping": {"source", "target", "u", "p", "mode"},
    "report": {"law", "instances", "violation_count", "violations"},
    "witness": {"law", "mapping", "arguments", "lhs", "rhs", "verdict"},
}
REQUIRED = {
    "context": {"universe", "attributes"},
    "softset": {"context", "values"},
    "mapping": {"source", "target", "u", "p"},
    "report": {"law", "instances", "violations"},
    "witness": {"law", "mapping", "arguments", "lhs", "rhs", "verdict"},
}


def canonical_bytes(obj: Any) -> bytes:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# -- to plain data ------------------------------------------------------------


def context_data(ctx: Context) -> dict:
    return {"universe": list(ctx.universe), "attributes": list(ctx.attributes)}


def softset_data(soft: SoftSet) -> dict:
    return {
        "context": context_data(soft.context),
        "values": {a: sorted(v) for a, v in soft.items},
    }


def mapping_data(f: ClassMapping) -> dict:
    return {
        "source": context_data(f.source),
        "target": context_data(f.target),
        "u": dict(f.u),
        "p": dict(f.p),
        "mode": f.mode,
    }


def witness_data(w: Witness) -> dict:
    return {
        "law": w.law,
        "mapping": mapping_data(w.mapping),
        "arguments": [softset_data(a) for a in w.arguments],
        "lhs": softset_data(w.lhs),
        "rhs": softset_data(w.rhs),
        "verdict": w.verdict,
    }


def report_data(r: LawReport) -> dict:
    return {
        "law": r.law,
        "instances": r.instances,
        "violation_count": r.violation_count,
        "violations": [witness_data(w) for w in r.violations],
    }


def to_data(value) -> Any:
    if isinstance(value, Context):
        return context_data(value)
    if isinstance(value, SoftSet):
        return softset_data(value)
    if isinstance(value, ClassMapping):
        return mapping_data(value)
    if isinstance(value, Witness):
        return witness_data(value)
    if isinstance(value, LawReport):
        return report_data(value)
    if isinstance(value, (list, tuple)):
        return [to_data(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def serialize_document(value) -> bytes:
    return canonical_bytes(to_data(value))


# -- from plain data ----------------------------------------------------------


@contextmanager
def _at(path: str):
    try:
        yield
    except SoftClassError as exc:
        if not getattr(exc, "_located", False):
            exc.args = (f"{path}: {exc.args[0] if exc.args else ''}",) + exc.args[1:]
            exc._located = True
        raise


def _reject_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise SchemaError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _loads(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"document is not UTF-8: {exc}") from None
    try:
        return json.loads(data, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def detect_kind(obj: Any) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("a document must be a JSON object")
    if "kind" in obj:
        kind = obj["kind"]
        if kind not in KIND_FIELDS:
            raise SchemaError(f"unknown kind {kind!r}")
        return kind
    keys = set(obj)
    for kind, required in REQUIRED.items():
        if required <= keys and keys <= KIND_FIELDS[kind]:
            return kind
    raise SchemaError(f"fields {sorted(keys)} match no document kind")


def _fields(obj: Any, kind: str, path: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected a {kind} object")
    body = {k: v for k, v in obj.items() if k != "kind"}
    if "kind" in obj and obj["kind"] != kind:
        raise SchemaError(f"{path}: expected kind {kind!r}, got {obj['kind']!r}")
    unknown = set(body) - KIND_FIELDS[kind]
    if unknown:
        raise SchemaError(f"{path}: unknown field(s) {', '.join(sorted(unknown))} in {kind}")
    missing = REQUIRED[kind] - set(body)
    if missing:
        raise SchemaError(f"{path}: missing field(s) {', '.join(sorted(missing))} in {kind}")
    return body


def _names(obj: Any, path: str) -> list[str]:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise SchemaError(f"{path}: expected a list of names")
    return obj


def _table(obj: Any, path: str) -> dict[str, str]:
    if not isinstance(obj, dict) or not all(isinstance(v, str) for v in obj.values()):
        raise SchemaError(f"{path}: expected an object mapping names to names")
    return obj


def context_from(obj: Any, path: str = "$", contexts: Mapping[str, Context] | None = None) -> Context:
    if isinstance(obj, str):
        if not contexts or obj not in contexts:
            raise SchemaError(f"{path}: unknown context name {obj!r}")
        return contexts[obj]
    body = _fields(obj, "context", path)
    with _at(path):
        return Context(
            _names(body["universe"], f"{path}.universe"),
            _names(body["attributes"], f"{path}.attributes"),
        )


def softset_from(obj: Any, path: str = "$", contexts=None) -> SoftSet:
    body = _fields(obj, "softset", path)
    ctx = context_from(body["context"], f"{path}.context", contexts)
    values = body["values"]
    if not isinstance(values, dict):
        raise SchemaError(f"{path}.values: expected an object")
    assignments = {a: _names(v, f"{path}.values.{a}") for a, v in values.items()}
    for attr, members in assignments.items():
        if len(set(members)) != len(members):
            raise SchemaError(f"{path}.values.{attr}: repeated element")
    with _at(f"{path}.values"):
        return validate_soft_set(ctx, assignments)


def mapping_from(obj: Any, path: str = "$", contexts=None) -> ClassMapping:
    body = _fields(obj, "mapping", path)
    source = context_from(body["source"], f"{path}.source", contexts)
    target = context_from(body["target"], f"{path}.target", contexts)
    mode = body.get("mode", "strict")
    with _at(path):
        return validate_mapping(
            source,
            target,
            _table(body["u"], f"{path}.u"),
            _table(body["p"], f"{path}.p"),
            mode,
        )


def witness_from(obj: Any, path: str = "$", contexts=None) -> Witness:
    body = _fields(obj, "witness", path)
    if body["verdict"] not in ("holds", "violated"):
        raise SchemaError(f"{path}.verdict: must be 'holds' or 'violated'")
    if not isinstance(body["arguments"], list):
        raise SchemaError(f"{path}.arguments: expected a list")
    with _at(f"{path}.law"):
        try:
            law = get_law(body["law"]).id
        except KeyError as exc:
            raise SchemaError(str(exc)) from None
    return Witness(
        law,
        mapping_from(body["mapping"], f"{path}.mapping", contexts),
        tuple(softset_from(a, f"{path}.arguments[{i}]", contexts)
              for i, a in enumerate(body["arguments"])),
        softset_from(body["lhs"], f"{path}.lhs", contexts),
        softset_from(body["rhs"], f"{path}.rhs", contexts),
        body["verdict"],
    )


def report_from(obj: Any, path: str = "$", contexts=None) -> LawReport:
    body = _fields(obj, "report", path)
    if not isinstance(body["instances"], int) or not isinstance(body["violations"], list):
        raise SchemaError(f"{path}: malformed report")
    witnesses = [witness_from(w, f"{path}.violations[{i}]", contexts)
                 for i, w in enumerate(body["violations"])]
    return LawReport(
        body["law"],
        body["instances"],
        body.get("violation_count", len(witnesses)),
        witnesses,
    )


_READERS = {
    "context": context_from,
    "softset": softset_from,
    "mapping": mapping_from,
    "witness": witness_from,
    "report": report_from,
}


def parse_document(data: bytes | str, contexts: Mapping[str, Context] | None = None,
                   expect: str | None = None):
    """Parse one document; ``expect`` pins the kind instead of detecting it."""
    obj = _loads(data)
    kind = expect or detect_kind(obj)
    if kind not in _READERS:
        raise SchemaError(f"unknown kind {kind!r}")
    if kind == "context":
        return context_from(obj, "$")
    return _READERS[kind](obj, "$", contexts)
