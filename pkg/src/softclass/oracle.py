"""Exhaustive small-model verification of the image and inverse-image laws.

The catalog below covers the ten laws for soft images (L1-L5) and soft
inverse images (L6-L10), their three-argument family forms, and two
refutation targets (N1, N2): inclusions whose reverse direction is claimed
not to hold in general.

Every law is evaluated in full mode, with all domains padded to the whole
attribute space, so ``=`` means strict :func:`soft_equal`.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import engine
from .errors import (
    BoundsExceeded,
    ContextMismatch,
    EmptyTarget,
    SideConditionUnmet,
)
from .mapping import ClassMapping, combine_pointwise, image, preimage
from .softset import (
    Context,
    SoftSet,
    absolute_soft_set,
    is_soft_subset,
    null_soft_set,
    soft_equal,
    soft_intersection,
    soft_union,
)

log = logging.getLogger(__name__)

MAX_SIDE = 4


@dataclass(frozen=True)
class Law:
    id: str
    arity: int
    argument_class: str  # "source" or "target"
    relation: str  # "equality" or "inclusion"
    statement: str

    @property
    def is_refutation_target(self) -> bool:
        return self.id.startswith("N")

    @property
    def is_family(self) -> bool:
        return self.id.endswith("n")


LAWS: dict[str, Law] = {
    law.id: law
    for law in [
        Law("L1", 0, "source", "equality", "f(Phi) = Phi"),
        Law("L2", 0, "source", "inclusion", "f(X) <= Y"),
        Law("L3", 2, "source", "equality", "f(F u G) = f(F) u f(G)"),
        Law("L4", 2, "source", "inclusion", "f(F n G) <= f(F) n f(G)   [A n B nonempty]"),
        Law("L5", 2, "source", "inclusion", "F <= G  =>  f(F) <= f(G)"),
        Law("L6", 0, "target", "equality", "f^-1(Phi) = Phi"),
        Law("L7", 0, "target", "equality", "f^-1(Y) = X   [strict f]"),
        Law("L8", 2, "target", "equality", "f^-1(F u G) = f^-1(F) u f^-1(G)"),
        Law("L9", 2, "target", "equality", "f^-1(F n G) = f^-1(F) n f^-1(G)   [A n B nonempty]"),
        Law("L10", 2, "target", "inclusion", "F <= G  =>  f^-1(F) <= f^-1(G)"),
        Law("L3n", 3, "source", "equality", "f(F1 u F2 u F3) = f(F1) u f(F2) u f(F3)"),
        Law("L4n", 3, "source", "inclusion", "f(F1 n F2 n F3) <= f(F1) n f(F2) n f(F3)"),
        Law("L8n", 3, "target", "equality", "f^-1(F1 u F2 u F3) = u_i f^-1(Fi)"),
        Law("L9n", 3, "target", "equality", "f^-1(F1 n F2 n F3) = n_i f^-1(Fi)"),
        Law("N1", 0, "source", "inclusion", "Y <= f(X)"),
        Law("N2", 2, "source", "inclusion", "f(F) n f(G) <= f(F n G)   [A n B nonempty]"),
    ]
}

THEOREM_LAWS = tuple(f"L{i}" for i in range(1, 11))
FAMILY_LAWS = ("L3n", "L4n", "L8n", "L9n")
REFUTATION_TARGETS = ("N1", "N2")


def get_law(law: Law | str) -> Law:
    if isinstance(law, Law):
        return law
    try:
        return LAWS[law]
    except KeyError:
        raise KeyError(f"unknown law {law!r}; known: {', '.join(LAWS)}") from None


@dataclass(frozen=True)
class Witness:
    law: str
    mapping: ClassMapping
    arguments: tuple[SoftSet, ...]
    lhs: SoftSet
    rhs: SoftSet
    verdict: str  # "holds" or "violated"

    @property
    def violated(self) -> bool:
        return self.verdict == "violated"


@dataclass
class LawReport:
    law: str
    instances: int = 0
    violation_count: int = 0
    violations: list[Witness] = field(default_factory=list)


# -- enumeration -------------------------------------------------------------


def _guard(*contexts: Context) -> None:
    for ctx in contexts:
        if len(ctx.universe) > MAX_SIDE or len(ctx.attributes) > MAX_SIDE:
            raise BoundsExceeded(
                f"context of size |X|={len(ctx.universe)}, |E|={len(ctx.attributes)} "
                f"exceeds the enumeration bound {MAX_SIDE}"
            )


def _decode_soft_set(context: Context, code) -> SoftSet:
    dom, masks = code
    items = []
    for a, m in zip(dom, masks):
        items.append((
            context.attributes[a],
            frozenset(x for i, x in enumerate(context.universe) if m >> i & 1),
        ))
    return SoftSet(context, tuple(items))


def _decode_mapping(source: Context, target: Context, code) -> ClassMapping:
    u, p = code
    return ClassMapping(
        source,
        target,
        tuple((x, target.universe[y]) for x, y in zip(source.universe, u)),
        tuple((e, target.attributes[b]) for e, b in zip(source.attributes, p)),
        "strict",
    )


def soft_set_count(n_elems: int, n_attrs: int) -> int:
    return (1 + 2 ** n_elems) ** n_attrs


def enumerate_soft_sets(context: Context) -> Iterator[SoftSet]:
    """Every soft set over ``context`` exactly once, in canonical order."""
    _guard(context)
    for code in engine.soft_set_codes(len(context.universe), len(context.attributes)):
        yield _decode_soft_set(context, code)


def _check_targets(source: Context, target: Context) -> None:
    if source.universe and not target.universe:
        raise EmptyTarget("no total point map into an empty universe")
    if source.attributes and not target.attributes:
        raise EmptyTarget("no total attribute map into an empty attribute space")


def enumerate_class_mappings(source: Context, target: Context) -> Iterator[ClassMapping]:
    """Every strict ``(u, p)`` pair exactly once, u-major."""
    _guard(source, target)
    _check_targets(source, target)
    codes = engine.mapping_codes(
        len(source.universe), len(target.universe),
        len(source.attributes), len(target.attributes),
    )
    for code in codes:
        yield _decode_mapping(source, target, code)


# -- object-level law evaluation ---------------------------------------------


def _arguments_in(args: Sequence[SoftSet], ctx: Context, law: Law) -> None:
    if len(args) != law.arity:
        raise TypeError(f"{law.id} takes {law.arity} soft set argument(s), got {len(args)}")
    for arg in args:
        if arg.context != ctx:
            raise ContextMismatch(f"{law.id} arguments must live in the {law.argument_class} class")


def _disjoint(args: Sequence[SoftSet]) -> bool:
    common = set(args[0].domain)
    for arg in args[1:]:
        common &= set(arg.domain)
    return not common


def _fold(op, items):
    out = items[0]
    for item in items[1:]:
        out = op(out, item)
    return out


def _sides(law: Law, f: ClassMapping, args: Sequence[SoftSet]) -> tuple[SoftSet, SoftSet]:
    src, tgt = f.source, f.target
    img = lambda s: image(f, s, "full")  # noqa: E731
    pre = lambda s: preimage(f, s, "full")  # noqa: E731
    lid = law.id

    if lid in ("L4", "L9", "N2", "L4n", "L9n") and _disjoint(args):
        raise SideConditionUnmet(f"{lid} needs overlapping parameter sets")
    if lid in ("L5", "L10") and not is_soft_subset(args[0], args[1]):
        raise SideConditionUnmet(f"{lid} needs the first argument to be a soft subset of the second")
    if lid == "L7" and f.mode != "strict":
        raise SideConditionUnmet("L7 needs a strict (total) attribute map")

    union = lambda hs: _fold(lambda a, b: combine_pointwise(a, b, "union"), hs)  # noqa: E731
    inter = lambda hs: _fold(lambda a, b: combine_pointwise(a, b, "intersection"), hs)  # noqa: E731

    if lid == "L1":
        return img(null_soft_set(src)), null_soft_set(tgt)
    if lid == "L2":
        return img(absolute_soft_set(src)), absolute_soft_set(tgt)
    if lid == "N1":
        return absolute_soft_set(tgt), img(absolute_soft_set(src))
    if lid == "L6":
        return pre(null_soft_set(tgt)), null_soft_set(src)
    if lid == "L7":
        return pre(absolute_soft_set(tgt)), absolute_soft_set(src)
    if lid in ("L3", "L3n"):
        return img(_fold(soft_union, args)), union([img(a) for a in args])
    if lid in ("L4", "L4n"):
        return img(_fold(soft_intersection, args)), inter([img(a) for a in args])
    if lid == "N2":
        return inter([img(a) for a in args]), img(soft_intersection(*args))
    if lid == "L5":
        return img(args[0]), img(args[1])
    if lid in ("L8", "L8n"):
        return pre(_fold(soft_union, args)), union([pre(a) for a in args])
    if lid in ("L9", "L9n"):
        return pre(_fold(soft_intersection, args)), inter([pre(a) for a in args])
    if lid == "L10":
        return pre(args[0]), pre(args[1])
    raise KeyError(lid)


def check_law(law: Law | str, mapping: ClassMapping, arguments: Iterable[SoftSet] = ()) -> Witness:
    """Evaluate one law on one instance and report whether it holds."""
    law = get_law(law)
    args = tuple(arguments)
    ctx = mapping.source if law.argument_class == "source" else mapping.target
    _arguments_in(args, ctx, law)
    lhs, rhs = _sides(law, mapping, args)
    if law.relation == "equality":
        ok = soft_equal(lhs, rhs)
    else:
        ok = is_soft_subset(lhs, rhs)
    return Witness(law.id, mapping, args, lhs, rhs, "holds" if ok else "violated")


# -- exhaustive runs -----------------------------------------------------------


def _mapping_code(f: ClassMapping):
    u = tuple(f.target.universe.index(y) for _, y in f.u)
    p_table = f.p_table
    p = tuple(
        f.target.attributes.index(p_table[e]) if e in p_table else -1
        for e in f.source.attributes
    )
    return u, p


def _materialize(law: Law, f: ClassMapping, tables, idx) -> Witness:
    table, ctx = tables[law.argument_class]
    args = tuple(_decode_soft_set(ctx, table.codes[int(i)]) for i in idx)
    witness = check_law(law, f, args)
    if not witness.violated:
        raise AssertionError(f"engine and object evaluation disagree on {law.id}")
    return witness


def _table(ctx: Context, enumerate_all: bool) -> engine.CodeTable:
    nx, ne = len(ctx.universe), len(ctx.attributes)
    if enumerate_all:
        return engine.CodeTable.build(nx, ne)
    # nullary laws only read the sizes
    return engine.CodeTable(nx, ne, [], np.zeros(0, np.int64), np.zeros((0, ne), np.int64))


def run_exhaustive(
    source: Context,
    target: Context,
    laws: Iterable[Law | str] = THEOREM_LAWS,
    *,
    mappings: Iterable[ClassMapping] | None = None,
    limit: int | None = None,
    family_samples: int = 64,
    seed: int = 0,
    stop_at_first: bool = False,
) -> list[LawReport]:
    """Check every law on every admissible instance over the two classes.

    Instances are all enumerated strict mappings (or the given ``mappings``)
    times all argument tuples; pairs failing a side condition are skipped.
    Family laws are checked on ``family_samples`` seeded random triples per
    mapping.  At most ``limit`` witnesses are kept per law; the count of
    violations is exact unless ``stop_at_first`` ends the run after the
    first mapping that yields a violation.
    """
    laws = [get_law(law) for law in laws]
    _guard(source, target)
    if not laws:
        return []
    if mappings is None:
        _check_targets(source, target)
        codes = list(engine.mapping_codes(
            len(source.universe), len(target.universe),
            len(source.attributes), len(target.attributes),
        ))
        maps = None
    else:
        maps = list(mappings)
        for f in maps:
            if f.source != source or f.target != target:
                raise ContextMismatch("mapping does not connect the given classes")
        codes = [_mapping_code(f) for f in maps]

    needs_src = any(law.argument_class == "source" and law.arity for law in laws)
    needs_tgt = any(law.argument_class == "target" and law.arity for law in laws)
    src_table = _table(source, needs_src)
    tgt_table = _table(target, needs_tgt)
    tables = {"source": (src_table, source), "target": (tgt_table, target)}

    rng = np.random.default_rng(seed)
    reports = {law.id: LawReport(law.id) for law in laws}
    n_y = len(target.universe)
    for k, (u, p) in enumerate(codes):
        f = None
        strict = maps is None or maps[k].mode == "strict"
        for law in laws:
            if law.is_family:
                table = tables[law.argument_class][0]
                if len(table) == 0:
                    continue
                triples = rng.integers(0, len(table), size=(family_samples, 3))
                count, bad = engine.evaluate_family(law.id, triples, src_table, tgt_table, u, p, n_y)
            else:
                count, bad = engine.evaluate(law.id, src_table, tgt_table, u, p, strict, n_y)
            report = reports[law.id]
            report.instances += count
            report.violation_count += len(bad)
            for idx in bad:
                if limit is not None and len(report.violations) >= limit:
                    break
                if f is None:
                    f = maps[k] if maps is not None else _decode_mapping(source, target, (u, p))
                report.violations.append(_materialize(law, f, tables, idx))
        if stop_at_first and any(r.violation_count for r in reports.values()):
            break
    return [reports[law.id] for law in laws]


@dataclass(frozen=True)
class Bounds:
    """Inclusive upper bounds for a sweep over context sizes."""

    x: int = 2
    y: int = 2
    e: int = 2
    ep: int = 2
    minimum: int = 0

    def shapes(self) -> list[tuple[int, int, int, int]]:
        """All admissible size tuples, smallest total first."""
        ranges = [range(self.minimum, b + 1) for b in (self.x, self.y, self.e, self.ep)]
        out = [
            s for s in itertools.product(*ranges)
            if not (s[0] and not s[1]) and not (s[2] and not s[3])
        ]
        return sorted(out, key=lambda s: (sum(s), s))


def sized_contexts(nx: int, ny: int, ne: int, nep: int) -> tuple[Context, Context]:
    return (
        Context([f"x{i + 1}" for i in range(nx)], [f"e{i + 1}" for i in range(ne)]),
        Context([f"y{i + 1}" for i in range(ny)], [f"e{i + 1}p" for i in range(nep)]),
    )


def run_bounded(
    bounds: Bounds,
    laws: Iterable[Law | str] = THEOREM_LAWS,
    *,
    limit: int | None = None,
    family_samples: int = 64,
    seed: int = 0,
) -> list[LawReport]:
    """:func:`run_exhaustive` over every context pair within ``bounds``, merged per law."""
    laws = [get_law(law) for law in laws]
    for side in (bounds.x, bounds.y, bounds.e, bounds.ep):
        if side > MAX_SIDE:
            raise BoundsExceeded(f"bound {side} exceeds {MAX_SIDE}")
    merged = {law.id: LawReport(law.id) for law in laws}
    for shape in bounds.shapes():
        source, target = sized_contexts(*shape)
        log.debug("checking shape %s", shape)
        for rep in run_exhaustive(source, target, laws, limit=limit,
                                  family_samples=family_samples, seed=seed):
            out = merged[rep.law]
            out.instances += rep.instances
            out.violation_count += rep.violation_count
            room = len(rep.violations) if limit is None else max(0, limit - len(out.violations))
            out.violations.extend(rep.violations[:room])
    return [merged[law.id] for law in laws]


def search_counterexample(
    target_law: Law | str,
    source: Context | None = None,
    target: Context | None = None,
    *,
    mapping: ClassMapping | None = None,
    arguments: Sequence[SoftSet] | None = None,
    bounds: Bounds | None = None,
) -> Witness | None:
    """First instance, in enumeration order, that violates ``target_law``.

    Either search the classes ``source`` -> ``target`` (optionally with a
    fixed ``mapping`` and fixed ``arguments``), or sweep every shape within
    ``bounds``, smallest first.
    """
    law = get_law(target_law)
    if bounds is not None:
        for shape in bounds.shapes():
            src, tgt = sized_contexts(*shape)
            found = search_counterexample(law, src, tgt)
            if found is not None:
                return found
        return None
    if mapping is not None:
        source, target = mapping.source, mapping.target
    if source is None or target is None:
        raise TypeError("give source and target classes, a mapping, or bounds")
    if arguments is not None:
        if mapping is None:
            candidates = enumerate_class_mappings(source, target)
        else:
            candidates = [mapping]
        for f in candidates:
            try:
                witness = check_law(law, f, arguments)
            except SideConditionUnmet:
                return None
            if witness.violated:
                return witness
        return None
    maps = None if mapping is None else [mapping]
    if maps is None:
        _guard(source, target)
        try:
            _check_targets(source, target)
        except EmptyTarget:
            return None
    (report,) = run_exhaustive(source, target, [law], mappings=maps, limit=1, stop_at_first=True)
    return report.violations[0] if report.violations else None
