"""Mappings between soft classes and the soft images they induce.

A class mapping ``f = (u, p)`` pairs a point map ``u: X -> Y`` with an
attribute map ``p: E -> E'``.  ``u`` is always total.  ``p`` is total in
``strict`` mode; ``partial`` mode leaves attributes outside its table
unmapped, which is how knowledge tables with gaps are represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

from .errors import ContextMismatch, PartialAttributeMap, PartialPointMap, SchemaError
from .softset import Context, SoftSet, extend_domain

Mode = Literal["strict", "partial"]
ResultMode = Literal["raw", "full"]


@dataclass(frozen=True)
class ClassMapping:
    source: Context
    target: Context
    u: tuple[tuple[str, str], ...]
    p: tuple[tuple[str, str], ...]
    mode: Mode = "strict"

    @property
    def u_table(self) -> dict[str, str]:
        return dict(self.u)

    @property
    def p_table(self) -> dict[str, str]:
        return dict(self.p)

    def push(self, elements: Iterable[str]) -> frozenset[str]:
        """``u(S)``: the forward image of a set of points."""
        table = self.u_table
        return frozenset(table[x] for x in elements)

    def pull(self, elements: Iterable[str]) -> frozenset[str]:
        """``u^-1(S)``: every point whose image lies in ``S``."""
        wanted = frozenset(elements)
        return frozenset(x for x, y in self.u if y in wanted)

    def attribute_fiber(self, beta: str) -> frozenset[str]:
        """``p^-1(beta)``."""
        return frozenset(a for a, b in self.p if b == beta)


def validate_mapping(
    source: Context,
    target: Context,
    u_table: Mapping[str, str],
    p_table: Mapping[str, str],
    mode: Mode = "strict",
) -> ClassMapping:
    if mode not in ("strict", "partial"):
        raise SchemaError(f"mode must be 'strict' or 'partial', got {mode!r}")
    source.check_elements(u_table.keys())
    target.check_elements(u_table.values())
    source.check_attributes(p_table.keys())
    target.check_attributes(p_table.values())
    missing = [x for x in source.universe if x not in u_table]
    if missing:
        raise PartialPointMap(f"u is undefined on {', '.join(missing)}")
    if mode == "strict":
        unmapped = [e for e in source.attributes if e not in p_table]
        if unmapped:
            raise PartialAttributeMap(
                f"p is undefined on {', '.join(unmapped)} (strict mode)", unmapped
            )
    return ClassMapping(
        source,
        target,
        tuple(sorted(u_table.items())),
        tuple(sorted(p_table.items())),
        mode,
    )


def _check_result_mode(result: str) -> None:
    if result not in ("raw", "full"):
        raise ValueError(f"result must be 'raw' or 'full', got {result!r}")


def image(f: ClassMapping, soft: SoftSet, result: ResultMode = "raw") -> SoftSet:
    """Soft image of ``soft`` under ``f``.

    ``raw`` keeps the domain ``p(A)``; ``full`` pads it to all of ``E'``.
    """
    _check_result_mode(result)
    if soft.context != f.source:
        raise ContextMismatch("soft set is not in the source class of the mapping")
    p = f.p_table
    pooled: dict[str, set[str]] = {}
    for alpha, value in soft.items:
        if alpha in p:
            pooled.setdefault(p[alpha], set()).update(value)
    raw = SoftSet(f.target, tuple((beta, f.push(xs)) for beta, xs in pooled.items()))
    return raw if result == "raw" else extend_domain(raw)


def preimage(f: ClassMapping, soft: SoftSet, result: ResultMode = "raw") -> SoftSet:
    """Soft inverse image of ``soft`` under ``f``.

    ``raw`` keeps the domain ``p^-1(C)``; ``full`` pads it to all of ``E``.
    """
    _check_result_mode(result)
    if soft.context != f.target:
        raise ContextMismatch("soft set is not in the target class of the mapping")
    values = soft.as_dict()
    items = tuple(
        (alpha, f.pull(values[beta])) for alpha, beta in f.p if beta in values
    )
    raw = SoftSet(f.source, items)
    return raw if result == "raw" else extend_domain(raw)


def combine_pointwise(h1: SoftSet, h2: SoftSet, op: Literal["union", "intersection"]) -> SoftSet:
    """Pointwise union or intersection over the whole attribute space.

    Attributes outside a soft set's domain count as empty.
    """
    if h1.context != h2.context:
        raise ContextMismatch("soft sets live in different soft classes")
    if op == "union":
        combine = frozenset.union
    elif op == "intersection":
        combine = frozenset.intersection
    else:
        raise ValueError(f"op must be 'union' or 'intersection', got {op!r}")
    context = h1.context
    return SoftSet(
        context,
        tuple((a, combine(h1.get(a), h2.get(a))) for a in context.attributes),
    )
