"""Finite soft sets over a soft class (X, E) and their algebra.

A soft set is a parameter set ``A`` drawn from the attributes ``E`` together
with an assignment of a subset of the universe ``X`` to every parameter in
``A``.  A parameter mapped to the empty set is still part of the domain;
that is different from a parameter outside ``A``.

Names are kept in lexicographic order everywhere so that equality, hashing
and serialization never depend on insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    ContextMismatch,
    DuplicateName,
    EmptyParameterIntersection,
    NotASuperset,
    UnknownAttribute,
    UnknownElement,
)


def _sorted_unique(names: Iterable[str], what: str) -> tuple[str, ...]:
    names = list(names)
    for name in names:
        if not isinstance(name, str):
            raise TypeError(f"{what} names must be strings, got {name!r}")
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateName(f"duplicate {what} name(s): {', '.join(dupes)}")
    return tuple(sorted(names))


@dataclass(frozen=True)
class Context:
    """A soft class: a finite universe plus a finite attribute space."""

    universe: tuple[str, ...]
    attributes: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "universe", _sorted_unique(self.universe, "element"))
        object.__setattr__(self, "attributes", _sorted_unique(self.attributes, "attribute"))

    def check_attributes(self, names: Iterable[str]) -> frozenset[str]:
        names = frozenset(names)
        unknown = names.difference(self.attributes)
        if unknown:
            raise UnknownAttribute(f"attribute(s) not in context: {', '.join(sorted(unknown))}")
        return names

    def check_elements(self, names: Iterable[str]) -> frozenset[str]:
        names = frozenset(names)
        unknown = names.difference(self.universe)
        if unknown:
            raise UnknownElement(f"element(s) not in universe: {', '.join(sorted(unknown))}")
        return names


@dataclass(frozen=True)
class SoftSet:
    """An immutable soft set ``(F, A)``.

    ``items`` holds ``(attribute, value)`` pairs sorted by attribute; use
    :func:`validate_soft_set` to build one from a plain mapping.
    """

    context: Context
    items: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self):
        items = tuple(sorted((a, frozenset(v)) for a, v in self.items))
        attrs = [a for a, _ in items]
        if len(set(attrs)) != len(attrs):
            raise DuplicateName("soft set lists an attribute twice")
        self.context.check_attributes(attrs)
        for _, value in items:
            self.context.check_elements(value)
        object.__setattr__(self, "items", items)

    @property
    def domain(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.items)

    def __getitem__(self, attribute: str) -> frozenset[str]:
        for a, value in self.items:
            if a == attribute:
                return value
        raise KeyError(attribute)

    def __contains__(self, attribute: str) -> bool:
        return attribute in self.domain

    def __iter__(self) -> Iterator[str]:
        return iter(self.domain)

    def __len__(self) -> int:
        return len(self.items)

    def get(self, attribute: str, default: frozenset[str] = frozenset()) -> frozenset[str]:
        for a, value in self.items:
            if a == attribute:
                return value
        return default

    def as_dict(self) -> dict[str, frozenset[str]]:
        return dict(self.items)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{a}={{{','.join(sorted(v))}}}" for a, v in self.items
        )
        return f"SoftSet({{{body}}})"


def validate_soft_set(context: Context, assignments: Mapping[str, Iterable[str]]) -> SoftSet:
    """Build a soft set whose domain is exactly the keys of ``assignments``."""
    context.check_attributes(assignments)
    items = []
    for attribute, value in assignments.items():
        if isinstance(value, str):
            raise TypeError(f"value of {attribute!r} must be a collection of element names")
        items.append((attribute, context.check_elements(value)))
    return SoftSet(context, tuple(items))


def null_soft_set(context: Context, attributes: Iterable[str] | None = None) -> SoftSet:
    """Every parameter maps to the empty set; all of ``E`` when ``attributes`` is None."""
    attrs = context.attributes if attributes is None else context.check_attributes(attributes)
    return SoftSet(context, tuple((a, frozenset()) for a in attrs))


def absolute_soft_set(context: Context, attributes: Iterable[str] | None = None) -> SoftSet:
    """Every parameter maps to the whole universe; all of ``E`` when ``attributes`` is None."""
    attrs = context.attributes if attributes is None else context.check_attributes(attributes)
    whole = frozenset(context.universe)
    return SoftSet(context, tuple((a, whole) for a in attrs))


def _same_context(f: SoftSet, g: SoftSet) -> Context:
    if f.context != g.context:
        raise ContextMismatch("soft sets live in different soft classes")
    return f.context


def is_soft_subset(f: SoftSet, g: SoftSet) -> bool:
    _same_context(f, g)
    gvals = g.as_dict()
    for attribute, value in f.items:
        if attribute not in gvals or not value <= gvals[attribute]:
            return False
    return True


def soft_equal(f: SoftSet, g: SoftSet) -> bool:
    return is_soft_subset(f, g) and is_soft_subset(g, f)


def soft_union(f: SoftSet, g: SoftSet) -> SoftSet:
    context = _same_context(f, g)
    merged = f.as_dict()
    for attribute, value in g.items:
        merged[attribute] = merged.get(attribute, frozenset()) | value
    return SoftSet(context, tuple(merged.items()))


def soft_intersection(f: SoftSet, g: SoftSet) -> SoftSet:
    """Bi-intersection on the shared parameters; the shared part must be nonempty."""
    context = _same_context(f, g)
    gvals = g.as_dict()
    items = tuple((a, v & gvals[a]) for a, v in f.items if a in gvals)
    if not items:
        raise EmptyParameterIntersection(
            f"parameter sets {{{','.join(f.domain)}}} and {{{','.join(g.domain)}}} are disjoint"
        )
    return SoftSet(context, items)


def extend_domain(f: SoftSet, attributes: Iterable[str] | None = None) -> SoftSet:
    """Pad ``f`` with empty values up to ``attributes`` (all of ``E`` by default)."""
    context = f.context
    target = frozenset(context.attributes) if attributes is None else context.check_attributes(attributes)
    missing = set(f.domain) - target
    if missing:
        raise NotASuperset(f"target domain omits {', '.join(sorted(missing))}")
    values = f.as_dict()
    return SoftSet(context, tuple((a, values.get(a, frozenset())) for a in target))
