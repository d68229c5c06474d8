"""Vectorized bitmask evaluation of the laws over enumerated instances.

Soft sets are encoded by index into the enumeration order: a domain bitmask
over the attributes and one value bitmask over the universe per attribute
(zero outside the domain).  Padded (full-mode) images and inverse images
only depend on those value masks, so every law reduces to integer array
arithmetic.  The object-level path in :mod:`softclass.oracle` re-checks
every violation this module reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

PAIR_CHUNK = 1 << 20


def soft_set_codes(n_elems: int, n_attrs: int):
    """Yield ``(domain, masks)`` in canonical order.

    Domains go by increasing size, then lexicographically by attribute
    index; values run through ``product`` of subset bitmasks with the first
    domain attribute varying slowest.
    """
    for k in range(n_attrs + 1):
        for dom in combinations(range(n_attrs), k):
            for masks in product(range(1 << n_elems), repeat=k):
                yield dom, masks


def mapping_codes(n_x: int, n_y: int, n_e: int, n_ep: int):
    """Yield every total ``(u, p)`` as index tuples, u-major."""
    for u in product(range(n_y), repeat=n_x):
        for p in product(range(n_ep), repeat=n_e):
            yield u, p


@dataclass
class CodeTable:
    """Array form of every soft set over an ``n_elems`` x ``n_attrs`` class."""

    n_elems: int
    n_attrs: int
    codes: list = field(repr=False)
    dom: np.ndarray = field(repr=False)
    vals: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, n_elems: int, n_attrs: int) -> "CodeTable":
        codes = list(soft_set_codes(n_elems, n_attrs))
        dom = np.zeros(len(codes), dtype=np.int64)
        vals = np.zeros((len(codes), n_attrs), dtype=np.int64)
        for i, (d, masks) in enumerate(codes):
            for a, m in zip(d, masks):
                dom[i] |= 1 << a
                vals[i, a] = m
        return cls(n_elems, n_attrs, codes, dom, vals)

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_elems) - 1


def push_table(u, n_x: int) -> np.ndarray:
    """``push[m]`` is the bitmask of ``u(S)`` for the subset ``S`` encoded by ``m``."""
    masks = np.arange(1 << n_x, dtype=np.int64)
    out = np.zeros_like(masks)
    for i, y in enumerate(u):
        out |= np.where((masks >> i) & 1, np.int64(1) << y, 0)
    return out


def pull_table(u, n_y: int) -> np.ndarray:
    """``pull[m]`` is the bitmask of ``u^-1(S)``."""
    masks = np.arange(1 << n_y, dtype=np.int64)
    out = np.zeros_like(masks)
    for i, y in enumerate(u):
        out |= np.where((masks >> y) & 1, np.int64(1) << i, 0)
    return out


def image_vals(vals: np.ndarray, p, push: np.ndarray, n_ep: int) -> np.ndarray:
    """Padded image values for a stack of value arrays shaped ``(..., n_e)``.

    ``p[a] < 0`` marks an unmapped attribute.
    """
    out = np.zeros(vals.shape[:-1] + (n_ep,), dtype=np.int64)
    for beta in range(n_ep):
        fiber = [a for a, b in enumerate(p) if b == beta]
        if fiber:
            pooled = np.bitwise_or.reduce(vals[..., fiber], axis=-1)
            out[..., beta] = push[pooled]
    return out


def preimage_vals(tvals: np.ndarray, p, pull: np.ndarray) -> np.ndarray:
    out = np.zeros(tvals.shape[:-1] + (len(p),), dtype=np.int64)
    for alpha, beta in enumerate(p):
        if beta >= 0:
            out[..., alpha] = pull[tvals[..., beta]]
    return out


def subset_all(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise ``a <= b`` over the trailing axis."""
    return ~np.any(a & ~b, axis=-1)


def _row_chunks(n: int):
    step = max(1, PAIR_CHUNK // max(n, 1))
    for start in range(0, n, step):
        yield start, min(n, start + step)


@dataclass
class PairChunk:
    """Union index, intersection index (-1 if the domains are disjoint) and
    soft-subset flags for rows ``lo:hi`` against every soft set."""

    lo: int
    hi: int
    union: np.ndarray
    inter: np.ndarray
    subset: np.ndarray


def _lookup(table: CodeTable) -> np.ndarray:
    index = np.full(1 << (table.n_attrs * (table.n_elems + 1)), -1, dtype=np.int64)
    index[_keys(table, table.dom, table.vals)] = np.arange(len(table))
    return index


def _keys(table: CodeTable, dom: np.ndarray, vals: np.ndarray) -> np.ndarray:
    key = dom.copy()
    for a in range(table.n_attrs):
        key |= vals[..., a] << (table.n_attrs + a * table.n_elems)
    return key


def _build_chunk(table: CodeTable, index: np.ndarray, lo: int, hi: int) -> PairChunk:
    di, dj = table.dom[lo:hi, None], table.dom[None, :]
    vi, vj = table.vals[lo:hi, None, :], table.vals[None, :, :]
    union = index[_keys(table, di | dj, vi | vj)]
    common = di & dj
    inter = np.where(common != 0, index[_keys(table, common, vi & vj)], -1)
    subset = ((di & ~dj) == 0) & subset_all(vi, vj)
    return PairChunk(lo, hi, union, inter, subset)


def pair_chunks(table: CodeTable):
    """Pair tables for ``table``, cached when they fit in one chunk."""
    cached = getattr(table, "_pairs", None)
    if cached is not None:
        yield from cached
        return
    n = len(table)
    index = _lookup(table)
    chunks = (_build_chunk(table, index, lo, hi) for lo, hi in _row_chunks(n))
    if n * n <= PAIR_CHUNK:
        cached = list(chunks)
        table._pairs = cached
        yield from cached
    else:
        yield from chunks


def _pairs(table: CodeTable, vals: np.ndarray, op: str, relation: str):
    """Evaluate a binary law given the transformed value of every soft set.

    ``op`` is ``union``, ``intersection`` (f(F n G) against f(F) n f(G)),
    ``co-intersection`` (the reverse) or ``monotone``.  Returns
    ``(instances, violating (i, j) array)`` in row-major order.
    """
    instances = 0
    bad = []
    for chunk in pair_chunks(table):
        a = vals[chunk.lo:chunk.hi, None, :]
        b = vals[None, :, :]
        ok = None
        if op == "union":
            lhs, rhs = vals[chunk.union], a | b
        elif op in ("intersection", "co-intersection"):
            ok = chunk.inter >= 0
            lhs, rhs = vals[np.where(ok, chunk.inter, 0)], a & b
            if op == "co-intersection":
                lhs, rhs = rhs, lhs
        elif op == "monotone":
            ok = chunk.subset
            lhs, rhs = a, b
        else:
            raise ValueError(op)
        if relation == "equality":
            holds = np.all(lhs == rhs, axis=-1)
        else:
            holds = subset_all(lhs, rhs)
        if ok is None:
            instances += holds.size
            ii, jj = np.nonzero(~holds)
        else:
            instances += int(ok.sum())
            ii, jj = np.nonzero(ok & ~holds)
        if len(ii):
            bad.append(np.stack([ii + chunk.lo, jj], axis=1))
    if bad:
        return instances, np.concatenate(bad)
    return instances, np.zeros((0, 2), dtype=np.int64)


def evaluate(law_id: str, src: CodeTable, tgt: CodeTable, u, p, strict: bool, n_y: int):
    """Evaluate one law for one mapping.

    Returns ``(instances, violations)`` where violations is an integer array
    of argument-index tuples (shape ``(k, arity)``).
    """
    n_x, n_ep = src.n_elems, tgt.n_attrs
    push = push_table(u, n_x)
    pull = pull_table(u, n_y)
    img = lambda v: image_vals(v, p, push, n_ep)  # noqa: E731
    pre = lambda v: preimage_vals(v, p, pull)  # noqa: E731
    none = np.zeros((1, 0), dtype=np.int64)
    empty = np.zeros((0, 0), dtype=np.int64)

    def nullary(holds):
        return 1, (empty if holds else none)

    full_src = np.full((src.n_attrs,), src.full_mask, dtype=np.int64)
    full_tgt = np.full((tgt.n_attrs,), tgt.full_mask, dtype=np.int64)

    if law_id == "L1":
        return nullary(not img(np.zeros_like(full_src)).any())
    if law_id == "L2":
        return nullary(bool(subset_all(img(full_src), full_tgt)))
    if law_id == "N1":
        return nullary(bool(subset_all(full_tgt, img(full_src))))
    if law_id == "L6":
        return nullary(not pre(np.zeros_like(full_tgt)).any())
    if law_id == "L7":
        if not strict:
            return 0, empty
        return nullary(bool(np.all(pre(full_tgt) == full_src)))

    binary = {
        "L3": ("union", "equality"),
        "L4": ("intersection", "inclusion"),
        "N2": ("co-intersection", "inclusion"),
        "L5": ("monotone", "inclusion"),
        "L8": ("union", "equality"),
        "L9": ("intersection", "equality"),
        "L10": ("monotone", "inclusion"),
    }
    if law_id not in binary:
        raise KeyError(law_id)
    op, relation = binary[law_id]
    if law_id in ("L3", "L4", "N2", "L5"):
        return _pairs(src, img(src.vals), op, relation)
    return _pairs(tgt, pre(tgt.vals), op, relation)


def evaluate_family(law_id: str, triples: np.ndarray, src: CodeTable, tgt: CodeTable,
                    u, p, n_y: int):
    """Three-argument family laws on the given index triples."""
    push = push_table(u, src.n_elems)
    pull = pull_table(u, n_y)
    table = src if law_id in ("L3n", "L4n") else tgt
    v = table.vals[triples]  # (k, 3, n_attrs)
    d = table.dom[triples]
    if law_id in ("L3n", "L4n"):
        fn = lambda x: image_vals(x, p, push, tgt.n_attrs)  # noqa: E731
    else:
        fn = lambda x: preimage_vals(x, p, pull)  # noqa: E731
    parts = fn(v)
    if law_id in ("L3n", "L8n"):
        ok = np.ones(len(triples), dtype=bool)
        lhs = fn(v[:, 0] | v[:, 1] | v[:, 2])
        rhs = parts[:, 0] | parts[:, 1] | parts[:, 2]
    else:
        ok = (d[:, 0] & d[:, 1] & d[:, 2]) != 0
        lhs = fn(v[:, 0] & v[:, 1] & v[:, 2])
        rhs = parts[:, 0] & parts[:, 1] & parts[:, 2]
    if law_id in ("L4n",):
        holds = subset_all(lhs, rhs)
    else:
        holds = np.all(lhs == rhs, axis=-1)
    return int(ok.sum()), triples[ok & ~holds]
