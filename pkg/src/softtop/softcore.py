"""Soft sets over a fixed (universe, parameters) context and their algebra.

A soft set assigns to every parameter a subset of the universe.  Values are
encoded as a single integer bitmask: bit ``j * n + i`` is set when universe
element ``i`` belongs to the slice at parameter ``j`` (``n`` = universe
size).  Union, intersection and complement are then plain integer ops, and
collections of soft sets (topologies, subbases) are sets of ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import (
    ContextMismatch,
    EmptySubuniverse,
    ParamMismatch,
    UnknownElement,
    UnknownParameter,
)


@dataclass(frozen=True)
class Context:
    """Ordered finite universe plus ordered finite parameter set."""

    universe: tuple
    params: tuple
    _elem_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _param_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "params", tuple(self.params))
        if not self.universe:
            raise EmptySubuniverse("universe must be non-empty")
        if not self.params:
            raise ValueError("parameter set must be non-empty")
        elem_index = {x: i for i, x in enumerate(self.universe)}
        param_index = {e: j for j, e in enumerate(self.params)}
        if len(elem_index) != len(self.universe):
            raise ValueError("duplicate universe element")
        if len(param_index) != len(self.params):
            raise ValueError("duplicate parameter")
        object.__setattr__(self, "_elem_index", elem_index)
        object.__setattr__(self, "_param_index", param_index)

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def m(self) -> int:
        return len(self.params)

    @property
    def width(self) -> int:
        """Total number of bits, i.e. the number of soft points."""
        return self.n * self.m

    @cached_property
    def slice_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def full(self) -> int:
        return (1 << self.width) - 1

    def elem_index(self, x) -> int:
        try:
            return self._elem_index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def param_index(self, e) -> int:
        try:
            return self._param_index[e]
        except KeyError:
            raise UnknownParameter(e) from None

    def subset_mask(self, elements: Iterable) -> int:
        mask = 0
        for x in elements:
            mask |= 1 << self.elem_index(x)
        return mask

    def mask_elements(self, mask: int) -> frozenset:
        return frozenset(self.universe[i] for i in range(self.n) if mask >> i & 1)

    def slice_bits(self, bits: int, j: int) -> int:
        return (bits >> (j * self.n)) & self.slice_mask

    def from_slices(self, slices: Iterable[int]) -> int:
        bits = 0
        for j, s in enumerate(slices):
            bits |= s << (j * self.n)
        return bits

    def constant(self, mask: int) -> int:
        """Bits of the soft set whose every slice is ``mask``."""
        return self.from_slices([mask] * self.m)

    def point_bit(self, x, e) -> int:
        return 1 << (self.param_index(e) * self.n + self.elem_index(x))


@dataclass(frozen=True)
class ProductContext(Context):
    """Context over ``X1 x X2`` with parameters ``E1 x E2``."""

    factors: tuple = ()


def product_context(c1: Context, c2: Context) -> ProductContext:
    return ProductContext(
        universe=tuple(itertools.product(c1.universe, c2.universe)),
        params=tuple(itertools.product(c1.params, c2.params)),
        factors=(c1, c2),
    )


@dataclass(frozen=True, order=True)
class SoftPoint:
    """The soft point ``x_e``: slice ``{x}`` at ``e`` and empty elsewhere."""

    element: Hashable
    param: Hashable

    def as_soft_set(self, context: Context) -> SoftSet:
        return SoftSet(context, context.point_bit(self.element, self.param))

    def __str__(self):
        return f"{self.element}_{self.param}"


@dataclass(frozen=True)
class SoftSet:
    context: Context
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.context.full:
            raise ValueError("bits out of range for context")

    def slice(self, param) -> frozenset:
        j = self.context.param_index(param)
        return self.context.mask_elements(self.context.slice_bits(self.bits, j))

    def slices(self) -> dict:
        return {e: self.slice(e) for e in self.context.params}

    def _check(self, other: SoftSet) -> None:
        if not isinstance(other, SoftSet) or (
                other.context is not self.context and other.context != self.context):
            raise ContextMismatch("soft sets live in different contexts")

    def __eq__(self, other):
        if not isinstance(other, SoftSet):
            return NotImplemented
        return self.bits == other.bits and (
            self.context is other.context or self.context == other.context)

    def __hash__(self):
        return hash((self.context, self.bits))

    def __or__(self, other: SoftSet) -> SoftSet:
        self._check(other)
        return SoftSet(self.context, self.bits | other.bits)

    def __and__(self, other: SoftSet) -> SoftSet:
        self._check(other)
        return SoftSet(self.context, self.bits & other.bits)

    def __sub__(self, other: SoftSet) -> SoftSet:
        self._check(other)
        return SoftSet(self.context, self.bits & ~other.bits)

    def __invert__(self) -> SoftSet:
        return SoftSet(self.context, self.context.full & ~self.bits)

    def __le__(self, other: SoftSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: SoftSet) -> bool:
        return other <= self

    def __contains__(self, p: SoftPoint) -> bool:
        return point_membership(p, self)

    def is_null(self) -> bool:
        return self.bits == 0

    def is_absolute(self) -> bool:
        return self.bits == self.context.full

    def literal(self) -> dict:
        """Plain dict ``param -> sorted element list``, omitting empty slices."""
        out = {}
        for e in self.context.params:
            j = self.context.param_index(e)
            mask = self.context.slice_bits(self.bits, j)
            if mask:
                out[e] = [x for i, x in enumerate(self.context.universe) if mask >> i & 1]
        return out

    def __repr__(self):
        inner = ", ".join(
            f"{e}: {{{', '.join(map(str, xs))}}}" for e, xs in self.literal().items()
        )
        return f"SoftSet({{{inner}}})"


def make_soft_set(context: Context, assignments: Mapping) -> SoftSet:
    """Build a total soft set; parameters missing from ``assignments`` get the empty slice."""
    slices = [0] * context.m
    for e, elements in assignments.items():
        slices[context.param_index(e)] = context.subset_mask(elements)
    return SoftSet(context, context.from_slices(slices))


def null_set(context: Context) -> SoftSet:
    return SoftSet(context, 0)


def absolute_set(context: Context) -> SoftSet:
    return SoftSet(context, context.full)


def constant_set(context: Context, elements: Iterable) -> SoftSet:
    """The soft set whose slice is the same subset at every parameter."""
    return SoftSet(context, context.constant(context.subset_mask(elements)))


def union(F: SoftSet, G: SoftSet) -> SoftSet:
    return F | G


def intersection(F: SoftSet, G: SoftSet) -> SoftSet:
    return F & G


def difference(F: SoftSet, G: SoftSet) -> SoftSet:
    return F - G


def complement(F: SoftSet) -> SoftSet:
    return ~F


def is_subset(F: SoftSet, G: SoftSet) -> bool:
    return F <= G


def equals(F: SoftSet, G: SoftSet) -> bool:
    return F <= G and G <= F


def sub_soft_set(F: SoftSet, Y: Iterable) -> SoftSet:
    ctx = F.context
    return SoftSet(ctx, F.bits & ctx.constant(ctx.subset_mask(Y)))


def cartesian_product(F: SoftSet, G: SoftSet) -> SoftSet:
    c1, c2 = F.context, G.context
    ctx = product_context(c1, c2)
    bits = 0
    for j1 in range(c1.m):
        s1 = c1.slice_bits(F.bits, j1)
        for j2 in range(c2.m):
            s2 = c2.slice_bits(G.bits, j2)
            j = j1 * c2.m + j2
            for i1 in range(c1.n):
                if s1 >> i1 & 1:
                    bits |= s2 << (j * ctx.n + i1 * c2.n)
    return SoftSet(ctx, bits)


def diagonal_contraction(H: SoftSet) -> SoftSet:
    """Restrict a soft set over ``E x E`` parameters to the diagonal ``(e, e)``."""
    ctx = H.context
    if not isinstance(ctx, ProductContext) or len(ctx.factors) != 2:
        raise ParamMismatch("diagonal contraction needs a product context")
    c1, c2 = ctx.factors
    if c1.params != c2.params:
        raise ParamMismatch("parameter factors differ")
    out = Context(ctx.universe, c1.params)
    slices = [ctx.slice_bits(H.bits, ctx.param_index((e, e))) for e in c1.params]
    return SoftSet(out, out.from_slices(slices))


def restrict_universe(F: SoftSet, Xs: Iterable) -> SoftSet:
    """Intersect every slice with ``Xs`` and re-express over universe ``Xs``."""
    ctx = F.context
    keep = set(Xs)
    for x in keep:
        ctx.elem_index(x)
    if not keep:
        raise EmptySubuniverse("restriction to the empty universe")
    sub_universe = tuple(x for x in ctx.universe if x in keep)
    sub = Context(sub_universe, ctx.params)
    idx = [ctx.elem_index(x) for x in sub_universe]
    slices = []
    for j in range(ctx.m):
        s = ctx.slice_bits(F.bits, j)
        slices.append(sum(1 << k for k, i in enumerate(idx) if s >> i & 1))
    return SoftSet(sub, sub.from_slices(slices))


def point_membership(p: SoftPoint, F: SoftSet) -> bool:
    ctx = F.context
    return bool(F.bits & ctx.point_bit(p.element, p.param))


def soft_points(context: Context) -> list[SoftPoint]:
    """All soft points of the context, parameter-major in canonical order."""
    return [SoftPoint(x, e) for e in context.params for x in context.universe]


def soft_points_of(F: SoftSet) -> list[SoftPoint]:
    ctx = F.context
    return [p for k, p in enumerate(soft_points(ctx)) if F.bits >> k & 1]


def iter_bits(bits: int) -> Iterator[int]:
    """Indices of the set bits of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low
