"""Soft mappings ``(f, psi)`` between contexts and their topological properties."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import ContextMismatch, UnknownElement
from .softcore import Context, SoftPoint, SoftSet, iter_bits
from .topology import SoftTopSpace


@dataclass(frozen=True)
class SoftMapping:
    """A point map ``source.universe -> target.universe`` with a parameter map.

    Both maps are stored as tuples of target indices in source order.
    """

    source: Context
    target: Context
    point_map: tuple
    param_map: tuple
    _inverse_masks: tuple = field(init=False, repr=False, compare=False, hash=False)
    _cache: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pm, qm = tuple(self.point_map), tuple(self.param_map)
        if len(pm) != self.source.n or any(not 0 <= t < self.target.n for t in pm):
            raise ValueError("point map must send every source element into the target")
        if len(qm) != self.source.m or any(not 0 <= q < self.target.m for q in qm):
            raise ValueError("parameter map must send every source parameter into the target")
        inv = [0] * self.target.n
        for i, t in enumerate(pm):
            inv[t] |= 1 << i
        object.__setattr__(self, "point_map", pm)
        object.__setattr__(self, "param_map", qm)
        object.__setattr__(self, "_inverse_masks", tuple(inv))
        object.__setattr__(self, "_cache", {})

    @classmethod
    def from_dicts(cls, source: Context, target: Context, point_map: Mapping,
                   param_map: Mapping | None = None) -> SoftMapping:
        """Build from ``element -> element`` and ``param -> param`` dicts.

        A missing ``param_map`` means the identity, which needs equal parameter lists.
        """
        missing = [x for x in source.universe if x not in point_map]
        if missing:
            raise UnknownElement(missing[0])
        pm = [target.elem_index(point_map[x]) for x in source.universe]
        if param_map is None:
            if source.params != target.params:
                raise ContextMismatch("identity parameter map needs equal parameter sets")
            qm = list(range(source.m))
        else:
            qm = [target.param_index(param_map[e]) for e in source.params]
        return cls(source, target, tuple(pm), tuple(qm))

    @classmethod
    def from_function(cls, source: Context, target: Context, f: Callable) -> SoftMapping:
        """Point map given by a Python callable, identity on parameters."""
        return cls.from_dicts(source, target, {x: f(x) for x in source.universe})

    def __call__(self, x):
        return self.target.universe[self.point_map[self.source.elem_index(x)]]

    def apply_point(self, p: SoftPoint) -> SoftPoint:
        j = self.source.param_index(p.param)
        return SoftPoint(self(p.element), self.target.params[self.param_map[j]])

    @property
    def identity_params(self) -> bool:
        return self.source.params == self.target.params and self.param_map == tuple(
            range(self.source.m))

    @property
    def is_bijective(self) -> bool:
        return (self.source.n == self.target.n and len(set(self.point_map)) == self.target.n
                and self.source.m == self.target.m
                and len(set(self.param_map)) == self.target.m)

    def as_dict(self) -> dict:
        return {x: self(x) for x in self.source.universe}

    # -- set transport ------------------------------------------------------
    def _preimage_slice(self, mask: int) -> int:
        hit = self._cache.get(mask)
        if hit is None:
            hit = 0
            inv = self._inverse_masks
            for t in iter_bits(mask):
                hit |= inv[t]
            self._cache[mask] = hit
        return hit

    def preimage_bits(self, bits: int) -> int:
        src, tgt = self.source, self.target
        out = 0
        for j, q in enumerate(self.param_map):
            out |= self._preimage_slice(tgt.slice_bits(bits, q)) << (j * src.n)
        return out

    def image_bits(self, bits: int) -> int:
        src, tgt = self.source, self.target
        pm = self.point_map
        out = 0
        for j, q in enumerate(self.param_map):
            img = 0
            for i in iter_bits(src.slice_bits(bits, j)):
                img |= 1 << pm[i]
            out |= img << (q * tgt.n)
        return out

    def preimage(self, G: SoftSet) -> SoftSet:
        if G.context != self.target:
            raise ContextMismatch("soft set is not over the mapping's target")
        return SoftSet(self.source, self.preimage_bits(G.bits))

    def image(self, F: SoftSet) -> SoftSet:
        """Slice at ``e'`` is the union of ``f(F(e))`` over parameters ``e`` with ``psi(e) = e'``."""
        if F.context != self.source:
            raise ContextMismatch("soft set is not over the mapping's source")
        return SoftSet(self.target, self.image_bits(F.bits))


def image(m: SoftMapping, F: SoftSet) -> SoftSet:
    return m.image(F)


def preimage(m: SoftMapping, G: SoftSet) -> SoftSet:
    return m.preimage(G)


@dataclass(frozen=True)
class MapVerdict:
    holds: bool
    witness: SoftSet | None = None

    def __bool__(self):
        return self.holds


def _check_spaces(m: SoftMapping, src: SoftTopSpace, tgt: SoftTopSpace) -> None:
    if m.source != src.context or m.target != tgt.context:
        raise ContextMismatch("mapping does not run between these spaces")


def is_continuous(m: SoftMapping, src: SoftTopSpace, tgt: SoftTopSpace) -> MapVerdict:
    """Preimage of every target open is open.

    Preimage commutes with unions and intersections, so the target subbase
    is enough; the witness is the first subbase member whose preimage fails.
    """
    _check_spaces(m, src, tgt)
    for G in sorted(tgt.subbase):
        if not src.is_open_bits(m.preimage_bits(G)):
            return MapVerdict(False, SoftSet(tgt.context, G))
    return MapVerdict(True)


def is_continuous_at(m: SoftMapping, src: SoftTopSpace, tgt: SoftTopSpace, p: SoftPoint) -> bool:
    """Every open neighborhood of ``m(p)`` contains the image of some open around ``p``.

    Equivalently, the smallest open around ``p`` maps into the smallest open
    around ``m(p)``.
    """
    _check_spaces(m, src, tgt)
    q = m.apply_point(p)
    kp = _bit_index(src.context, p)
    kq = _bit_index(tgt.context, q)
    return m.image_bits(src.minimal[kp]) & ~tgt.minimal[kq] == 0


def _bit_index(ctx: Context, p: SoftPoint) -> int:
    return ctx.param_index(p.param) * ctx.n + ctx.elem_index(p.element)


def is_open_map(m: SoftMapping, src: SoftTopSpace, tgt: SoftTopSpace) -> MapVerdict:
    """Image of every source open is open.

    Opens are unions of smallest point neighborhoods and images commute with
    unions, so those neighborhoods are enough.
    """
    _check_spaces(m, src, tgt)
    for U in sorted(set(src.minimal)):
        if not tgt.is_open_bits(m.image_bits(U)):
            return MapVerdict(False, SoftSet(src.context, U))
    return MapVerdict(True)


def inverse(m: SoftMapping) -> SoftMapping:
    if not m.is_bijective:
        raise ValueError("mapping is not bijective")
    pm = [0] * m.target.n
    for i, t in enumerate(m.point_map):
        pm[t] = i
    qm = [0] * m.target.m
    for j, q in enumerate(m.param_map):
        qm[q] = j
    return SoftMapping(m.target, m.source, tuple(pm), tuple(qm))


def is_homeomorphism(m: SoftMapping, src: SoftTopSpace, tgt: SoftTopSpace) -> bool:
    _check_spaces(m, src, tgt)
    if not m.is_bijective:
        return False
    return bool(is_continuous(m, src, tgt)) and bool(is_continuous(inverse(m), tgt, src))


def compose(m2: SoftMapping, m1: SoftMapping) -> SoftMapping:
    """``m2 after m1``."""
    if m1.target != m2.source:
        raise ContextMismatch("mappings are not composable")
    pm = tuple(m2.point_map[t] for t in m1.point_map)
    qm = tuple(m2.param_map[q] for q in m1.param_map)
    return SoftMapping(m1.source, m2.target, pm, qm)


def identity(context: Context) -> SoftMapping:
    return SoftMapping(context, context, tuple(range(context.n)), tuple(range(context.m)))


def inclusion(sub: Context, context: Context) -> SoftMapping:
    if sub.params != context.params:
        raise ContextMismatch("inclusion needs a common parameter set")
    return SoftMapping(sub, context, tuple(context.elem_index(x) for x in sub.universe),
                       tuple(range(context.m)))


def projection(product: Context, factors: list[Context], s: int) -> SoftMapping:
    """``(p_s, 1_E)`` from a tuple-product universe onto factor ``s``."""
    factor = factors[s]
    if any(f.params != product.params for f in factors):
        raise ContextMismatch("projection needs a common parameter set")
    pm = tuple(factor.elem_index(t[s]) for t in product.universe)
    return SoftMapping(product, factor, pm, tuple(range(product.m)))


def constant_map(source: Context, target: Context, y) -> SoftMapping:
    return SoftMapping(source, target, (target.elem_index(y),) * source.n, tuple(range(source.m)))
