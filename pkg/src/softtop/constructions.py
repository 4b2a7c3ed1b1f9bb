"""Products and sums of soft spaces over a common parameter set, and the
mapping combinators built on them."""

from __future__ import annotations

import itertools
from typing import Sequence

from . import crisp
from .errors import ContextMismatch, EnumerationTooLarge, ParamMismatch, UniverseOverlap
from .mapping import SoftMapping, compose, inclusion, is_continuous, projection
from .softcore import Context
from .topology import DEFAULT_CAP, SoftTopSpace, param_topology
from .verdict import Verdict

UNIVERSE_CAP = 4096


def common_params(spaces: Sequence[SoftTopSpace]) -> tuple:
    if not spaces:
        raise ValueError("empty family")
    params = spaces[0].context.params
    for sp in spaces[1:]:
        if sp.context.params != params:
            raise ParamMismatch("family members use different parameter sets")
    return params


class ProductSpace(SoftTopSpace):
    """Tuple-product universe with the topology generated by projection preimages."""

    def __init__(self, factors: Sequence[SoftTopSpace], cap: int = DEFAULT_CAP):
        params = common_params(factors)
        size = 1
        for f in factors:
            size *= f.context.n
        if size > UNIVERSE_CAP:
            raise EnumerationTooLarge(f"product universe of {size} elements")
        self.factors = tuple(factors)
        ctx = Context(tuple(itertools.product(*(f.context.universe for f in factors))), params)
        self.projections = tuple(
            projection(ctx, [f.context for f in factors], s) for s in range(len(factors)))
        subbase = set()
        for p, f in zip(self.projections, factors):
            subbase |= {p.preimage_bits(U) for U in f.subbase}
        super().__init__(ctx, subbase, cap=cap)

    def projection(self, s: int) -> SoftMapping:
        return self.projections[s]


def product_space(family: Sequence[SoftTopSpace], cap: int = DEFAULT_CAP) -> ProductSpace:
    """Product of a family over a common E.

    Factor subbases are pulled back rather than every factor open; pullback
    commutes with unions and intersections so the topology is the same.
    """
    return ProductSpace(family, cap=cap)


class SumSpace(SoftTopSpace):
    """Disjoint union; a soft set is open iff its restriction to each summand is."""

    def __init__(self, summands: Sequence[SoftTopSpace], cap: int = DEFAULT_CAP):
        params = common_params(summands)
        seen = set()
        for sp in summands:
            for x in sp.context.universe:
                if x in seen:
                    raise UniverseOverlap(x)
                seen.add(x)
        self.summands = tuple(summands)
        universe = tuple(x for sp in summands for x in sp.context.universe)
        ctx = Context(universe, params)
        self.inclusions = tuple(inclusion(sp.context, ctx) for sp in summands)
        subbase = set()
        for inc, sp in zip(self.inclusions, summands):
            subbase.add(inc.image_bits(sp.context.full))
            subbase |= {inc.image_bits(U) for U in sp.subbase}
        super().__init__(ctx, subbase, cap=cap)

    def inclusion(self, s: int) -> SoftMapping:
        return self.inclusions[s]

    def summand_of(self, x) -> int:
        for s, sp in enumerate(self.summands):
            if x in sp.context._elem_index:
                return s
        raise KeyError(x)


def sum_space(family: Sequence[SoftTopSpace], cap: int = DEFAULT_CAP) -> SumSpace:
    return SumSpace(family, cap=cap)


def sum_membership_opens(summed: SumSpace) -> set[int]:
    """Opens of a sum by brute-force filtering of every soft set through the
    restriction rule (small instances only)."""
    ctx = summed.context
    out = set()
    for bits in range(1 << ctx.width):
        if all(sp.is_open_bits(inc.preimage_bits(bits))
               for inc, sp in zip(summed.inclusions, summed.summands)):
            out.add(bits)
    return out


def diagonal_map(maps: Sequence[SoftMapping], target: ProductSpace) -> SoftMapping:
    """``x -> (f_s(x))_s`` into the product of the maps' targets."""
    src = maps[0].source
    if len(maps) != len(target.factors):
        raise ContextMismatch("one map per factor required")
    for m, f in zip(maps, target.factors):
        if m.source != src or m.target != f.context or not m.identity_params:
            raise ContextMismatch("maps must share a source and land in the factors")
    ctx = target.context
    pm = tuple(ctx.elem_index(tuple(m(x) for m in maps)) for x in src.universe)
    return SoftMapping(src, ctx, pm, tuple(range(src.m)))


def nabla_map(maps: Sequence[SoftMapping], source: SumSpace) -> SoftMapping:
    """Glue maps on disjoint summands into one map on the sum."""
    tgt = maps[0].target
    if len(maps) != len(source.summands):
        raise ContextMismatch("one map per summand required")
    for m, sp in zip(maps, source.summands):
        if m.target != tgt or m.source != sp.context or not m.identity_params:
            raise ContextMismatch("maps must start at the summands and share a target")
    pm = tuple(m.point_map[i] for m in maps for i in range(m.source.n))
    return SoftMapping(source.context, tgt, pm, tuple(range(tgt.m)))


def product_map(maps: Sequence[SoftMapping], source: ProductSpace,
                target: ProductSpace) -> SoftMapping:
    for m, a, b in zip(maps, source.factors, target.factors, strict=True):
        if m.source != a.context or m.target != b.context or not m.identity_params:
            raise ContextMismatch("factor map does not match the product factors")
    tctx = target.context
    pm = tuple(tctx.elem_index(tuple(m(t[s]) for s, m in enumerate(maps)))
               for t in source.context.universe)
    return SoftMapping(source.context, tctx, pm, tuple(range(tctx.m)))


def sum_map(maps: Sequence[SoftMapping], source: SumSpace, target: SumSpace) -> SoftMapping:
    for m, a, b in zip(maps, source.summands, target.summands, strict=True):
        if m.source != a.context or m.target != b.context or not m.identity_params:
            raise ContextMismatch("summand map does not match the sums")
    tctx = target.context
    pm = tuple(tctx.elem_index(m(x)) for m in maps for x in m.source.universe)
    return SoftMapping(source.context, tctx, pm, tuple(range(tctx.m)))


def check_theorem1(X: SoftTopSpace, target: ProductSpace, f: SoftMapping) -> Verdict:
    """``f`` into a product is continuous iff every ``p_s . f`` is."""
    lhs = bool(is_continuous(f, X, target))
    parts = [bool(is_continuous(compose(p, f), X, Y))
             for p, Y in zip(target.projections, target.factors)]
    rhs = all(parts)
    return Verdict(lhs == rhs, {"map": f.point_map, "lhs": lhs, "rhs": rhs})


def check_theorem2(source: SumSpace, Y: SoftTopSpace, f: SoftMapping) -> Verdict:
    """``f`` out of a sum is continuous iff every ``f . i_s`` is."""
    lhs = bool(is_continuous(f, source, Y))
    parts = [bool(is_continuous(compose(f, i), sp, Y))
             for i, sp in zip(source.inclusions, source.summands)]
    rhs = all(parts)
    return Verdict(lhs == rhs, {"map": f.point_map, "lhs": lhs, "rhs": rhs})


def check_theorem3(family: Sequence[SoftTopSpace]) -> Verdict:
    """Parameter slices of products and sums are products and sums of slices."""
    params = common_params(family)
    prod = product_space(family)
    disjoint = True
    try:
        summed = sum_space(family)
    except UniverseOverlap:
        disjoint = False
    failures = []
    for e in params:
        slices = [(sp.context.universe, set(param_topology(sp, e))) for sp in family]
        if set(param_topology(prod, e)) != crisp.product_topology(slices):
            failures.append(("product", e))
        if disjoint and set(param_topology(summed, e)) != crisp.sum_topology(slices):
            failures.append(("sum", e))
    return Verdict(not failures, {"failures": failures, "sum_checked": disjoint})


def all_point_maps(source: Context, target: Context, cap: int = UNIVERSE_CAP):
    """Every point map with identity parameters, lexicographic over the source."""
    if source.params != target.params:
        raise ParamMismatch("point maps with identity parameters need a common E")
    if target.n ** source.n > cap:
        raise EnumerationTooLarge(f"{target.n}^{source.n} point maps")
    ident = tuple(range(source.m))
    for pm in itertools.product(range(target.n), repeat=source.n):
        yield SoftMapping(source, target, pm, ident)

