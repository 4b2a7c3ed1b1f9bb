"""Soft topologies over a context: axioms, generation, closure, separation.

Opens are only materialized on demand and under a size cap; openness,
interiors, closures and separation all go through the smallest open around
each soft point, so products and function spaces whose open-set lattice is
far beyond the cap can still be queried.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from . import crisp
from .errors import (
    AxiomViolation,
    ContextMismatch,
    TopologyTooLarge,
)
from .softcore import Context, SoftPoint, SoftSet, iter_bits, soft_points

DEFAULT_CAP = 4096
BASE_CAP = 1 << 16
NEIGHBORHOOD_ENUM_WIDTH = 16


class SeparationVariant(enum.Enum):
    FULL_DISJOINT = "FULL_DISJOINT"
    PARAM_DISJOINT = "PARAM_DISJOINT"
    POINT_ABSENT = "POINT_ABSENT"


DEFAULT_VARIANT = SeparationVariant.PARAM_DISJOINT


def intersection_closure(gens: Iterable[int], full: int, cap: int = BASE_CAP) -> set[int]:
    """Close ``gens | {full}`` under pairwise intersection."""
    out = {full}
    for g in set(gens):
        if g in out:
            continue
        out |= {g & b for b in out}
        if len(out) > cap:
            raise TopologyTooLarge(f"base exceeds cap of {cap}")
    return out


def union_closure(gens: Iterable[int], cap: int = DEFAULT_CAP) -> set[int]:
    """Close ``gens | {0}`` under pairwise union."""
    out = {0}
    for g in sorted(set(gens)):
        if g in out:
            continue
        out |= {g | u for u in out}
        if len(out) > cap:
            raise TopologyTooLarge(f"topology exceeds cap of {cap} opens")
    return out


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.valid:
            return "valid soft topology"
        return "; ".join(v.describe() for v in self.violations)


@dataclass(frozen=True)
class Violation:
    axiom: str  # "null", "absolute", "union", "intersection"
    context: Context
    witness: tuple = ()  # operand bits; for union/intersection also the missing result

    def describe(self) -> str:
        sets = [repr(SoftSet(self.context, b)) for b in self.witness]
        if self.axiom in ("null", "absolute"):
            return f"missing {self.axiom} soft set"
        return f"{self.axiom} of {sets[0]} and {sets[1]} is {sets[2]}, not open"


def validate_axioms(context: Context, opens: Iterable[SoftSet | int]) -> ValidationReport:
    bits = set()
    for U in opens:
        if isinstance(U, SoftSet):
            if U.context != context:
                raise ContextMismatch("open set outside the context")
            U = U.bits
        bits.add(U)
    report = ValidationReport()
    if 0 not in bits:
        report.violations.append(Violation("null", context))
    if context.full not in bits:
        report.violations.append(Violation("absolute", context))
    ordered = sorted(bits)
    for a_i, a in enumerate(ordered):
        for b in ordered[a_i + 1:]:
            if a | b not in bits:
                report.violations.append(Violation("union", context, (a, b, a | b)))
            if a & b not in bits:
                report.violations.append(Violation("intersection", context, (a, b, a & b)))
    return report


class SoftTopSpace:
    """A soft topological space ``(X, tau, E)`` given by a generating subbase.

    The smallest open around each soft point is the intersection of the
    subbase members containing it; a soft set is open exactly when it
    contains the smallest open of each of its points.  The base (finite
    intersections) and the opens (unions) are computed only on request.
    """

    def __init__(self, context: Context, subbase: Iterable[int] = (), cap: int = DEFAULT_CAP,
                 opens: Iterable[int] | None = None):
        self.context = context
        self.subbase = frozenset(subbase)
        self.cap = cap
        self._opens = None if opens is None else frozenset(opens)
        self._base = None
        full = context.full
        mins = [full] * context.width
        for b in self.subbase:
            if b & ~full:
                raise ValueError("subbase member outside the context")
            for k in iter_bits(b):
                mins[k] &= b
        self.minimal = tuple(mins)

    @classmethod
    def from_opens(cls, context: Context, opens: Iterable[SoftSet | int], cap: int = DEFAULT_CAP):
        """Wrap an explicit collection of opens, rejecting it if an axiom fails."""
        bits = frozenset(_check_subbase(context, opens))
        report = validate_axioms(context, bits)
        if not report.valid:
            raise AxiomViolation(report)
        return cls(context, bits, cap=max(cap, len(bits)), opens=bits)

    @classmethod
    def indiscrete(cls, context: Context):
        return cls(context, (), opens={0, context.full})

    @classmethod
    def discrete(cls, context: Context, cap: int = DEFAULT_CAP):
        return cls(context, [1 << k for k in range(context.width)], cap=cap)

    @property
    def base(self) -> frozenset[int]:
        """Finite intersections of the subbase, the absolute set included."""
        if self._base is None:
            self._base = frozenset(intersection_closure(self.subbase, self.context.full,
                                                        cap=max(BASE_CAP, self.cap)))
        return self._base

    @property
    def opens(self) -> frozenset[int]:
        if self._opens is None:
            self._opens = frozenset(union_closure(self.minimal, self.cap) | {self.context.full})
        return self._opens

    def open_sets(self) -> list[SoftSet]:
        return [SoftSet(self.context, b) for b in sorted(self.opens)]

    def __len__(self):
        return len(self.opens)

    def __eq__(self, other):
        if not isinstance(other, SoftTopSpace):
            return NotImplemented
        return self.context == other.context and self.minimal == other.minimal

    def __hash__(self):
        return hash((self.context, self.minimal))

    def __repr__(self):
        return f"SoftTopSpace(n={self.context.n}, m={self.context.m}, subbase={len(self.subbase)})"

    def _bits(self, F: SoftSet) -> int:
        if F.context != self.context:
            raise ContextMismatch("soft set outside the space's context")
        return F.bits

    def interior_bits(self, bits: int) -> int:
        out = 0
        mins = self.minimal
        for k in iter_bits(bits):
            if mins[k] & ~bits == 0:
                out |= 1 << k
        return out

    def is_open_bits(self, bits: int) -> bool:
        mins = self.minimal
        for k in iter_bits(bits):
            if mins[k] & ~bits:
                return False
        return True

    def is_open(self, F: SoftSet) -> bool:
        return self.is_open_bits(self._bits(F))

    def is_closed(self, F: SoftSet) -> bool:
        return self.is_open_bits(self.context.full & ~self._bits(F))

    def interior(self, F: SoftSet) -> SoftSet:
        return SoftSet(self.context, self.interior_bits(self._bits(F)))

    def certificate(self, U: SoftSet) -> list[tuple[SoftSet, list[SoftSet]]] | None:
        """Write an open ``U`` as a union of finite intersections of subbase members.

        Returns ``(base member, subbase members intersecting to it)`` pairs,
        or ``None`` when ``U`` is not open.
        """
        bits = self._bits(U)
        if not self.is_open_bits(bits):
            return None
        ctx = self.context
        parts = []
        for m in sorted({self.minimal[k] for k in iter_bits(bits)}):
            factors = sorted(s for s in self.subbase if m & ~s == 0)
            parts.append((SoftSet(ctx, m), [SoftSet(ctx, s) for s in factors]))
        return parts


def closed_sets(space: SoftTopSpace) -> list[SoftSet]:
    full = space.context.full
    return sorted((SoftSet(space.context, full & ~U) for U in space.opens), key=lambda F: F.bits)


def closure(space: SoftTopSpace, F: SoftSet) -> SoftSet:
    """Smallest closed soft set containing ``F`` (complement of the interior of the complement)."""
    full = space.context.full
    return SoftSet(space.context, full & ~space.interior_bits(full & ~space._bits(F)))


def param_topology(space: SoftTopSpace, e) -> frozenset[frozenset]:
    """The crisp topology ``{F(e) : F open}`` on the universe."""
    ctx = space.context
    j = ctx.param_index(e)
    slices = union_closure((ctx.slice_bits(b, j) for b in space.minimal), cap=1 << ctx.n)
    tau = frozenset(ctx.mask_elements(s) for s in slices)
    if not crisp.is_topology(ctx.universe, tau):
        raise AssertionError(f"parameter slice at {e!r} is not a topology")
    return tau


def _check_subbase(context: Context, subbase) -> set[int]:
    bits = set()
    for S in subbase:
        if isinstance(S, SoftSet):
            if S.context != context:
                raise ContextMismatch("subbase member outside the context")
            S = S.bits
        bits.add(S)
    return bits


def generate_from_subbase(context: Context, subbase: Iterable[SoftSet | int],
                          cap: int = DEFAULT_CAP, lazy: bool = False) -> SoftTopSpace:
    """Smallest soft topology containing ``subbase``.

    Finite intersections (with the absolute set) form the base, whose union
    closure plus the null set is the topology.  With ``lazy`` the opens are
    not enumerated up front and ``cap`` only applies if they are requested.
    """
    space = SoftTopSpace(context, _check_subbase(context, subbase), cap=cap)
    if not lazy:
        space.base
        space.opens
    return space


def generate_from_base(context: Context, base: Iterable[SoftSet | int],
                       cap: int = DEFAULT_CAP) -> SoftTopSpace:
    """All unions of members of ``base``, plus the null and absolute sets."""
    gens = _check_subbase(context, base)
    opens = union_closure(gens | {context.full}, cap)
    return SoftTopSpace(context, gens, cap=cap, opens=opens)


def _covers(opens: Iterable[int], candidate: set[int]) -> bool:
    for U in opens:
        got = 0
        for c in candidate:
            if c & ~U == 0:
                got |= c
        if got != U:
            return False
    return True


def is_base(space: SoftTopSpace, candidate: Iterable[SoftSet | int]) -> bool:
    cand = _check_subbase(space.context, candidate)
    if not all(space.is_open_bits(c) for c in cand):
        return False
    return _covers(space.opens, cand)


def is_subbase(space: SoftTopSpace, candidate: Iterable[SoftSet | int]) -> bool:
    """Whether finite intersections of ``candidate`` form a base.

    The empty intersection is the absolute set, matching generation.
    """
    cand = _check_subbase(space.context, candidate)
    if not all(space.is_open_bits(c) for c in cand):
        return False
    return _covers(space.opens, intersection_closure(cand, space.context.full))


def is_neighborhood(space: SoftTopSpace, p: SoftPoint, F: SoftSet) -> bool:
    bits = space._bits(F)
    return bool(space.interior_bits(bits) & space.context.point_bit(p.element, p.param))


def neighborhoods(space: SoftTopSpace, p: SoftPoint) -> list[SoftSet]:
    """Soft neighborhoods of ``p``.

    Every soft set is considered when the context has at most 16 soft
    points; above that only open neighborhoods are listed.
    """
    ctx = space.context
    k = ctx.point_bit(p.element, p.param).bit_length() - 1
    smallest = space.minimal[k]
    if ctx.width <= NEIGHBORHOOD_ENUM_WIDTH:
        free = [1 << i for i in range(ctx.width) if not smallest >> i & 1]
        out = []
        for mask in range(1 << len(free)):
            extra = 0
            for i, bit in enumerate(free):
                if mask >> i & 1:
                    extra |= bit
            out.append(smallest | extra)
    else:
        out = [U for U in space.opens if smallest & ~U == 0]
    return [SoftSet(ctx, b) for b in sorted(out)]


@dataclass(frozen=True)
class SeparationResult:
    holds: bool
    witness: tuple[SoftPoint, SoftPoint] | None = None

    def __bool__(self):
        return self.holds


def _param_mask(ctx: Context, k: int) -> int:
    return ctx.slice_mask << ((k // ctx.n) * ctx.n)


def is_Ti(space: SoftTopSpace, i: int, variant: SeparationVariant = DEFAULT_VARIANT) -> SeparationResult:
    """Soft T0 / T1 / T2 over all pairs of distinct soft points.

    Uses smallest open neighborhoods: each separating condition is preserved
    when an open is shrunk to the smallest open around its point.
    """
    if i not in (0, 1, 2):
        raise ValueError("separation index must be 0, 1 or 2")
    variant = SeparationVariant(variant)
    ctx = space.context
    mins = space.minimal
    points = soft_points(ctx)
    for kx in range(ctx.width):
        for ky in range(kx + 1, ctx.width):
            x_not_y = not mins[kx] >> ky & 1
            y_not_x = not mins[ky] >> kx & 1
            if i == 0:
                ok = x_not_y or y_not_x
            elif i == 1 or variant is SeparationVariant.POINT_ABSENT:
                ok = x_not_y and y_not_x
            elif variant is SeparationVariant.FULL_DISJOINT:
                ok = mins[kx] & mins[ky] == 0
            else:
                where = _param_mask(ctx, kx) | _param_mask(ctx, ky)
                ok = mins[kx] & mins[ky] & where == 0
            if not ok:
                return SeparationResult(False, (points[kx], points[ky]))
    return SeparationResult(True)


def initial_topology(context: Context, family, cap: int = DEFAULT_CAP,
                     lazy: bool = False) -> SoftTopSpace:
    """Topology generated by preimages under each ``(mapping, space)`` pair.

    Preimages of the target's subbase suffice: preimage commutes with union
    and intersection, so they generate the same topology as all opens.
    """
    gens = set()
    for m, target in family:
        if m.source != context:
            raise ContextMismatch("mapping source differs from the context")
        gens |= {m.preimage_bits(U) for U in target.subbase}
    return generate_from_subbase(context, gens, cap=cap, lazy=lazy)
