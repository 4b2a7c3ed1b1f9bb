"""Instance generation, claim registry, brute-force verification and shrinking."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import constructions as cons
from . import funcspace as fsp
from .errors import (
    EmptyFunctionSpace,
    NotPointwiseContinuousSlice,
    ResourceCapExceeded,
    UnknownClaim,
)
from .mapping import is_continuous
from .softcore import Context, SoftSet, restrict_universe, soft_points
from .topology import (
    SeparationVariant,
    SoftTopSpace,
    generate_from_subbase,
    neighborhoods,
    param_topology,
)
from .verdict import Verdict

STYLES = ("indiscrete", "discrete", "random-subbase")
LAW, EXPERIMENT = "law", "experiment"


# -- instances ---------------------------------------------------------------

@dataclass(frozen=True)
class InstanceSpec:
    sizes: tuple[int, ...]
    n_params: int
    styles: tuple[str, ...]
    seed: int = 0
    k: int = 2  # generators for random-subbase

    def __post_init__(self):
        if self.n_params < 1 or any(n < 1 for n in self.sizes):
            raise ValueError("sizes must be positive")
        if len(self.styles) != len(self.sizes):
            raise ValueError("one style per space")


@dataclass(frozen=True)
class Instance:
    """A tuple of spaces over one parameter set; role meaning depends on the claim."""

    spaces: tuple[SoftTopSpace, ...]

    @property
    def params(self) -> tuple:
        return self.spaces[0].context.params

    def size_key(self) -> tuple:
        return (len(self.params), tuple(sp.context.n for sp in self.spaces),
                tuple(len(sp.subbase) for sp in self.spaces))

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "spaces": [
                {"universe": list(sp.context.universe),
                 "subbase": [SoftSet(sp.context, b).literal() for b in sorted(sp.subbase)]}
                for sp in self.spaces
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Instance:
        from .softcore import make_soft_set
        spaces = []
        for s in d["spaces"]:
            ctx = Context(tuple(s["universe"]), tuple(d["params"]))
            spaces.append(SoftTopSpace(ctx, [make_soft_set(ctx, lit).bits for lit in s["subbase"]]))
        return cls(tuple(spaces))


def _random_space(ctx: Context, style: str, rng: random.Random, k: int) -> SoftTopSpace:
    if style == "indiscrete":
        return SoftTopSpace(ctx, ())
    if style == "discrete":
        return SoftTopSpace.discrete(ctx)
    if style == "random-subbase":
        gens = [rng.getrandbits(ctx.width) for _ in range(k)]
        return generate_from_subbase(ctx, gens, lazy=True)
    if style.startswith("enumerated:"):
        tops = enumerate_topologies(ctx)
        return SoftTopSpace(ctx, tops[int(style.split(":", 1)[1]) % len(tops)])
    raise ValueError(f"unknown topology style {style!r}")


def generate_instance(spec: InstanceSpec) -> Instance:
    """Deterministic in ``spec``; space ``s`` gets elements ``<letter_s><i>``."""
    rng = random.Random(spec.seed)
    params = tuple(f"e{j}" for j in range(spec.n_params))
    spaces = []
    for s, (n, style) in enumerate(zip(spec.sizes, spec.styles)):
        ctx = Context(tuple(f"{chr(ord('a') + s)}{i}" for i in range(n)), params)
        spaces.append(_random_space(ctx, style, rng, spec.k))
    return Instance(tuple(spaces))


def enumerate_topologies(ctx: Context, max_width: int = 4) -> list[frozenset[int]]:
    """Every soft topology on ``ctx`` by filtering all families of soft sets."""
    if ctx.width > max_width:
        raise ResourceCapExceeded(f"cannot enumerate topologies at width {ctx.width}")
    full = ctx.full
    inner = list(range(1, full))
    out = []
    for mask in range(1 << len(inner)):
        fam = {0, full} | {inner[i] for i in range(len(inner)) if mask >> i & 1}
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.append(frozenset(fam))
    return out


# -- claims ------------------------------------------------------------------

def _prop1(inst: Instance, variant) -> list[Verdict]:
    (sp,) = inst.spaces
    out = []
    for e in sp.context.params:
        try:
            param_topology(sp, e)
            out.append(Verdict(True, {"param": e}))
        except AssertionError:
            out.append(Verdict(False, {"param": e}))
    return out


def _thm1(inst: Instance, variant) -> list[Verdict]:
    X, *Ys = inst.spaces
    P = cons.product_space(Ys)
    return [cons.check_theorem1(X, P, f) for f in cons.all_point_maps(X.context, P.context)]


def _thm2(inst: Instance, variant) -> list[Verdict]:
    *Xs, Y = inst.spaces
    S = cons.sum_space(Xs)
    return [cons.check_theorem2(S, Y, f) for f in cons.all_point_maps(S.context, Y.context)]


def _thm3(inst: Instance, variant) -> list[Verdict]:
    return [cons.check_theorem3(inst.spaces)]


def neighborhood_continuous_at(f, X: SoftTopSpace, Y: SoftTopSpace, p, _cache=None) -> bool:
    """Literal reading: every soft neighborhood of ``f(p)`` contains the image
    of some soft neighborhood of ``p`` (all soft sets, not only opens)."""
    nb = _cache if _cache is not None else {}
    q = f.apply_point(p)
    if (0, p) not in nb:
        nb[0, p] = neighborhoods(X, p)
    if (1, q) not in nb:
        nb[1, q] = [H.bits for H in neighborhoods(Y, q)]
    images = [f.image_bits(F.bits) for F in nb[0, p]]
    return all(any(im & ~H == 0 for im in images) for H in nb[1, q])


def _cont_def_eq(inst: Instance, variant) -> list[Verdict]:
    X, Y = inst.spaces
    out = []
    cache: dict = {}
    for f in cons.all_point_maps(X.context, Y.context):
        lhs = bool(is_continuous(f, X, Y))
        rhs = all(neighborhood_continuous_at(f, X, Y, p, cache) for p in soft_points(X.context))
        out.append(Verdict(lhs == rhs, {"map": f.point_map, "preimage": lhs, "pointwise": rhs}))
    return out


def _remark1(inst: Instance, variant) -> list[Verdict]:
    X, Y = inst.spaces
    fs = fsp.FunctionSpace(X, Y)
    return [Verdict(bool(is_continuous(fs.evaluation(p), fs, Y)), {"point": str(p)})
            for p in soft_points(X.context)]


def _prop2(inst: Instance, variant) -> list[Verdict]:
    Z, X, Y = inst.spaces
    fs = fsp.FunctionSpace(X, Y)
    return [fsp.check_prop2(Z, fs, g) for g in cons.all_point_maps(Z.context, fs.context)]


def _thm4(inst: Instance, variant) -> list[Verdict]:
    X, Y = inst.spaces
    return fsp.check_theorem4(fsp.FunctionSpace(X, Y), SeparationVariant(variant))


def _thm5(inst: Instance, variant) -> list[Verdict]:
    *Xs, Y = inst.spaces
    return [fsp.check_theorem5(Xs, Y)]


def _thm6(inst: Instance, variant) -> list[Verdict]:
    X, *Ys = inst.spaces
    return [fsp.check_theorem6(X, Ys)]


def _thm7(inst: Instance, variant) -> list[Verdict]:
    Z, X, Y = inst.spaces
    return [fsp.check_theorem7(Z, X, Y)]


def _eval_subbase_eq(inst: Instance, variant) -> list[Verdict]:
    X, Y = inst.spaces
    return [fsp.check_eval_subbase_eq(X, Y)]


@dataclass(frozen=True)
class Claim:
    id: str
    kind: str
    roles: str  # one letter per space: "x" uses the domain bound, "y" the codomain bound
    check: Callable[[Instance, object], list[Verdict]]
    description: str


CLAIMS: dict[str, Claim] = {c.id: c for c in [
    Claim("PROP1", LAW, "x", _prop1, "parameter slices of a soft topology are topologies"),
    Claim("THM1", LAW, "xyy", _thm1, "map into a product continuous iff all components are"),
    Claim("THM2", LAW, "xxy", _thm2, "map out of a sum continuous iff all restrictions are"),
    Claim("THM3", LAW, "xx", _thm3, "parameter slices of products/sums are products/sums"),
    Claim("REMARK1", LAW, "xy", _remark1, "evaluation maps are continuous on tau_p"),
    Claim("PROP2", LAW, "xxy", _prop2, "g into Y^X continuous iff every e_x . g is"),
    Claim("THM4", EXPERIMENT, "xy", _thm4, "Y soft T_i implies Y^X soft T_i"),
    Claim("THM5", LAW, "xxy", _thm5, "nabla is a homeomorphism"),
    Claim("THM6", LAW, "xyy", _thm6, "Delta is a homeomorphism"),
    Claim("THM7", LAW, "xxy", _thm7, "continuous evaluation makes E^-1(g^) continuous"),
    Claim("EVAL_SUBBASE_EQ", EXPERIMENT, "xy", _eval_subbase_eq,
          "G^{x_a} and evaluation preimages generate the same topology"),
    Claim("CONT_DEF_EQ", EXPERIMENT, "xy", _cont_def_eq,
          "pointwise neighborhood continuity equals preimage continuity"),
]}


def get_claim(claim_id: str) -> Claim:
    try:
        return CLAIMS[claim_id.upper()]
    except KeyError:
        raise UnknownClaim(claim_id) from None


# -- reports -----------------------------------------------------------------

@dataclass
class Counterexample:
    instance: Instance
    witness: dict
    shrunk: Instance | None = None
    shrunk_witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"instance": self.instance.to_dict(), "witness": _jsonable(self.witness)}
        if self.shrunk is not None:
            d["shrunk"] = self.shrunk.to_dict()
            d["shrunk_witness"] = _jsonable(self.shrunk_witness)
        return d


@dataclass
class VerdictReport:
    claim: str
    kind: str
    variant: str | None = None
    instances: int = 0
    agreements: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    skipped: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        from . import __version__
        return {
            "claim": self.claim,
            "kind": self.kind,
            "variant": self.variant,
            "instances": self.instances,
            "agreements": self.agreements,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "skipped": dict(sorted(self.skipped.items())),
            "versions": {"softtop": __version__, "report_schema": 1},
        }

    def summary(self) -> str:
        tag = "ok" if self.ok else f"{len(self.counterexamples)} counterexample(s)"
        v = f" [{self.variant}]" if self.variant else ""
        skip = f", skipped {sum(self.skipped.values())}" if self.skipped else ""
        return (f"{self.claim}{v} ({self.kind}): {self.agreements}/{self.instances} "
                f"agree, {tag}{skip}")


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


@dataclass(frozen=True)
class Bounds:
    max_x: int = 2
    max_y: int = 2
    max_e: int = 2
    min_size: int = 1
    min_e: int = 1
    seeds: int = 3
    styles: tuple[str, ...] = STYLES
    k: int = 2


def grid_specs(claim: Claim, bounds: Bounds) -> Iterator[InstanceSpec]:
    """Every (|E|, sizes, styles, seed) combination within ``bounds``.

    Seeds only vary when some space uses a random style.
    """
    ranges = [range(bounds.min_size, (bounds.max_x if r == "x" else bounds.max_y) + 1)
              for r in claim.roles]
    for m in range(bounds.min_e, bounds.max_e + 1):
        for sizes in itertools.product(*ranges):
            for styles in itertools.product(bounds.styles, repeat=len(claim.roles)):
                seeds = range(bounds.seeds) if any(s.startswith("random") for s in styles) else [0]
                for seed in seeds:
                    yield InstanceSpec(tuple(sizes), m, tuple(styles), seed, bounds.k)


def sampled_specs(claim: Claim, bounds: Bounds, samples: int, seed: int) -> Iterator[InstanceSpec]:
    rng = random.Random(seed)
    for _ in range(samples):
        sizes = tuple(rng.randint(bounds.min_size, bounds.max_x if r == "x" else bounds.max_y)
                      for r in claim.roles)
        m = rng.randint(bounds.min_e, bounds.max_e)
        styles = tuple(rng.choice(bounds.styles) for _ in claim.roles)
        yield InstanceSpec(sizes, m, styles, rng.getrandbits(32), bounds.k)


def evaluate(claim: Claim, inst: Instance, variant=None) -> list[Verdict]:
    return claim.check(inst, variant)


def fails(claim: Claim, inst: Instance, variant=None) -> bool:
    """Replay: does any check on ``inst`` fail?  Degenerate instances do not fail."""
    try:
        return not all(v.holds for v in evaluate(claim, inst, variant))
    except (EmptyFunctionSpace, ResourceCapExceeded, NotPointwiseContinuousSlice):
        return False


def run_claim(claim_id: str, bounds: Bounds | None = None, *, samples: int | None = None,
              seed: int = 0, variant: SeparationVariant | str | None = None,
              shrink_counterexamples: bool = True) -> VerdictReport:
    """Run one claim exhaustively over ``bounds`` or on ``samples`` seeded instances."""
    claim = get_claim(claim_id)
    bounds = bounds or Bounds()
    if claim.id == "THM4":
        variant = SeparationVariant(variant or SeparationVariant.PARAM_DISJOINT)
    else:
        variant = None
    report = VerdictReport(claim.id, claim.kind, variant.value if variant else None)
    specs = grid_specs(claim, bounds) if samples is None else sampled_specs(
        claim, bounds, samples, seed)
    shrunk_cache: dict[Instance, tuple[Instance, dict]] = {}
    for spec in specs:
        inst = generate_instance(spec)
        try:
            verdicts = evaluate(claim, inst, variant)
        except (EmptyFunctionSpace, ResourceCapExceeded, NotPointwiseContinuousSlice) as exc:
            name = type(exc).__name__
            report.skipped[name] = report.skipped.get(name, 0) + 1
            continue
        for v in verdicts:
            report.instances += 1
            if v.holds:
                report.agreements += 1
                continue
            cex = Counterexample(inst, dict(v.details, spec=spec.__dict__))
            if shrink_counterexamples:
                if inst not in shrunk_cache:
                    small = shrink(claim.id, inst, variant)
                    first = next(w for w in evaluate(claim, small, variant) if not w.holds)
                    shrunk_cache[inst] = (small, first.details)
                cex.shrunk, cex.shrunk_witness = shrunk_cache[inst]
            report.counterexamples.append(cex)
    report.counterexamples.sort(key=lambda c: json.dumps(c.to_dict(), sort_keys=True))
    return report


def run_thm4_all(bounds: Bounds | None = None, **kw) -> list[VerdictReport]:
    return [run_claim("THM4", bounds, variant=v, **kw) for v in SeparationVariant]


# -- shrinking ---------------------------------------------------------------

def _drop_element(sp: SoftTopSpace, x) -> SoftTopSpace:
    ctx = sp.context
    keep = [y for y in ctx.universe if y != x]
    restricted = [restrict_universe(SoftSet(ctx, b), keep) for b in sp.subbase]
    sub = Context(tuple(keep), ctx.params)
    return SoftTopSpace(sub, {F.bits for F in restricted})


def _drop_param(sp: SoftTopSpace, e) -> SoftTopSpace:
    ctx = sp.context
    keep = tuple(p for p in ctx.params if p != e)
    sub = Context(ctx.universe, keep)
    js = [ctx.param_index(p) for p in keep]
    return SoftTopSpace(sub, {sub.from_slices(ctx.slice_bits(b, j) for j in js)
                              for b in sp.subbase})


def _candidates(inst: Instance) -> Iterator[Instance]:
    spaces = inst.spaces
    for s, sp in enumerate(spaces):
        if sp.context.n > 1:
            for x in sp.context.universe:
                yield Instance(spaces[:s] + (_drop_element(sp, x),) + spaces[s + 1:])
    if len(inst.params) > 1:
        for e in inst.params:
            yield Instance(tuple(_drop_param(sp, e) for sp in spaces))
    for s, sp in enumerate(spaces):
        for b in sorted(sp.subbase):
            smaller = SoftTopSpace(sp.context, sp.subbase - {b})
            yield Instance(spaces[:s] + (smaller,) + spaces[s + 1:])


def shrink(claim_id: str, inst: Instance, variant=None) -> Instance:
    """Greedily drop elements, parameters and generators while the claim still fails."""
    claim = get_claim(claim_id)
    if not fails(claim, inst, variant):
        return inst
    current = inst
    progress = True
    while progress:
        progress = False
        for cand in _candidates(current):
            if fails(claim, cand, variant):
                current = cand
                progress = True
                break
    return current


__all__ = [
    "Bounds", "CLAIMS", "Claim", "Counterexample", "Instance", "InstanceSpec", "STYLES",
    "VerdictReport", "enumerate_topologies", "fails", "generate_instance", "get_claim",
    "grid_specs", "run_claim", "run_thm4_all", "sampled_specs", "shrink",
]
