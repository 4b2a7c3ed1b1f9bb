"""Spaces of soft continuous maps with the pointwise soft topology.

The universe of ``Y^X`` is the list of continuous point maps ``X -> Y``
(identity on parameters), each wrapped as a :class:`FunctionPoint` holding
its values in domain order.  The space is then an ordinary
:class:`~softtop.topology.SoftTopSpace`, so every other module can use it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .constructions import (
    ProductSpace,
    all_point_maps,
    common_params,
    product_map,
    product_space,
    sum_space,
)
from .errors import (
    ContextMismatch,
    EmptyFunctionSpace,
    EnumerationTooLarge,
    NotPointwiseContinuousSlice,
)
from .mapping import (
    SoftMapping,
    compose,
    identity,
    is_continuous,
    is_homeomorphism,
    is_open_map,
)
from .softcore import Context, SoftPoint, SoftSet, soft_points
from .topology import DEFAULT_CAP, SeparationVariant, SoftTopSpace, is_Ti
from .verdict import Verdict

ENUMERATION_CAP = 4096
POINT_SUBBASE = "point"
EVALUATION_SUBBASE = "evaluation"


@dataclass(frozen=True)
class FunctionPoint:
    """A point map, as its tuple of values in domain-universe order."""

    values: tuple

    def __str__(self):
        return "<" + ",".join(map(str, self.values)) + ">"


def enumerate_functions(domain: SoftTopSpace, codomain: SoftTopSpace,
                        cap: int = ENUMERATION_CAP) -> list[SoftMapping]:
    """All soft continuous point maps with identity parameters, lexicographic over X."""
    common_params([domain, codomain])
    X, Y = domain.context, codomain.context
    if Y.n ** X.n > cap:
        raise EnumerationTooLarge(f"{Y.n}^{X.n} candidate maps exceed cap of {cap}")
    return [m for m in all_point_maps(X, Y, cap) if is_continuous(m, domain, codomain)]


class FunctionSpace(SoftTopSpace):
    """``(Y^X, tau_p, E)``.

    ``subbase_kind`` selects the generating family: ``"point"`` uses the
    soft sets ``G^{x_a}`` for codomain opens ``G`` and soft points ``x_a``;
    ``"evaluation"`` uses the evaluation preimages ``e_{x_a}^{-1}(G)``.
    """

    def __init__(self, domain: SoftTopSpace, codomain: SoftTopSpace,
                 subbase_kind: str = POINT_SUBBASE, cap: int = DEFAULT_CAP,
                 enum_cap: int = ENUMERATION_CAP):
        params = common_params([domain, codomain])
        self.domain, self.codomain = domain, codomain
        self.subbase_kind = subbase_kind
        self.functions = tuple(enumerate_functions(domain, codomain, enum_cap))
        if not self.functions:
            raise EmptyFunctionSpace("no soft continuous map from domain to codomain")
        universe = tuple(FunctionPoint(tuple(m(x) for x in domain.context.universe))
                         for m in self.functions)
        ctx = Context(universe, params)
        self._index = {fp: k for k, fp in enumerate(universe)}
        opens_Y = codomain.opens
        if subbase_kind == POINT_SUBBASE:
            gens = {self._gx_bits(G, p) for G in opens_Y for p in soft_points(domain.context)}
        elif subbase_kind == EVALUATION_SUBBASE:
            gens = {self._eval_pre_bits(G, x) for G in opens_Y for x in domain.context.universe}
        else:
            raise ValueError(f"unknown subbase kind {subbase_kind!r}")
        super().__init__(ctx, gens, cap=cap)

    # -- helpers over bit encodings -----------------------------------------
    def _hits(self, x, target_mask: int) -> int:
        """Mask of functions ``f`` with ``f(x)`` in the codomain subset ``target_mask``."""
        i = self.domain.context.elem_index(x)
        out = 0
        for k, m in enumerate(self.functions):
            if target_mask >> m.point_map[i] & 1:
                out |= 1 << k
        return out

    def _gx_bits(self, G: int, p: SoftPoint) -> int:
        Y, ctx_n = self.codomain.context, len(self.functions)
        alpha = Y.param_index(p.param)
        slices = []
        for j in range(Y.m):
            if j == alpha:
                slices.append(self._hits(p.element, Y.slice_bits(G, j)))
            else:
                slices.append((1 << ctx_n) - 1)
        return sum(s << (j * ctx_n) for j, s in enumerate(slices))

    def _eval_pre_bits(self, G: int, x) -> int:
        Y, ctx_n = self.codomain.context, len(self.functions)
        return sum(self._hits(x, Y.slice_bits(G, j)) << (j * ctx_n) for j in range(Y.m))

    # -- public surface -----------------------------------------------------
    def function(self, k: int) -> SoftMapping:
        return self.functions[k]

    def index_of(self, values) -> int:
        """Index of the function with these values, or ``KeyError`` if not continuous."""
        return self._index[values if isinstance(values, FunctionPoint) else FunctionPoint(tuple(values))]

    def mapping_of(self, fp: FunctionPoint) -> SoftMapping:
        return self.functions[self.index_of(fp)]

    def evaluation(self, p: SoftPoint) -> SoftMapping:
        """``e_{x_a} : f -> f(x)``, identity on parameters."""
        Y = self.codomain.context
        i = self.domain.context.elem_index(p.element)
        self.domain.context.param_index(p.param)
        pm = tuple(m.point_map[i] for m in self.functions)
        return SoftMapping(self.context, Y, pm, tuple(range(Y.m)))

    def index_table(self) -> list[dict]:
        X = self.domain.context.universe
        return [{"index": k, "name": str(fp), "map": dict(zip(X, fp.values))}
                for k, fp in enumerate(self.context.universe)]


def pointwise_space(domain: SoftTopSpace, codomain: SoftTopSpace, **kw) -> FunctionSpace:
    return FunctionSpace(domain, codomain, **kw)


def soft_set_GF(fs: FunctionSpace, F: SoftSet, G: SoftSet) -> SoftSet:
    """``G^F``: slice at ``e`` holds the functions with ``f(F(e))`` inside ``G(e)``."""
    X, Y = fs.domain.context, fs.codomain.context
    if F.context != X or G.context != Y:
        raise ContextMismatch("F must be over the domain and G over the codomain")
    n = len(fs.functions)
    bits = 0
    for j in range(X.m):
        fj = X.slice_bits(F.bits, j)
        gj = Y.slice_bits(G.bits, j)
        sl = 0
        for k, m in enumerate(fs.functions):
            if all(gj >> m.point_map[i] & 1 for i in range(X.n) if fj >> i & 1):
                sl |= 1 << k
        bits |= sl << (j * n)
    return SoftSet(fs.context, bits)


def evaluation(fs: FunctionSpace, p: SoftPoint) -> SoftMapping:
    return fs.evaluation(p)


def check_remark1(fs: FunctionSpace) -> Verdict:
    """Each evaluation map is continuous from ``tau_p`` to the codomain."""
    bad = [str(p) for p in soft_points(fs.domain.context)
           if not is_continuous(fs.evaluation(p), fs, fs.codomain)]
    return Verdict(not bad, {"discontinuous_at": bad})


def check_prop2(Z: SoftTopSpace, fs: FunctionSpace, g: SoftMapping) -> Verdict:
    """``g : Z -> Y^X`` is continuous iff every ``e_{x_a} . g`` is."""
    lhs = bool(is_continuous(g, Z, fs))
    failing = [str(p) for p in soft_points(fs.domain.context)
               if not is_continuous(compose(fs.evaluation(p), g), Z, fs.codomain)]
    rhs = not failing
    return Verdict(lhs == rhs, {"map": [str(g(z)) for z in Z.context.universe],
                                "lhs": lhs, "rhs": rhs})


def check_theorem4(fs: FunctionSpace, variant: SeparationVariant) -> list[Verdict]:
    """For ``i = 0, 1, 2``: codomain soft ``T_i`` implies ``Y^X`` soft ``T_i``."""
    out = []
    for i in (0, 1, 2):
        base = is_Ti(fs.codomain, i, variant)
        lifted = is_Ti(fs, i, variant)
        witness = None if lifted.witness is None else tuple(map(str, lifted.witness))
        out.append(Verdict(not base.holds or lifted.holds,
                           {"i": i, "codomain": base.holds, "function_space": lifted.holds,
                            "witness": witness}))
    return out


def check_eval_subbase_eq(domain: SoftTopSpace, codomain: SoftTopSpace) -> Verdict:
    """Do ``{G^{x_a}}`` and the evaluation preimages generate the same topology?"""
    point = FunctionSpace(domain, codomain, POINT_SUBBASE)
    ev = FunctionSpace(domain, codomain, EVALUATION_SUBBASE)
    same = point.minimal == ev.minimal
    witness = None
    if not same:
        witness = next(repr(SoftSet(point.context, G)) for G in sorted(point.subbase)
                       if not ev.is_open_bits(G))
    return Verdict(same, {"point_not_open_in_evaluation": witness})


# -- sum and product isomorphisms ---------------------------------------------

@dataclass
class Iso:
    source: SoftTopSpace
    target: SoftTopSpace
    forward: SoftMapping
    backward: SoftMapping


def _map_between(src: Context, tgt: Context, images: Sequence) -> SoftMapping:
    return SoftMapping(src, tgt, tuple(tgt.elem_index(y) for y in images), tuple(range(src.m)))


def nabla_iso(summands: Sequence[SoftTopSpace], Y: SoftTopSpace) -> Iso:
    """``prod_s Y^{X_s}  ->  Y^{sum_s X_s}`` by gluing, with restriction as inverse."""
    summed = sum_space(summands)
    whole = FunctionSpace(summed, Y)
    parts = [FunctionSpace(X, Y) for X in summands]
    prod = product_space(parts)
    glued = []
    for t in prod.context.universe:
        vals = tuple(v for fp in t for v in fp.values)
        if FunctionPoint(vals) not in whole._index:
            raise NotPointwiseContinuousSlice(f"glued map {vals} is not continuous")
        glued.append(FunctionPoint(vals))
    fwd = _map_between(prod.context, whole.context, glued)
    restricted = []
    for fp in whole.context.universe:
        pieces, start = [], 0
        for X in summands:
            pieces.append(FunctionPoint(fp.values[start:start + X.context.n]))
            start += X.context.n
        restricted.append(tuple(pieces))
    bwd = _map_between(whole.context, prod.context, restricted)
    return Iso(prod, whole, fwd, bwd)


def delta_iso(X: SoftTopSpace, targets: Sequence[SoftTopSpace]) -> Iso:
    """``prod_s Y_s^X  ->  (prod_s Y_s)^X`` by tupling, with projections as inverse."""
    parts = [FunctionSpace(X, Ys) for Ys in targets]
    prod = product_space(parts)
    whole = FunctionSpace(X, product_space(targets))
    tupled = []
    for t in prod.context.universe:
        vals = tuple(zip(*(fp.values for fp in t)))
        if FunctionPoint(vals) not in whole._index:
            raise NotPointwiseContinuousSlice(f"tupled map {vals} is not continuous")
        tupled.append(FunctionPoint(vals))
    fwd = _map_between(prod.context, whole.context, tupled)
    split = [tuple(FunctionPoint(tuple(v[s] for v in fp.values)) for s in range(len(targets)))
             for fp in whole.context.universe]
    bwd = _map_between(whole.context, prod.context, split)
    return Iso(prod, whole, fwd, bwd)


def _check_iso(iso: Iso, route_open: bool) -> Verdict:
    fwd, bwd = iso.forward, iso.backward
    ident_src = compose(bwd, fwd).point_map == tuple(range(iso.source.context.n))
    ident_tgt = compose(fwd, bwd).point_map == tuple(range(iso.target.context.n))
    details = {"backward_after_forward": ident_src, "forward_after_backward": ident_tgt}
    if not (ident_src and ident_tgt):
        return Verdict(False, details)
    details["forward_continuous"] = bool(is_continuous(fwd, iso.source, iso.target))
    details["backward_continuous"] = bool(is_continuous(bwd, iso.target, iso.source))
    if route_open:
        details["forward_open"] = bool(is_open_map(fwd, iso.source, iso.target))
        details["backward_open"] = bool(is_open_map(bwd, iso.target, iso.source))
    details["homeomorphism"] = is_homeomorphism(fwd, iso.source, iso.target)
    return Verdict(all(details.values()), details)


def check_theorem5(summands: Sequence[SoftTopSpace], Y: SoftTopSpace) -> Verdict:
    try:
        iso = nabla_iso(summands, Y)
    except NotPointwiseContinuousSlice as exc:
        return Verdict(False, {"forward_defined": False, "reason": str(exc)})
    return _check_iso(iso, route_open=False)


def check_theorem6(X: SoftTopSpace, targets: Sequence[SoftTopSpace]) -> Verdict:
    try:
        iso = delta_iso(X, targets)
    except NotPointwiseContinuousSlice as exc:
        return Verdict(False, {"forward_defined": False, "reason": str(exc)})
    return _check_iso(iso, route_open=True)


# -- exponential law ---------------------------------------------------------

def switching(Z: SoftTopSpace, W: SoftTopSpace) -> tuple[ProductSpace, ProductSpace, SoftMapping]:
    """``t : Z x W -> W x Z``, ``(z, w) -> (w, z)``."""
    zw, wz = product_space([Z, W]), product_space([W, Z])
    return zw, wz, _map_between(zw.context, wz.context, [(w, z) for z, w in zw.context.universe])


def induced_map(f: SoftMapping, ZX: ProductSpace, YZ: FunctionSpace) -> SoftMapping:
    """``f^ : X -> Y^Z`` with ``f^(x)(z) = f(z, x)``."""
    Z, X = ZX.factors
    images = []
    for x in X.context.universe:
        fp = FunctionPoint(tuple(f((z, x)) for z in Z.context.universe))
        if fp not in YZ._index:
            raise NotPointwiseContinuousSlice(f"slice at {x!r} is not continuous Z -> Y")
        images.append(fp)
    return _map_between(X.context, YZ.context, images)


exponential_E = induced_map


def exponential_Einv(ghat: SoftMapping, ZX: ProductSpace, Y: SoftTopSpace) -> SoftMapping:
    """``E^{-1}(g^) : Z x X -> Y``, ``(z, x) -> g^(x)(z)``."""
    Z, _ = ZX.factors
    zi = {z: i for i, z in enumerate(Z.context.universe)}
    images = [ghat(x).values[zi[z]] for z, x in ZX.context.universe]
    return _map_between(ZX.context, Y.context, images)


def evaluation_pair_map(YZ: FunctionSpace) -> tuple[ProductSpace, SoftMapping]:
    """``e : Y^Z x Z -> Y``, ``e(f, z) = f(z)``."""
    dom = product_space([YZ, YZ.domain])
    zi = {z: i for i, z in enumerate(YZ.domain.context.universe)}
    images = [fp.values[zi[z]] for fp, z in dom.context.universe]
    return dom, _map_between(dom.context, YZ.codomain.context, images)


def check_theorem7(Z: SoftTopSpace, X: SoftTopSpace, Y: SoftTopSpace) -> Verdict:
    """If ``e : Y^Z x Z -> Y`` is continuous, every continuous ``g^ : X -> Y^Z``
    has a continuous ``E^{-1}(g^)``; also checks ``E`` and ``E^{-1}`` invert
    each other and the factorization ``e . t . (1_Z x g^)``."""
    ZX = product_space([Z, X])
    YZ = FunctionSpace(Z, Y)
    e_dom, e = evaluation_pair_map(YZ)
    e_cont = bool(is_continuous(e, e_dom, Y))

    inverse_ok = True
    n_f = n_curried = 0
    for f in enumerate_functions(ZX, Y):
        n_f += 1
        try:
            fhat = induced_map(f, ZX, YZ)
        except NotPointwiseContinuousSlice:
            continue
        n_curried += 1
        if exponential_Einv(fhat, ZX, Y).point_map != f.point_map:
            inverse_ok = False

    z_yz = product_space([Z, YZ])
    _, _, t = switching(Z, YZ)
    ghats = enumerate_functions(X, YZ)
    conclusion_ok = factor_ok = True
    bad = []
    for ghat in ghats:
        f = exponential_Einv(ghat, ZX, Y)
        if induced_map(f, ZX, YZ).point_map != ghat.point_map:
            inverse_ok = False
        one_g = product_map([identity(Z.context), ghat], ZX, z_yz)
        route = compose(e, compose(t, one_g))
        if route.point_map != f.point_map:
            factor_ok = False
        if not is_continuous(f, ZX, Y):
            conclusion_ok = False
            bad.append([str(fp) for fp in (ghat(x) for x in X.context.universe)])
    holds = inverse_ok and factor_ok and (not e_cont or conclusion_ok)
    return Verdict(holds, {
        "evaluation_continuous": e_cont, "continuous_ghats": len(ghats),
        "inverse_ok": inverse_ok, "factorization_ok": factor_ok,
        "einv_all_continuous": conclusion_ok, "discontinuous_einv_for": bad,
        "maps_ZxX_to_Y": n_f, "with_continuous_slices": n_curried,
    })
