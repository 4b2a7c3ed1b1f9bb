"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Thresholds are the stated ones; nothing here is loosened to make a line pass.
"""

import json
import random
import time
from itertools import combinations

import pytest

import oracles
from softtop import constructions as cons
from softtop.cli import CAP, FAILED, LAW_COUNTEREXAMPLE, OK, USAGE, main
from softtop.document import emit, load, parse
from softtop.errors import EmptyFunctionSpace, ResourceCapExceeded
from softtop.funcspace import FunctionSpace
from softtop.harness import (
    CLAIMS,
    Bounds,
    Instance,
    generate_instance,
    get_claim,
    grid_specs,
    run_claim,
    run_thm4_all,
    sampled_specs,
)
from softtop.softcore import SoftSet, absolute_set, difference, null_set
from softtop.topology import SeparationVariant, SoftTopSpace, generate_from_subbase, is_Ti, param_topology

from conftest import FIXTURES, ctx_of, to_tuple


@pytest.fixture
def report(capsys):
    def emit_line(n, ok, msg):
        with capsys.disabled():
            print(f"\n[criterion {n:>2}] {'PASS' if ok else 'FAIL'}: {msg}")
    return emit_line


def slices_of(space, j):
    ctx = space.context
    return {frozenset(ctx.mask_elements(ctx.slice_bits(U, j))) for U in space.opens}


# -- 1 -----------------------------------------------------------------------

def test_c01_algebra_laws(report):
    rng = random.Random(1)
    violations = 0
    ctxs = {(n, m): ctx_of(n, m) for n in range(1, 5) for m in range(1, 4)}
    t0 = time.perf_counter()
    for _ in range(10_000):
        ctx = ctxs[rng.randint(1, 4), rng.randint(1, 3)]
        F, G, H = (SoftSet(ctx, rng.getrandbits(ctx.width)) for _ in range(3))
        Phi, Xt = null_set(ctx), absolute_set(ctx)
        laws = (
            F | G == G | F, F & G == G & F,
            (F | G) | H == F | (G | H), (F & G) & H == F & (G & H),
            F | F == F, F & F == F,
            F & (G | H) == (F & G) | (F & H), F | (G & H) == (F | G) & (F | H),
            ~(F | G) == ~F & ~G, ~(F & G) == ~F | ~G, ~~F == F,
            F | Phi == F, F & Xt == F, F & Phi == Phi, F | Xt == Xt,
            F | (F & G) == F, F & (F | G) == F,
            difference(F, G) == F & ~G,
            (F <= G) == (F & G == F),
        )
        violations += laws.count(False)
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 1.0
    report(1, ok, f"10000 triples, {violations} violations, {elapsed:.2f}s (< 1s)")
    assert violations == 0
    assert elapsed < 1.0


# -- 2 -----------------------------------------------------------------------

def test_c02_generation_minimality(report):
    t0 = time.perf_counter()
    lines, mismatches = [], 0
    # |X|=2 with |E|=1 has 4 soft sets; |E|=2 is the size that has 16, so run both
    for m in (1, 2):
        ctx = ctx_of(2, m)
        tops = oracles.all_soft_topologies(ctx.universe, m)
        everything = list(range(ctx.full + 1))
        subbases = [c for r in range(3) for c in combinations(everything, r)]
        rng = random.Random(2 + m)
        if len(everything) > 3:
            subbases += [tuple(rng.sample(everything, rng.randint(3, len(everything))))
                         for _ in range(1000)]
        for sub in subbases:
            got = {to_tuple(ctx, b) for b in generate_from_subbase(ctx, sub).opens}
            expected = oracles.minimal_topology_by_intersection(
                ctx.universe, m, [to_tuple(ctx, b) for b in sub], tops)
            mismatches += got != expected
        lines.append(f"|E|={m}: {len(everything)} soft sets, "
                     f"{len(tops)} topologies, {len(subbases)} subbases")
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 10
    report(2, ok, f"{'; '.join(lines)}; {mismatches} mismatches, {elapsed:.2f}s (< 10s)")
    assert mismatches == 0
    assert elapsed < 10


# -- 3 -----------------------------------------------------------------------

def _suite_spaces():
    """Every space the acceptance runs build, with products and sums."""
    seen = set()
    for cid, bounds in (("THM1", Bounds(min_size=2, seeds=50)),
                        ("THM2", Bounds(min_size=2, seeds=50)),
                        ("THM3", Bounds())):
        for spec in grid_specs(get_claim(cid), bounds):
            seen.add(generate_instance(spec))
    for cid in ("THM3", "REMARK1", "PROP2", "THM5", "THM6", "THM7", "CONT_DEF_EQ"):
        for spec in sampled_specs(get_claim(cid), Bounds(), 200, 0):
            seen.add(generate_instance(spec))
    for inst in seen:
        yield from inst.spaces
        if len(inst.spaces) >= 2:
            yield cons.product_space(inst.spaces[:2])
            yield cons.sum_space(inst.spaces[:2])


def test_c03_parameter_slices_are_topologies(report):
    checked = violations = 0
    for sp in _suite_spaces():
        for j, e in enumerate(sp.context.params):
            checked += 1
            tau = slices_of(sp, j)
            if not oracles.crisp_is_topology(sp.context.universe, tau) or \
                    set(param_topology(sp, e)) != tau:
                violations += 1
    prop1 = run_claim("PROP1", Bounds(max_x=3, max_e=3))
    ok = violations == 0 and prop1.ok
    report(3, ok, f"{checked} (space, e) slices, {violations} violations; {prop1.summary()}")
    assert violations == 0 and prop1.ok


# -- 4 -----------------------------------------------------------------------

def test_c04_product_and_sum_continuity(report):
    bounds = Bounds(max_x=2, max_y=2, max_e=2, min_size=2, seeds=50)
    t0 = time.perf_counter()
    reports = [run_claim(c, bounds) for c in ("THM1", "THM2")]
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reports) and elapsed < 60
    report(4, ok, f"{'; '.join(r.summary() for r in reports)}; {elapsed:.1f}s (< 60s)")
    assert all(r.ok and r.instances == r.agreements for r in reports)
    assert elapsed < 60


# -- 5 -----------------------------------------------------------------------

def test_c05_slice_identities(report):
    t0 = time.perf_counter()
    mismatches = families = 0
    for spec in sampled_specs(get_claim("THM3"), Bounds(max_x=2, max_e=2), 500, 5):
        family = generate_instance(spec).spaces
        families += 1
        prod, summed = cons.product_space(family), cons.sum_space(family)
        for j in range(len(family[0].context.params)):
            parts = [(sp.context.universe, slices_of(sp, j)) for sp in family]
            mismatches += slices_of(prod, j) != oracles.crisp_product(parts)
            mismatches += slices_of(summed, j) != oracles.crisp_sum(parts)
        mismatches += not cons.check_theorem3(family).holds
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 30
    report(5, ok, f"{families} families, {mismatches} mismatches, {elapsed:.1f}s (< 30s)")
    assert mismatches == 0
    assert elapsed < 30


# -- 6 -----------------------------------------------------------------------

def test_c06_continuity_definitions_agree(report):
    """Exhaustive over every soft topology on every context with |X|,|Y| <= 2, |E| <= 2."""
    claim = get_claim("CONT_DEF_EQ")
    t0 = time.perf_counter()
    total = agree = 0
    disagreements = []
    for m in (1, 2):
        xs, ys = [], []
        for n in (1, 2):
            for prefix, bucket in (("a", xs), ("b", ys)):
                ctx = ctx_of(n, m, prefix)
                bucket += [SoftTopSpace.from_opens(ctx, t)
                           for t in oracles_topologies(ctx)]
        for X in xs:
            for Y in ys:
                for v in claim.check(Instance((X, Y)), None):
                    total += 1
                    agree += v.holds
                    if not v.holds and len(disagreements) < 3:
                        disagreements.append(v.details)
    elapsed = time.perf_counter() - t0
    ok = agree == total
    report(6, ok, f"{agree}/{total} maps agree over all topology pairs, {elapsed:.1f}s"
           + (f"; first disagreements {disagreements}" if disagreements else ""))
    assert agree == total


def oracles_topologies(ctx):
    from conftest import from_tuple
    return [{from_tuple(ctx, s) for s in t}
            for t in oracles.all_soft_topologies(ctx.universe, ctx.m)]


# -- 7 -----------------------------------------------------------------------

def test_c07_evaluation_and_prop2(report):
    bounds = Bounds(max_x=2, max_y=4, max_e=2)
    t0 = time.perf_counter()
    rem = run_claim("REMARK1", bounds, samples=200, seed=7)
    prop = run_claim("PROP2", bounds, samples=200, seed=7)
    single = run_claim("PROP2", Bounds(max_x=2, max_y=4, max_e=1), samples=200, seed=7)
    elapsed = time.perf_counter() - t0
    ok = rem.ok and prop.ok and elapsed < 60
    msg = f"{rem.summary()}; {prop.summary()}; |E|=1 only: {single.summary()}; {elapsed:.1f}s"
    if prop.counterexamples:
        c = prop.counterexamples[0]
        msg += (f"; smallest PROP2 counterexample {json.dumps(c.shrunk.to_dict())} "
                f"witness {json.dumps(c.shrunk_witness)}")
    report(7, ok, msg)
    assert rem.ok, rem.summary()
    assert single.ok, single.summary()
    assert prop.ok, prop.summary()
    assert elapsed < 60


# -- 8 -----------------------------------------------------------------------

def test_c08_nabla_and_delta(report):
    bounds = Bounds(max_x=2, max_y=2, max_e=1)
    t0 = time.perf_counter()
    reports = [run_claim(c, bounds, samples=100, seed=8) for c in ("THM5", "THM6")]
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reports) and elapsed < 120
    report(8, ok, f"{'; '.join(r.summary() for r in reports)}; {elapsed:.1f}s (< 120s)")
    assert all(r.ok for r in reports)
    assert elapsed < 120


# -- 9 -----------------------------------------------------------------------

def test_c09_exponential_law(report):
    claim = get_claim("THM7")
    t0 = time.perf_counter()
    n = inverse_bad = conditional_bad = skipped = ghats = 0
    for spec in sampled_specs(claim, Bounds(), 100, 9):
        inst = generate_instance(spec)
        try:
            (v,) = claim.check(inst, None)
        except (EmptyFunctionSpace, ResourceCapExceeded):
            skipped += 1
            continue
        n += 1
        d = v.details
        ghats += d["continuous_ghats"]
        inverse_bad += not (d["inverse_ok"] and d["factorization_ok"])
        conditional_bad += not v.holds
    elapsed = time.perf_counter() - t0
    ok = inverse_bad == 0 and conditional_bad == 0 and elapsed < 60
    report(9, ok, f"{n} instances ({skipped} skipped, no continuous map Z -> Y), {ghats} "
           f"continuous g^ checked, {inverse_bad} inverse failures, {conditional_bad} "
           f"conditional counterexamples, {elapsed:.1f}s (< 60s)")
    assert inverse_bad == 0 and conditional_bad == 0
    assert elapsed < 60


# -- 10 ----------------------------------------------------------------------

def test_c10_experiments_match_oracle(report):
    bounds = Bounds()
    first = [r.to_dict() for r in run_thm4_all(bounds)]
    again = [r.to_dict() for r in run_thm4_all(bounds)]
    deterministic = json.dumps(first) == json.dumps(again)

    sep_checks = sep_mismatch = 0
    for spec in grid_specs(get_claim("THM4"), bounds):
        X, Y = generate_instance(spec).spaces
        try:
            fs = FunctionSpace(X, Y)
        except EmptyFunctionSpace:
            continue
        for sp in (Y, fs):
            opens = [to_tuple(sp.context, b) for b in sp.opens]
            for v in SeparationVariant:
                for i in (0, 1, 2):
                    sep_checks += 1
                    sep_mismatch += bool(is_Ti(sp, i, v)) != oracles.separation(
                        opens, sp.context.universe, sp.context.m, i, v.value)

    eq_checks = eq_mismatch = 0
    for spec in grid_specs(get_claim("EVAL_SUBBASE_EQ"), bounds):
        X, Y = generate_instance(spec).spaces
        Xo = [to_tuple(X.context, b) for b in X.opens]
        Yo = [to_tuple(Y.context, b) for b in Y.opens]
        m = X.context.m
        funcs = oracles.continuous_functions(X.context.universe, Y.context.universe, m, Xo, Yo)
        if not funcs:
            continue
        eq_checks += 1
        tops = [oracles.closure_fixpoint(funcs, m, oracles.pointwise_subbase(
            funcs, X.context.universe, m, Yo, kind)) for kind in ("point", "evaluation")]
        (v,) = get_claim("EVAL_SUBBASE_EQ").check(Instance((X, Y)), None)
        eq_mismatch += v.holds != (tops[0] == tops[1])

    status = "; ".join(f"THM4 [{r['variant']}] {len(r['counterexamples'])}/{r['instances']} "
                       f"claim failures" for r in first)
    eq = run_claim("EVAL_SUBBASE_EQ", bounds)
    ok = deterministic and sep_mismatch == 0 and eq_mismatch == 0
    report(10, ok, f"deterministic={deterministic}; separation {sep_checks} checks, "
           f"{sep_mismatch} oracle mismatches; subbase equality {eq_checks} checks, "
           f"{eq_mismatch} oracle mismatches; status: {status}; {eq.summary()}")
    assert deterministic and sep_mismatch == 0 and eq_mismatch == 0


# -- 11 ----------------------------------------------------------------------

def test_c11_cli_contract(report, tmp_path, capsys):
    t0 = time.perf_counter()
    expected = [
        (["validate", FIXTURES / "good.json"], OK),
        (["validate", FIXTURES / "minimal.json"], OK),
        (["validate", FIXTURES / "missing_absolute.json"], FAILED),
        (["validate", FIXTURES / "unknown_element.json"], FAILED),
        (["validate", FIXTURES / "bad_syntax.json"], FAILED),
        (["validate", FIXTURES / "absent.json"], USAGE),
        (["continuity", FIXTURES / "swap.json", "--map", "swap"], FAILED),
        (["continuity", FIXTURES / "swap.json", "--map", "id"], OK),
        (["bogus"], USAGE),
        (["theorems", "--claim", "NOPE"], USAGE),
        (["product", FIXTURES / "discrete4.json", "--spaces", "X,X,X"], CAP),
        (["theorems", "--claim", "PROP2", "--max-x", "1", "--max-y", "1"], LAW_COUNTEREXAMPLE),
        (["theorems", "--claim", "THM3"], OK),
    ]
    wrong = []
    for argv, code in expected:
        got = main([str(a) for a in argv])
        if got != code:
            wrong.append((argv[0], code, got))
    generated = [
        ["generate", "good.json", "--subbase", "F,G"],
        ["generate", "good.json", "--subbase", "F"],
        ["product", "good.json", "--spaces", "X,Y"],
        ["product", "swap.json", "--spaces", "X,X"],
        ["sum", "good.json", "--spaces", "X,Y"],
        ["funcspace", "good.json", "--domain", "X", "--codomain", "Y"],
        ["funcspace", "good.json", "--domain", "Y", "--codomain", "X"],
        ["funcspace", "swap.json", "--domain", "X", "--codomain", "X"],
    ]
    trips = bad_trips = 0
    for k, (cmd, fixture, *rest) in enumerate(generated):
        out = tmp_path / f"g{k}.json"
        if main([cmd, str(FIXTURES / fixture), *rest, "--out", str(out)]) != OK:
            wrong.append((cmd, OK, "nonzero"))
            continue
        for path in (out, FIXTURES / fixture):
            trips += 1
            doc = load(path)
            bad_trips += parse(emit(doc)) != doc or emit(parse(emit(doc))) != emit(doc)
    capsys.readouterr()
    elapsed = time.perf_counter() - t0
    ok = not wrong and bad_trips == 0 and elapsed < 5
    report(11, ok, f"{len(expected)} exit-code cases, wrong {wrong}; {trips} round trips, "
           f"{bad_trips} failed; {elapsed:.2f}s (< 5s)")
    assert not wrong and bad_trips == 0
    assert elapsed < 5


def test_claim_registry_covered():
    assert len(CLAIMS) == 12
