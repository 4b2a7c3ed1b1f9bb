import json

import pytest

from softtop.errors import UnknownClaim
from softtop.harness import (
    CLAIMS,
    Bounds,
    Instance,
    InstanceSpec,
    fails,
    generate_instance,
    get_claim,
    run_claim,
    run_thm4_all,
    shrink,
)
from softtop.softcore import Context
from softtop.topology import SoftTopSpace, validate_axioms

SMALL = Bounds(max_x=2, max_y=2, max_e=2, seeds=2)


def test_registry_ids():
    assert set(CLAIMS) == {
        "PROP1", "THM1", "THM2", "THM3", "REMARK1", "PROP2", "THM4", "THM5", "THM6",
        "THM7", "EVAL_SUBBASE_EQ", "CONT_DEF_EQ"}
    assert get_claim("thm1").id == "THM1"
    with pytest.raises(UnknownClaim):
        get_claim("THM99")


def test_generation_examples():
    inst = generate_instance(InstanceSpec((2,), 1, ("indiscrete",)))
    assert len(inst.spaces[0].opens) == 2
    spec = InstanceSpec((2, 2), 2, ("random-subbase", "discrete"), seed=7)
    a, b = generate_instance(spec), generate_instance(spec)
    assert a == b and a.to_dict() == b.to_dict()
    sp = a.spaces[0]
    assert validate_axioms(sp.context, sp.opens).valid
    assert a.spaces[1].context.universe == ("b0", "b1")
    assert Instance.from_dict(a.to_dict()) == a
    with pytest.raises(ValueError):
        InstanceSpec((0,), 1, ("discrete",))


def test_reports_are_deterministic():
    r1 = run_claim("PROP2", SMALL)
    r2 = run_claim("PROP2", SMALL)
    assert json.dumps(r1.to_dict()) == json.dumps(r2.to_dict())
    s1 = run_claim("THM1", samples=30, seed=5).to_dict()
    assert s1 == run_claim("THM1", samples=30, seed=5).to_dict()
    assert s1["versions"]["report_schema"] == 1


def test_counterexamples_replay_and_shrink_monotone():
    report = run_claim("PROP2", SMALL)
    assert report.counterexamples and not report.ok
    claim = get_claim("PROP2")
    for cex in report.counterexamples[:20]:
        assert fails(claim, cex.instance)
        assert fails(claim, cex.shrunk)
        big, small = cex.instance.size_key(), cex.shrunk.size_key()
        assert small[0] <= big[0]
        assert all(s <= b for s, b in zip(small[1], big[1]))
        assert all(s <= b for s, b in zip(small[2], big[2]))


def _pt(prefix, n, m):
    return Context(tuple(f"{prefix}{i}" for i in range(n)), tuple(f"e{j}" for j in range(m)))


def test_shrink_removes_spectator_and_keeps_minimal():
    minimal = Instance(tuple(SoftTopSpace.indiscrete(_pt(p, 1, 2)) for p in "abc"))
    assert fails(get_claim("PROP2"), minimal)
    assert shrink("PROP2", minimal) == minimal
    padded = Instance((SoftTopSpace.indiscrete(_pt("a", 2, 2)),) + minimal.spaces[1:])
    small = shrink("PROP2", padded)
    assert small.spaces[0].context.n == 1
    ok = generate_instance(InstanceSpec((1,), 1, ("discrete",)))
    assert shrink("PROP1", ok) == ok


def test_law_claims_hold_on_small_grid():
    for cid in ("PROP1", "THM1", "THM2", "THM3", "CONT_DEF_EQ"):
        r = run_claim(cid, SMALL)
        assert r.ok and r.instances == r.agreements > 0, r.summary()


def test_thm4_has_one_report_per_variant():
    reports = run_thm4_all(SMALL)
    assert [r.variant for r in reports] == ["FULL_DISJOINT", "PARAM_DISJOINT", "POINT_ABSENT"]
    assert all(r.kind == "experiment" for r in reports)
    assert "THM4 [PARAM_DISJOINT]" in reports[1].summary()


def test_function_space_claims_count_skips():
    r = run_claim("REMARK1", SMALL)
    assert r.ok and r.skipped.get("EmptyFunctionSpace", 0) > 0
