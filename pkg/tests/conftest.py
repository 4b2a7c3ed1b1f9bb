import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from softtop.softcore import Context, SoftSet
from softtop.topology import SoftTopSpace, generate_from_subbase

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


def ctx_of(n, m, prefix="x"):
    return Context(tuple(f"{prefix}{i}" for i in range(n)), tuple(f"e{j}" for j in range(m)))


def to_tuple(ctx, bits):
    return tuple(ctx.mask_elements(ctx.slice_bits(bits, j)) for j in range(ctx.m))


def from_tuple(ctx, sets):
    return ctx.from_slices(ctx.subset_mask(s) for s in sets)


@st.composite
def contexts(draw, max_n=3, max_m=2, prefix="x"):
    return ctx_of(draw(st.integers(1, max_n)), draw(st.integers(1, max_m)), prefix)


def soft_sets(ctx):
    return st.integers(0, ctx.full).map(lambda b: SoftSet(ctx, b))


@st.composite
def spaces(draw, max_n=3, max_m=2, max_gens=3, prefix="x", ctx=None):
    ctx = ctx or draw(contexts(max_n, max_m, prefix))
    gens = draw(st.lists(st.integers(0, ctx.full), max_size=max_gens))
    return generate_from_subbase(ctx, gens, lazy=True)


@pytest.fixture
def two_point():
    """X={a,b}, E={e1} with opens {Phi, X, {e1:{a}}}."""
    ctx = Context(("a", "b"), ("e1",))
    return SoftTopSpace.from_opens(ctx, [0, ctx.point_bit("a", "e1"), ctx.full])
