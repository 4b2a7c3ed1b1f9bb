"""Ordinary (crisp) finite topologies as sets of frozensets.

Deliberately independent of the bitmask encoding used for soft sets, so the
parameter-wise identities for products and sums can be checked against it.
"""

from __future__ import annotations

import itertools
from typing import Iterable


def is_topology(universe: Iterable, opens: Iterable[frozenset]) -> bool:
    X = frozenset(universe)
    tau = set(map(frozenset, opens))
    if frozenset() not in tau or X not in tau:
        return False
    if any(not U <= X for U in tau):
        return False
    for U, V in itertools.combinations(tau, 2):
        if U | V not in tau or U & V not in tau:
            return False
    return True


def union_closure(sets: Iterable[frozenset]) -> set[frozenset]:
    """All unions of subfamilies, the empty union included."""
    out = {frozenset()}
    for B in set(sets):
        out |= {B | U for U in out}
    return out


def product_topology(factors: list[tuple[tuple, set[frozenset]]]) -> set[frozenset]:
    """Product topology on the tuple product of ``(universe, opens)`` factors.

    Boxes ``U_1 x ... x U_k`` with every ``U_s`` open form a base.
    """
    boxes = set()
    for choice in itertools.product(*(opens for _, opens in factors)):
        boxes.add(frozenset(itertools.product(*choice)))
    return union_closure(boxes)


def sum_topology(summands: list[tuple[tuple, set[frozenset]]]) -> set[frozenset]:
    """Disjoint-union topology: ``U`` open iff ``U & X_s`` open in every summand."""
    universe = frozenset(x for X, _ in summands for x in X)
    out = set()
    for r in range(len(universe) + 1):
        for U in itertools.combinations(sorted(universe, key=repr), r):
            U = frozenset(U)
            if all(U & frozenset(X) in opens for X, opens in summands):
                out.add(U)
    return out
