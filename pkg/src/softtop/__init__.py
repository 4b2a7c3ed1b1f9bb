"""Finite soft topological spaces: soft-set algebra, topologies, continuity,
products and sums, pointwise function spaces and a brute-force claim checker."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from . import errors as _errors
from .softcore import (  # noqa: F401
    Context,
    SoftPoint,
    SoftSet,
    absolute_set,
    make_soft_set,
    null_set,
    soft_points,
)
from .topology import (  # noqa: F401
    SeparationVariant,
    SoftTopSpace,
    closure,
    generate_from_subbase,
    is_Ti,
    param_topology,
    validate_axioms,
)
from .mapping import SoftMapping, is_continuous, is_continuous_at, is_homeomorphism  # noqa: F401
from .constructions import product_space, sum_space  # noqa: F401
from .funcspace import FunctionSpace, pointwise_space  # noqa: F401

__all__ = [
    "Context", "FunctionSpace", "SeparationVariant", "SoftMapping", "SoftPoint", "SoftSet",
    "SoftTopSpace", "absolute_set", "closure", "generate_from_subbase", "is_Ti",
    "is_continuous", "is_continuous_at", "is_homeomorphism", "make_soft_set", "null_set",
    "param_topology", "pointwise_space", "product_space", "soft_points", "sum_space",
    "validate_axioms",
] + [n for n in dir(_errors) if n[0].isupper()]
