"""Exact lattice algebra of complete sigma-fields on finite probability spaces.

A sigma-field is stored as a partition of the positive-mass outcomes; meets,
joins, independence and conditional expectations are computed exactly with
rationals.
"""

# ``catalog`` and ``condexp`` are submodules; their namesake functions are not
# re-exported here so that attribute access keeps returning the module.
from .core import (
    Product,
    ProbSpace,
    SigmaField,
    discrete,
    is_sub,
    make_space,
    product,
    sigma_from_blocks,
    sigma_from_events,
    sigma_from_rv,
    sigma_from_rvs,
    trivial,
    uniform_space,
)
from .kernels import BACKEND
from .lattice import independent, independent_family, join, join_many, meet, meet_many, plus, plus_many
from .condexp import CondExpOperator, cond_independent, cond_prob, condexp_operator, expectation
from .complements import enumerate_complements, innovation_check, two_sided_check
from .report import Claim, LawReport
from .laws import check, law_registry, lookup
from .catalog import catalog_ids
from .search import GenParams, falsify, shrink
from .instance import parse_instance, run_queries

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Claim",
    "CondExpOperator",
    "GenParams",
    "LawReport",
    "Product",
    "ProbSpace",
    "SigmaField",
    "catalog_ids",
    "check",
    "cond_independent",
    "cond_prob",
    "condexp_operator",
    "discrete",
    "enumerate_complements",
    "expectation",
    "falsify",
    "independent",
    "independent_family",
    "innovation_check",
    "is_sub",
    "join",
    "join_many",
    "law_registry",
    "lookup",
    "make_space",
    "meet",
    "meet_many",
    "parse_instance",
    "plus",
    "plus_many",
    "product",
    "run_queries",
    "shrink",
    "sigma_from_blocks",
    "sigma_from_events",
    "sigma_from_rv",
    "sigma_from_rvs",
    "trivial",
    "two_sided_check",
    "uniform_space",
]
