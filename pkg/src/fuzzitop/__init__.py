"""Finite-model evaluation of fuzzifying pre-open topology in Łukasiewicz logic."""

from .carrier import Carrier, CarrierError, carrier
from .checks import REGISTRY, CheckResult, check
from .compactness import (
    FamilyGrid,
    beta1_degree,
    beta5_degree,
    fi_degree,
    gamma,
    gamma_p,
    gamma_p_subset,
    lc_degree,
    lpc_degree,
)
from .degree import ONE, ZERO, Degree, degree, format_degree, iff, implies, inf_over, sup_over, tnorm
from .dsl import evaluate, format_formula, parse
from .io import load_space, space_from_dict, space_to_dict
from .maps import PointMap, continuity_degrees, openness_degrees, openness_via_prebase, t2p, t3p, t3p_nbhd, t4p
from .named import discrete, graded_pair, indiscrete, sierpinski
from .nets import adh_p, beta2, beta3, beta4, pre_accumulates, pre_converges
from .preopen import (
    PreopenStructure,
    cl_p,
    f_p,
    finite_intersection_closure,
    is_prebase,
    is_prebase_degree,
    nbhd_p,
    p_topological_degree,
    tau_p,
    union_closure,
)
from .product import ProductSpace, product_space
from .search import SearchReport, search
from .space import FuzzyFamily, FuzzySpace, make_space, random_space, subspace, validate

__all__ = [name for name in dir() if not name.startswith("_")]
