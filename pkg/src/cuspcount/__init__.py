"""Exact counting of cusp points bifurcating in one-parameter families of
plane-to-plane polynomial maps, split by local degree and parameter sign."""

from .branch_counter import (
    BranchCount,
    GenericCombination,
    build_H,
    choose_combination,
    compute_xi,
    count_branches,
    count_branches_positive_t,
)
from .cusp_pipeline import (
    BifurcationReport,
    DerivedGerms,
    HypothesisReport,
    cusp_degree,
    derive,
    euler_extras,
    run,
    solve_sigma,
    verify_hypotheses,
)
from .elk_degree import (
    DegreeCertificate,
    LocalAlgebra,
    build_algebra,
    local_degree,
    signature,
)
from .errors import CuspCountError, HypothesisError, ParseError
from .exprparse import ExprSource, parse_poly
from .polyring import (
    MapGerm,
    Poly,
    VARS_TX,
    VARS_X,
    jacobian2,
    jacobian3_det,
    jacobian_det,
    partial,
    set_t_zero,
    substitute_t_squared,
)
from .standard_basis import INFINITE, Cobasis, LocalIdeal

__version__ = "0.1.0"

__all__ = [
    "BifurcationReport",
    "BranchCount",
    "Cobasis",
    "CuspCountError",
    "DegreeCertificate",
    "DerivedGerms",
    "ExprSource",
    "GenericCombination",
    "HypothesisError",
    "HypothesisReport",
    "INFINITE",
    "LocalAlgebra",
    "LocalIdeal",
    "MapGerm",
    "ParseError",
    "Poly",
    "VARS_TX",
    "VARS_X",
    "build_H",
    "build_algebra",
    "choose_combination",
    "compute_xi",
    "count_branches",
    "count_branches_positive_t",
    "cusp_degree",
    "derive",
    "euler_extras",
    "jacobian2",
    "jacobian3_det",
    "jacobian_det",
    "local_degree",
    "parse_poly",
    "partial",
    "run",
    "set_t_zero",
    "signature",
    "solve_sigma",
    "substitute_t_squared",
    "verify_hypotheses",
]
