"""Exact solvability analysis for tuples of conjugacy classes.

Decides, from Jordan block data alone, whether irreducible matrix tuples
with prescribed product one (or sum zero) can exist, constructs explicit
nilpotent witness tuples, verifies them with certified rational linear
algebra, and enumerates diagonal tuples by index of rigidity.
"""

from .catalog import MvTuple, base_list, enumerate_rigid, inverse_psi_extensions
from .constructions import (
    ConstructionPlan,
    MatrixTuple,
    VerificationReport,
    build_almost_special,
    build_nice,
    make_example,
    make_merged,
    prepare_construction,
    verify_tuple,
)
from .exactmat import (
    Mat,
    Poly,
    algebra_closure_dim,
    centralizer_dim,
    charpoly,
    jordan_type_nilpotent,
    rank,
    solve_coboundary_sum,
)
from .jnf import (
    CaseLabel,
    JnfTuple,
    JordanForm,
    apply_op_sl,
    classify_family,
    corresponding_diagonal,
    corresponding_single,
    d_of,
    dominates,
    omega0,
    r_of,
)
from .reduction import (
    ConditionReport,
    ReductionChain,
    SpectraSummary,
    Verdict,
    condition_report,
    is_good,
    psi_step,
    reduce_chain,
    verdict,
)
from .spectra import (
    ExponentAssignment,
    SpectraInvariants,
    distance,
    find_relation,
    genericize,
    is_relatively_generic,
    spectra_invariants,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
