"""Exact graded Lie algebras built from measure-preserving shifts.

The algebra of a system (X, T) is generated by monomials f (x) U^n over a
function space on X, with U the shift operator.  Three presentations of the
same bracket are provided, all in exact arithmetic:

  * crossed   [a, b] = ab - ba plus a central 2-cocycle correction
  * root      generators X_n(f), obtained by a graded change of variables
  * char      symbols Y_{chi,n} indexed by characters, for systems whose
              shift has discrete spectrum

plus the Cartan-side structure (Cartan operator, affine cycle matrices,
Chevalley generators, level inclusions for odometers) and seeded property
suites that certify the structural identities.
"""

from .crossed import (
    LieElem,
    assoc_mul,
    bracket_extended,
    bracket_plain,
    cocycle_alpha,
    collapse_central,
    decompose_center,
    involution,
    verify_not_coboundary,
)
from .errors import (
    CentralPartError,
    LiedynError,
    NonFiniteBackendError,
    NotInImageError,
    ParseError,
    RingMismatchError,
    SpaceMismatchError,
)
from .funcspace import (
    CartanOpSpec,
    FnElem,
    Space,
    cartan_k,
    cartan_kn,
    difference_preimage,
    fn_mul,
    geometric_sum_u,
    mean,
    project_to_level,
    shift_u,
)
from .grammar import (
    Expr,
    element_record,
    evaluate,
    evaluate_text,
    parse,
    render_element,
    render_scalar,
)
from .kacmoody import (
    CartanMatrix,
    InclusionMap,
    cartan_matrix,
    chevalley_generators,
    chevalley_relation_matrix,
    include_level,
    is_affine_cycle_type,
    node_count_label,
    standard_label,
)
from .rootform import (
    RootElem,
    audit_bracket_table,
    bracket_root,
    cocycle_root,
    local_algebra_check,
    local_bracket,
    tau,
    tau_inverse,
)
from .sampling import SplitMix64, random_fn, random_lie_elem
from .scalars import Cyclotomic, LaurentScalar
from .spectrum import (
    CharBasisElem,
    CharSymbol,
    bracket_y,
    char_symbols,
    grading_of,
    to_crossed,
)
from .suites import SuiteReport, applicable_suites, render_report, run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "CartanMatrix",
    "CartanOpSpec",
    "CentralPartError",
    "CharBasisElem",
    "CharSymbol",
    "Cyclotomic",
    "Expr",
    "FnElem",
    "InclusionMap",
    "LaurentScalar",
    "LieElem",
    "LiedynError",
    "NonFiniteBackendError",
    "NotInImageError",
    "ParseError",
    "RingMismatchError",
    "RootElem",
    "Space",
    "SpaceMismatchError",
    "SplitMix64",
    "SuiteReport",
    "applicable_suites",
    "assoc_mul",
    "audit_bracket_table",
    "bracket_extended",
    "bracket_plain",
    "bracket_root",
    "bracket_y",
    "cartan_k",
    "cartan_kn",
    "cartan_matrix",
    "char_symbols",
    "chevalley_generators",
    "chevalley_relation_matrix",
    "cocycle_alpha",
    "cocycle_root",
    "collapse_central",
    "decompose_center",
    "difference_preimage",
    "element_record",
    "evaluate",
    "evaluate_text",
    "fn_mul",
    "geometric_sum_u",
    "grading_of",
    "include_level",
    "involution",
    "is_affine_cycle_type",
    "local_algebra_check",
    "local_bracket",
    "mean",
    "node_count_label",
    "parse",
    "project_to_level",
    "random_fn",
    "random_lie_elem",
    "render_element",
    "render_report",
    "render_scalar",
    "run_all",
    "run_suite",
    "shift_u",
    "standard_label",
    "tau",
    "tau_inverse",
    "to_crossed",
    "verify_not_coboundary",
]
