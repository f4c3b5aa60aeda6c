"""Finite concrete quantum logics: construction by closure, exact state
validation, and signed-measure/state extension over the power set."""

from .errors import CqlogicError, DomainError, FormatError, ValidationError
from .exactla import (
    AffineInconsistent,
    AffineSolution,
    NonnegFeasible,
    NonnegInfeasible,
    Rational,
    format_rational,
    nonneg_feasible,
    normalize_primitive,
    parse_rational,
    rat,
    solve_affine,
    solve_incidence,
)
from .setlogic import (
    Family,
    LogicReport,
    Universe,
    atoms_are_pair_intersections,
    boolean_atoms,
    concrete_closure,
    difference_closure,
    family,
    family_from_qlf,
    is_difference_closed,
    make_even_logic,
    mask_of,
    parse_qlf,
    points_of,
    serialize_qlf,
    set_literal,
    validate_logic,
)
from .states import (
    PartialState,
    StateReport,
    StateTable,
    SubadditivityResult,
    complete_state,
    dirac_point,
    is_subadditive,
    is_two_valued,
    mass_vector_is_even_valid,
    parse_qsf,
    sample_state_even,
    serialize_qsf,
    state_from_masses,
    state_from_qsf,
    state_table,
    validate_state,
)
from .extend import (
    ExtensionOutcome,
    FeasibleExtension,
    InfeasibleExtension,
    StateSummary,
    SubadditivityVerdict,
    classify_state,
    doubled_point_mass,
    point_masses_from_even_state,
    serialize_outcome,
    solve_signed_extension,
    solve_state_extension,
    subadditivity_verdict,
    uniform_atom_split,
)

__version__ = "0.1.0"
