"""Commuting-structure invariants of finite groups.

The package certifies, at desk scale, the algebra behind commuting
classifying spaces: colimits of abelian subgroups via coset enumeration,
symplectic sequences and the subgroups they span, the kernel-of-multiplication
subgroup of G x G, and integral homology of the commuting-tuple complex.
"""

from .groups import (
    FiniteGroup,
    GroupTooLargeError,
    InvalidTableError,
    MapTable,
    Subgroup,
    abelianization,
    center,
    closure,
    commutator,
    conjugacy_classes,
    derived_subgroup,
    is_nilq_map,
    load_multiplication_table,
    lower_central_series,
    nilpotency_class,
)
from .constructions import (
    GroupSpec,
    SpecError,
    build,
    elementary_matrix,
    embed_gl_in_sym,
    extraspecial_symplectic_basis,
    gl_symplectic_sequence,
    parse_group_spec,
)
from .symplectic import (
    ExhaustedNone,
    NotFoundWithinBudget,
    SymplecticSequence,
    Violation,
    check_symplectic,
    find_symplectic,
    sequence_subgroup,
    structure_report,
)
from .presentations import Presentation, build_presentation, presentation_dumps
from .coset_enum import CosetTable, TableNotClosedError, todd_coxeter, trace_word
from .colimit import (
    D2Subgroup,
    KernelReport,
    conjecture_probe,
    d2,
    d2_antidiagonal_generation,
    epsilon_kernel,
    kpi1_verdict,
    lemma_suite,
    omega_check,
    sequence_image_in_n2,
    theorem1_verify,
)
from .bar_complex import (
    BudgetExceededError,
    build_complex,
    h1_consistency,
    hom_count,
    homology,
)
from .snf import SNFResult, smith_normal_form

__all__ = [
    "BudgetExceededError",
    "CosetTable",
    "D2Subgroup",
    "ExhaustedNone",
    "FiniteGroup",
    "GroupSpec",
    "GroupTooLargeError",
    "InvalidTableError",
    "KernelReport",
    "MapTable",
    "NotFoundWithinBudget",
    "Presentation",
    "SNFResult",
    "SpecError",
    "Subgroup",
    "SymplecticSequence",
    "TableNotClosedError",
    "Violation",
    "abelianization",
    "build",
    "build_complex",
    "build_presentation",
    "center",
    "check_symplectic",
    "closure",
    "commutator",
    "conjecture_probe",
    "conjugacy_classes",
    "d2",
    "d2_antidiagonal_generation",
    "derived_subgroup",
    "elementary_matrix",
    "embed_gl_in_sym",
    "epsilon_kernel",
    "extraspecial_symplectic_basis",
    "find_symplectic",
    "gl_symplectic_sequence",
    "h1_consistency",
    "hom_count",
    "homology",
    "is_nilq_map",
    "kpi1_verdict",
    "lemma_suite",
    "load_multiplication_table",
    "lower_central_series",
    "nilpotency_class",
    "omega_check",
    "parse_group_spec",
    "presentation_dumps",
    "sequence_image_in_n2",
    "sequence_subgroup",
    "smith_normal_form",
    "structure_report",
    "theorem1_verify",
    "todd_coxeter",
    "trace_word",
]

__version__ = "0.1.0"
