"""Multiplicity bound verification for Artinian Hilbert functions.

Builds the lex-ideal Betti diagram for a Hilbert function, minimizes it by
consecutive cancellation, checks the multiplicity bounds on the resulting
shifts, filters non-realizable violating diagrams, and cross-checks against
an exact Koszul-homology Betti engine for monomial ideals.
"""

from .betti import (
    BettiDiagram,
    cancel,
    check_shift_growth,
    dual_diagram,
    ek_betti,
    greedy_minimize,
    greedy_stages,
    hilbert_from_diagram,
    huneke_miller,
    is_pure,
    is_quasipure,
    max_shifts,
    min_shifts,
)
from .errors import (
    CannotCancelError,
    IdealParseError,
    InconsistentDiagramError,
    MalformedDiagramError,
    NeedsCapError,
    NotAdmissibleError,
    NotPureError,
    NotStableError,
)
from .hilbert import (
    AciObstruction,
    HilbertFunction,
    aci_obstruction,
    ci_hilbert_function,
    enumerate_o_sequences,
    is_o_sequence,
    macaulay_bound,
    macaulay_expansion,
    multiplicity,
)
from .koszul import (
    TruncationAnalysis,
    TruncationRowsReport,
    koszul_betti,
    truncation_analysis,
    verify_truncation_rows,
)
from .monomial import (
    Monomial,
    MonomialIdeal,
    is_stable,
    lex_compare,
    lex_generator_profile,
    lex_ideal,
    monomials_of_degree,
    parse_ideal,
    parse_monomial,
    quotient_hilbert_function,
    truncate,
)
from .scanner import ScanReport, check_hf, check_ideal, scan
from .verdict import (
    BoundVerdict,
    Classification,
    ClassifyOptions,
    EvansRichertCheck,
    classify,
    evans_richert_ok,
    generator_count_ok,
    lower_bound_holds,
    upper_bound_holds,
)

__version__ = "0.1.0"

__all__ = [
    "AciObstruction",
    "BettiDiagram",
    "BoundVerdict",
    "CannotCancelError",
    "Classification",
    "ClassifyOptions",
    "EvansRichertCheck",
    "HilbertFunction",
    "IdealParseError",
    "InconsistentDiagramError",
    "MalformedDiagramError",
    "Monomial",
    "MonomialIdeal",
    "NeedsCapError",
    "NotAdmissibleError",
    "NotPureError",
    "NotStableError",
    "ScanReport",
    "TruncationAnalysis",
    "TruncationRowsReport",
    "aci_obstruction",
    "cancel",
    "check_hf",
    "check_ideal",
    "check_shift_growth",
    "ci_hilbert_function",
    "classify",
    "dual_diagram",
    "ek_betti",
    "enumerate_o_sequences",
    "evans_richert_ok",
    "generator_count_ok",
    "greedy_minimize",
    "greedy_stages",
    "hilbert_from_diagram",
    "huneke_miller",
    "is_o_sequence",
    "is_pure",
    "is_quasipure",
    "is_stable",
    "koszul_betti",
    "lex_compare",
    "lex_generator_profile",
    "lex_ideal",
    "lower_bound_holds",
    "macaulay_bound",
    "macaulay_expansion",
    "max_shifts",
    "min_shifts",
    "monomials_of_degree",
    "multiplicity",
    "parse_ideal",
    "parse_monomial",
    "quotient_hilbert_function",
    "scan",
    "truncate",
    "truncation_analysis",
    "upper_bound_holds",
    "verify_truncation_rows",
]
