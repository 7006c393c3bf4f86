"""Exact arithmetic and model checking for chain-valued effectivity functions."""

from .chain import (
    Chain,
    TauTerm,
    TruthValue,
    ceil_to_chain,
    synthesize_tau_term,
    tau_threshold,
)
from .decide import (
    LOGIC_PN,
    LOGIC_TPN,
    DecisionVerdict,
    search_countermodel,
    soundness_suite,
)
from .errors import MveffError
from .filtration import (
    FiltrationResult,
    Quotient,
    enriched_filtration,
    intermediate_filtration,
    playable_filtration,
    quotient,
)
from .formulas import (
    Coalition,
    Formula,
    parse,
    print_formula,
    subformulas,
)
from .games import (
    GameForm,
    boolean_effectivity,
    effectivity_table,
    from_social_choice,
    mv_effectivity,
)
from .models import (
    EnrichedLnModel,
    LnModel,
    check_axiom_schema,
    eval_formula,
    eval_vector,
    is_standard,
    is_true,
    is_valid,
    standardize,
)
from .mvalgebra import (
    FiniteMVAlgebra,
    MVFilterView,
    check_grigolia,
    is_mv_filter,
    principal_filter,
)
from .tables import (
    EffFn,
    PlayabilityReport,
    boolean_skeleton,
    check_playability,
    check_property,
    equal_by_skeleton,
    lift_boolean,
    synthesize_game_form,
)

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "TruthValue",
    "TauTerm",
    "tau_threshold",
    "synthesize_tau_term",
    "ceil_to_chain",
    "FiniteMVAlgebra",
    "MVFilterView",
    "is_mv_filter",
    "principal_filter",
    "check_grigolia",
    "Coalition",
    "Formula",
    "parse",
    "print_formula",
    "subformulas",
    "GameForm",
    "boolean_effectivity",
    "mv_effectivity",
    "effectivity_table",
    "from_social_choice",
    "EffFn",
    "PlayabilityReport",
    "check_property",
    "check_playability",
    "boolean_skeleton",
    "lift_boolean",
    "equal_by_skeleton",
    "synthesize_game_form",
    "LnModel",
    "EnrichedLnModel",
    "eval_formula",
    "eval_vector",
    "is_true",
    "is_valid",
    "is_standard",
    "standardize",
    "check_axiom_schema",
    "Quotient",
    "FiltrationResult",
    "quotient",
    "intermediate_filtration",
    "playable_filtration",
    "enriched_filtration",
    "DecisionVerdict",
    "search_countermodel",
    "soundness_suite",
    "LOGIC_PN",
    "LOGIC_TPN",
    "MveffError",
    "__version__",
]
