"""Automata constructions for semi-simple splicing systems."""

from .automata import (AutomatonError, Dfa, Nfa, ResourceLimitExceeded, accepts, complete,
                       enumerate_accepted, equivalent, image, minimize, subset_construct,
                       useful_states)
from .constructions import (EpsNfa, closure_23, construct, construct_dfa_14, construct_dfa_23,
                            construct_nfa_13, construct_nfa_14, construct_nfa_24, eliminate_eps,
                            iterative_eps_build)
from .formats import FormatError, load_bundle, load_dfa, save_bundle, save_dfa
from .lab import ExperimentRow, bound, cross_validate, emit_report, run_family
from .splicing import (Marker, SplicingSystem, Variant, WordSet, closure_bounded,
                       parse_markers, sigma_step, splice, validate)
from .witnesses import (FamilyId, witness, witness_14_regular, witness_14_semi_finite,
                        witness_23_regular, witness_23_semi_finite, witness_23_simple_finite,
                        witness_24_finite)

__version__ = "0.1.0"

__all__ = [
    "AutomatonError",
    "Dfa",
    "EpsNfa",
    "ExperimentRow",
    "FamilyId",
    "FormatError",
    "Marker",
    "Nfa",
    "ResourceLimitExceeded",
    "SplicingSystem",
    "Variant",
    "WordSet",
    "accepts",
    "bound",
    "closure_23",
    "closure_bounded",
    "complete",
    "construct",
    "construct_dfa_14",
    "construct_dfa_23",
    "construct_nfa_13",
    "construct_nfa_14",
    "construct_nfa_24",
    "cross_validate",
    "eliminate_eps",
    "emit_report",
    "enumerate_accepted",
    "equivalent",
    "image",
    "iterative_eps_build",
    "load_bundle",
    "load_dfa",
    "minimize",
    "parse_markers",
    "run_family",
    "save_bundle",
    "save_dfa",
    "sigma_step",
    "splice",
    "subset_construct",
    "useful_states",
    "validate",
    "witness",
    "witness_14_regular",
    "witness_14_semi_finite",
    "witness_23_regular",
    "witness_23_semi_finite",
    "witness_23_simple_finite",
    "witness_24_finite",
]
