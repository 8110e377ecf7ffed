"""Formal concept analysis toolkit with differential replays of Mao's enumeration algorithms."""

from .context import (
    ContractError,
    FormalConcept,
    FormalContext,
    attribute_concept,
    close_intent,
    derive_down,
    derive_up,
    full_cols,
    full_rows,
    is_concept,
)
from .cxt import CxtParseError, parse_cxt, write_cxt
from .graph import PreWeightedGraph, build_graph, lower_cone, maximal_attrs, minimal_attrs, upper_cone
from .harness import FuzzConfig, RefutationReport, Verdict, builtin_cases, fuzz, shrink
from .lattice import core_set_A, enumerate_bruteforce, enumerate_lectic, partition_fst
from .pipeline import PawlakClass, classify_pawlak, clarify, reduce, run_pipeline
from .replay import Mode, ReplayOutcome, Termination, replay_alg1, replay_alg2, replay_alg3

__version__ = "0.1.0"
