"""Deciding regular realizability problems for context-free filters."""

from .automata import EPSILON, Nfa
from .counter import CounterAutomaton
from .engine import (
    CheckerStats,
    DecisionReport,
    decide_substituted,
    log2_check,
    nrr_decide,
    rational_index,
    substitution_collapse,
)
from .errors import ContractError, InputError, UnsupportedFilterError
from .filters import FilterSpec, d1_counter, parse_filter_name
from .grammars import Cfg, format_grammar, parse_grammar
from .reductions import (
    MarkedNfa,
    bar_hillel,
    cs_transducer,
    height_bound,
    intersection_nonempty,
    intersection_shortest,
    mark_automaton,
    reduce_d2_to_ssharpup,
    ssharpup_embedding,
)
from .transducers import Transducer

__version__ = "0.1.0"

__all__ = [
    "EPSILON",
    "Nfa",
    "CounterAutomaton",
    "CheckerStats",
    "DecisionReport",
    "decide_substituted",
    "log2_check",
    "nrr_decide",
    "rational_index",
    "substitution_collapse",
    "ContractError",
    "InputError",
    "UnsupportedFilterError",
    "FilterSpec",
    "d1_counter",
    "parse_filter_name",
    "Cfg",
    "format_grammar",
    "parse_grammar",
    "MarkedNfa",
    "bar_hillel",
    "cs_transducer",
    "height_bound",
    "intersection_nonempty",
    "intersection_shortest",
    "mark_automaton",
    "reduce_d2_to_ssharpup",
    "ssharpup_embedding",
    "Transducer",
]
