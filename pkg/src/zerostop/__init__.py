"""Stopping strategies for the zero-sum permutation game.

A random ordering of a zero-sum multiset is revealed one element at a
time; the player stops once and collects the sum of the unrevealed part
(or, in the dual game, of the revealed part).
"""

from .combinatorics import (
    moser_table,
    payoff_upper_bound,
    reach_probability,
    threshold_value,
    w1_exact,
    w1_lower_bound,
    w3_closed_form,
    w3_exact,
)
from .engine import GameRun, SimReport, exact_expected_payoff, monte_carlo, play, shuffle
from .errors import DomainError, NonZeroSumError, ParseError, RefusalError, ZeroStopError
from .multiset import Multiset, PayoffMode, load_multiset
from .numerics import binomial, format_rational, parse_rational, to_decimal
from .reduction import balance_signs, f_value, reduce_to_binary
from .strategies import (
    Decision,
    MiddleStrategy,
    OptimalStrategy,
    ThresholdStrategy,
    build_tables,
    general_optimal_value,
)

__version__ = "0.1.0"
