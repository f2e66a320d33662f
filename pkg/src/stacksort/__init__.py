"""Deciding and witnessing sortability by two stacks in series."""

from .accessibility import AccessibilityInstance, PreconditionError, is_accessible, is_accessible_fast
from .generate import random_permutation, random_sortable
from .graph import (
    LabelAllocator,
    SortingGraph,
    check_invariants,
    compute_g1,
    decide,
    extract_witness,
    is_sortable,
    is_sortable_naive,
    naive_configuration_sets,
    sorting_graph,
)
from .machine import (
    ExtendedConfiguration,
    IllegalMoveError,
    MachineState,
    StackConfiguration,
    Word,
    is_poppable,
    parse_word,
    pop_word,
    run_word,
    search_accessible,
    sorts,
    stack_configs,
)
from .oracle import brute_force_sortable, count_sortable, count_sorting_words
from .perm import Permutation, parse_permutation, rtl_minima, step_context, theta_decompose, upper_left
from .pushall import pushall_configs, pushall_word

__version__ = "0.1.0"
