"""Simulate alternating Turing machines with output, count their distinct
valid outputs, and compile them into tree automata whose languages have the
same size."""
from .ato_core import (AtoMachine, Configuration, ResourceBounds, TransitionRule, classify,
                       initial_configuration, parse_machine, serialize_machine, successors,
                       validate_machine)
from .comp_dag import ComputationDag, build_dag, dag_stats, export_edges
from .computation import (ComputationTree, check_well_behaved, enumerate_computations,
                          extract_output, is_accepting_computation, span_exact)
from .errors import (BoundViolation, CapExceeded, CycleError, IllegalInput, MachineSyntaxError,
                     MachineValidationError, NftaSyntaxError, SpanTLError, TreeSyntaxError)
from .nfta import (DetBottomUpTa, Nfta, accepts, count_exact, determinize, enumerate_accepted,
                   parse_nfta, serialize_nfta)
from .reduction import build_nfta, size_bound, tuple_product
from .trees import (CanonicalCode, Tree, canonical_code, canonical_form, parse_tree,
                    serialize_tree, tree_size, validate_k_tree)

__version__ = "0.1.0"
