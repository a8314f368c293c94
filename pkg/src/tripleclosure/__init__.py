"""Rooted-triple consistency, closure and minimum representative sets."""

from .ahograph import Ahograph, build_ahograph, components, is_bridge_triple
from .build import InconsistentError, build_tree, is_consistent
from .closure import (
    ComponentPair,
    LmaxTable,
    NotInClosureError,
    closure_baseline,
    closure_fast,
    in_closure,
    lmax,
    lmax_all,
    triples_between,
)
from .core import (
    LabelTable,
    LeafId,
    Node,
    RootedTree,
    Triple,
    TripleSet,
    displayed_triples,
    displays,
    hierarchy,
    parse_newick,
    parse_triple_file,
    refines,
    to_newick,
    trees_equal,
)
from .representative import (
    greedy_max_weight_basis,
    greedy_min_rep,
    is_minimal_representative,
    is_representative,
    mandatory_triples,
)

__version__ = "0.1.0"

__all__ = [
    "Ahograph",
    "build_ahograph",
    "components",
    "is_bridge_triple",
    "InconsistentError",
    "build_tree",
    "is_consistent",
    "ComponentPair",
    "LmaxTable",
    "NotInClosureError",
    "closure_baseline",
    "closure_fast",
    "in_closure",
    "lmax",
    "lmax_all",
    "triples_between",
    "LabelTable",
    "LeafId",
    "Node",
    "RootedTree",
    "Triple",
    "TripleSet",
    "displayed_triples",
    "displays",
    "hierarchy",
    "parse_newick",
    "parse_triple_file",
    "refines",
    "to_newick",
    "trees_equal",
    "greedy_max_weight_basis",
    "greedy_min_rep",
    "is_minimal_representative",
    "is_representative",
    "mandatory_triples",
]
