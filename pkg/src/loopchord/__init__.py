"""Exact algebra of chord diagrams modulo the 1-term and 4-term relations."""

from .diagrams import (
    ChordDiagram,
    ChordSubset,
    DegreeLimitError,
    ElementaryMove,
    apply_elementary,
    boughs,
    chords_intersect,
    connect_sum,
    enumerate_diagrams,
    has_isolated_chord,
    is_share,
    parse_and_canonicalize,
)
from .graphs import (
    Graph,
    cycle_graph,
    cycle_rank_classify,
    graph_class_key,
    intersection_graph,
    path_graph,
    realizations_of,
    realize_graph,
    tadpole_graph,
)
from .algebra import (
    DiagramCombo,
    GraphCombo,
    RelationBasis,
    TensorCombo,
    build_primitive,
    coproduct,
    equivalent,
    four_term_relations,
    generalized_four_term,
    graph_kernel_check,
    one_term_relations,
    primitive_defect,
    reduce_combo,
    relation_basis,
)
from .laurent import InexactDivision, LaurentPoly
from .weights import (
    SkeinState,
    WeightEvaluator,
    eval_weight,
    normalize_state,
    resolve_chord,
    state_from_diagram,
)

__version__ = "0.1.0"

__all__ = [
    "ChordDiagram",
    "ChordSubset",
    "DegreeLimitError",
    "DiagramCombo",
    "ElementaryMove",
    "Graph",
    "GraphCombo",
    "InexactDivision",
    "LaurentPoly",
    "RelationBasis",
    "SkeinState",
    "TensorCombo",
    "WeightEvaluator",
    "apply_elementary",
    "boughs",
    "build_primitive",
    "chords_intersect",
    "connect_sum",
    "coproduct",
    "cycle_graph",
    "cycle_rank_classify",
    "enumerate_diagrams",
    "equivalent",
    "eval_weight",
    "four_term_relations",
    "generalized_four_term",
    "graph_class_key",
    "graph_kernel_check",
    "has_isolated_chord",
    "intersection_graph",
    "is_share",
    "normalize_state",
    "one_term_relations",
    "parse_and_canonicalize",
    "path_graph",
    "primitive_defect",
    "realizations_of",
    "realize_graph",
    "reduce_combo",
    "relation_basis",
    "resolve_chord",
    "state_from_diagram",
    "tadpole_graph",
]
