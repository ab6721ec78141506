"""Workflow nets with interface nodes: modeling, reduction, verification.

The package models nets whose interface is carried by input and output
nodes rather than markings, contracts nested subnets drawn from four basic
shape classes until a normal form is reached, and decides membership in
the class of nets generated by substitution from those shapes.  Bounded
state exploration provides soundness verdicts with replayable witnesses at
desk scale.
"""

from .classes import ClassLabel, classify, has_and_property, has_or_property
from .fileio import (
    NetParseError,
    ParsedNet,
    export_dot,
    export_forest_dot,
    parse_forest,
    parse_net,
    serialize_forest,
    serialize_net,
    sniff_format,
)
from .generate import (
    BASIC_KINDS,
    GeneratedNet,
    GenerationRecipe,
    IdSource,
    generate_andor_net,
    generate_basic_net,
)
from .isomorphism import find_isomorphism, isomorphic
from .marking import (
    Marking,
    enabled_transitions,
    fire,
    input_marking,
    output_marking,
    replay,
)
from .nets import (
    Arc,
    FreshIds,
    InvalidNetError,
    IoType,
    Net,
    NodeId,
    ValidationReport,
    ancestors,
    descendants,
    fresh_name,
    is_acyclic,
    place_completion,
    reachable,
    require_wf,
    transition_completion,
    validate,
)
from .reduction import (
    Internal,
    Leaf,
    ReduceResult,
    RefinementTree,
    expand,
    find_contractible,
    is_andor,
    node_order,
    reduce_net,
)
from .soundness import (
    ReachabilityGraph,
    SoundnessVerdict,
    Witness,
    check_k_sound,
    check_star_sound_bounded,
    check_substitution_sound_bounded,
    explore_reachable,
    summarize_star,
)
from .subnets import (
    SubnetView,
    contract,
    is_well_nested,
    path_quotient_check,
    subnet_view,
)
from .substitution import substitute

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BASIC_KINDS",
    "ClassLabel",
    "FreshIds",
    "GeneratedNet",
    "GenerationRecipe",
    "IdSource",
    "Internal",
    "InvalidNetError",
    "IoType",
    "Leaf",
    "Marking",
    "Net",
    "NetParseError",
    "NodeId",
    "ParsedNet",
    "ReachabilityGraph",
    "ReduceResult",
    "RefinementTree",
    "SoundnessVerdict",
    "SubnetView",
    "ValidationReport",
    "Witness",
    "ancestors",
    "check_k_sound",
    "check_star_sound_bounded",
    "check_substitution_sound_bounded",
    "classify",
    "contract",
    "descendants",
    "enabled_transitions",
    "expand",
    "explore_reachable",
    "export_dot",
    "export_forest_dot",
    "find_contractible",
    "find_isomorphism",
    "fire",
    "fresh_name",
    "generate_andor_net",
    "generate_basic_net",
    "has_and_property",
    "has_or_property",
    "input_marking",
    "is_acyclic",
    "is_andor",
    "is_well_nested",
    "isomorphic",
    "node_order",
    "output_marking",
    "parse_forest",
    "parse_net",
    "path_quotient_check",
    "place_completion",
    "reachable",
    "reduce_net",
    "replay",
    "require_wf",
    "serialize_forest",
    "serialize_net",
    "sniff_format",
    "subnet_view",
    "substitute",
    "summarize_star",
    "transition_completion",
    "validate",
]
