"""Equilibria of linear-quadratic network games and the calculus of
interventions on them: node removal, link surgery, bridges, and walk counts.
"""

from .bridge import (
    BridgeScore,
    LinkValue,
    bridge_index,
    joined_network,
    key_bridge,
    link_value_existing,
    link_value_potential,
    pareto_frontier,
    rank_bridges,
)
from .centrality import (
    CentralityReport,
    LeontiefBlock,
    katz_bonacich,
    leontief_block,
    leontief_matrix,
)
from .extensions import (
    CongestionSpec,
    GlobalSubstitutionSpec,
    MultiActivitySpec,
    certify_congestion,
    certify_global_substitution,
    certify_multi_activity,
    congestion_equilibrium,
    global_substitution_equilibrium,
    multi_activity_equilibrium,
)
from .graphs import (
    GameSpec,
    GraphFormatError,
    InputError,
    InternalCheckError,
    NetsurgeonError,
    Network,
    NodeSet,
    SpectralConditionError,
    certify,
    label_key,
    load_network,
    parse_edge_list,
    spectral_radius,
)
from .intervene import (
    CharacteristicIntervention,
    EffectReport,
    StructuralIntervention,
    characteristic_effect,
    equivalent_theta,
    hybrid_effect,
    structural_effect,
    sufficient_increase_check,
)
from .keygroup import (
    GroupScore,
    dominance_prune,
    intercentrality,
    key_group_exhaustive,
    key_group_greedy,
)
from .reference import TABLE_IDS, fixture_is_valid, load_fixture, reproduce
from .walks import (
    WalkMatrix,
    avoidance_block,
    enumerate_avoiding_walks,
    intercentrality_decomposition,
    truncation_tail_bound,
    walk_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BridgeScore",
    "CentralityReport",
    "CharacteristicIntervention",
    "CongestionSpec",
    "EffectReport",
    "GameSpec",
    "GlobalSubstitutionSpec",
    "GraphFormatError",
    "GroupScore",
    "InputError",
    "InternalCheckError",
    "LeontiefBlock",
    "LinkValue",
    "MultiActivitySpec",
    "NetsurgeonError",
    "Network",
    "NodeSet",
    "SpectralConditionError",
    "StructuralIntervention",
    "TABLE_IDS",
    "WalkMatrix",
    "avoidance_block",
    "bridge_index",
    "certify",
    "certify_congestion",
    "certify_global_substitution",
    "certify_multi_activity",
    "characteristic_effect",
    "congestion_equilibrium",
    "dominance_prune",
    "enumerate_avoiding_walks",
    "equivalent_theta",
    "fixture_is_valid",
    "global_substitution_equilibrium",
    "hybrid_effect",
    "intercentrality",
    "intercentrality_decomposition",
    "joined_network",
    "katz_bonacich",
    "key_bridge",
    "key_group_exhaustive",
    "key_group_greedy",
    "label_key",
    "leontief_block",
    "leontief_matrix",
    "link_value_existing",
    "link_value_potential",
    "load_fixture",
    "load_network",
    "multi_activity_equilibrium",
    "pareto_frontier",
    "parse_edge_list",
    "rank_bridges",
    "reproduce",
    "spectral_radius",
    "structural_effect",
    "sufficient_increase_check",
    "truncation_tail_bound",
    "walk_matrix",
]
