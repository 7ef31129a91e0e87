"""cascadelab: generate, attack, and analyze homophyly security networks.

A numpy/scipy laboratory for threshold-cascade security of networks:
three generators (Erdős–Rényi, preferential attachment, and the
homophyly/randomness/PA security model), two attack semantics (threshold
cascades and physical node removal), and the structural measurements that
explain why the security model contains cascades (communities,
conductance, degree priority, power laws, distances, the community
priority tree, and seed-routed navigation).
"""

__version__ = "0.1.0"

from .cascade import (CascadeOutcome, CommunityStrength, ThresholdAssignment,
                      classify_community, count_vulnerable, infection_set,
                      injury_set, random_thresholds, security_threshold,
                      top_degree_nodes, uniform_thresholds)
from .experiment import (ConfigError, ExperimentConfig, ExperimentResult,
                         attack_size, config_from_values, default_config,
                         parse_config_file, run_experiment, run_fig1,
                         run_fig2, run_fig3)
from .generators import (GenParams, attachment_probability,
                         expected_seed_count, gen_er, gen_pa, gen_security,
                         generate)
from .graph import (EdgeTag, GraphFormatError, LabeledGraph, degree,
                    deserialize, largest_connected_component, load_graph,
                    save_graph, serialize)
from .seeding import derive_seed, derive_trial_seed, rng_from, splitmix64
from .structure import (Community, CommunityConductance, DegreeProfile,
                        DistanceStats, NavigationResult, PowerlawFit,
                        PriorityTree, communities, community_conductances,
                        community_diameters, conductance, degree_profile,
                        distance_stats, infection_priority_tree, navigate,
                        powerlaw_exponent)

__all__ = [
    "__version__",
    # graph core
    "LabeledGraph", "EdgeTag", "GraphFormatError", "degree",
    "largest_connected_component", "serialize", "deserialize",
    "save_graph", "load_graph",
    # generators
    "GenParams", "gen_er", "gen_pa", "gen_security", "generate",
    "attachment_probability", "expected_seed_count",
    # cascade engine
    "ThresholdAssignment", "CascadeOutcome", "CommunityStrength",
    "uniform_thresholds", "random_thresholds", "infection_set",
    "injury_set", "top_degree_nodes", "security_threshold",
    "classify_community", "count_vulnerable",
    # structure metrics
    "Community", "CommunityConductance", "DegreeProfile", "DistanceStats",
    "NavigationResult", "PowerlawFit", "PriorityTree", "communities",
    "community_conductances", "community_diameters", "conductance",
    "degree_profile", "distance_stats", "infection_priority_tree",
    "navigate", "powerlaw_exponent",
    # experiment harness
    "ExperimentConfig", "ExperimentResult", "ConfigError", "attack_size",
    "config_from_values", "default_config", "parse_config_file",
    "run_experiment", "run_fig1", "run_fig2", "run_fig3",
    # seeding
    "derive_seed", "derive_trial_seed", "rng_from", "splitmix64",
]
