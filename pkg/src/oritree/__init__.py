"""Executable theory of oriented-tree embeddings in digraphs without
oriented 4-cycles: hypothesis checks, a certified constructive embedder
with repair moves, a brute-force oracle, extremal-instance generators,
pseudo-semidegree peeling and a CLI.
"""

from .digraph import (Digraph, DegreeProfile, build_digraph, degree_profile,
                      is_oriented, load_digraph, reverse, save_digraph,
                      underlying_distance)
from .cycles import (CycleMode, CycleWitness, FourCycleType, classify_cycle,
                     cycle_type_counts, cycle_types_present,
                     find_forbidden_cycle, is_c4_free, is_c4_star_free,
                     underlying_girth)
from .trees import (OrientedTree, StrippingSequence, StripStep, anchor_vertex,
                    build_tree, core_subtree, diameter, is_antidirected,
                    is_out_arborescence, leaves, load_tree,
                    partition_classes, penultimate_vertices, reverse_tree,
                    save_tree, stripping_sequence)
from .embedder import (EmbedMode, EmbedOptions, EmbedReport, EmbedState,
                       EmbedStatus, Embedding, HypothesisReport,
                       check_hypotheses, embed_core, embed_tree,
                       extend_direct, repair_case_a, repair_case_b,
                       validate_embedding)
from .oracle import OracleResult, oracle_embed
from .catalog import TreeCatalog, canonical_form, enumerate_oriented_trees
from .generators import (derive_seed, gen_blowup_cycle, gen_girth6_digon_host,
                         gen_oriented_girth6_host, gen_random_digraph,
                         gen_random_tree, gen_two_clique_host)
from .peeling import (PeelEvent, PeelTrace, corollary6_pipeline,
                      peel_to_pseudo_semidegree)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Digraph", "DegreeProfile", "build_digraph", "degree_profile",
    "is_oriented", "load_digraph", "reverse", "save_digraph",
    "underlying_distance",
    "CycleMode", "CycleWitness", "FourCycleType", "classify_cycle",
    "cycle_type_counts", "cycle_types_present", "find_forbidden_cycle",
    "is_c4_free", "is_c4_star_free", "underlying_girth",
    "OrientedTree", "StrippingSequence", "StripStep", "anchor_vertex",
    "build_tree", "core_subtree", "diameter", "is_antidirected",
    "is_out_arborescence", "leaves", "load_tree", "partition_classes",
    "penultimate_vertices", "reverse_tree", "save_tree",
    "stripping_sequence",
    "EmbedMode", "EmbedOptions", "EmbedReport", "EmbedState", "EmbedStatus",
    "Embedding", "HypothesisReport", "check_hypotheses", "embed_core",
    "embed_tree", "extend_direct", "repair_case_a", "repair_case_b",
    "validate_embedding",
    "OracleResult", "oracle_embed",
    "TreeCatalog", "canonical_form", "enumerate_oriented_trees",
    "derive_seed", "gen_blowup_cycle", "gen_girth6_digon_host",
    "gen_oriented_girth6_host", "gen_random_digraph", "gen_random_tree",
    "gen_two_clique_host",
    "PeelEvent", "PeelTrace", "corollary6_pipeline",
    "peel_to_pseudo_semidegree",
    "errors",
]
