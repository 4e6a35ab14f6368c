"""Degree-profile matching of correlated random graphs.

Samples correlated graph (and Gaussian-matrix) pairs with a hidden vertex
correspondence, builds neighbor-degree signatures, computes pairwise
signature distances under several variants, and recovers the
correspondence by row-wise nearest neighbor.  `BACKEND` names the active
distance-kernel implementation ("compiled" or "python"; set
DPMATCH_PURE_PYTHON=1 to force the fallback).
"""

from ._backend import BACKEND
from .checks import (SymSumDistribution, TOL, check_bern_to_sym,
                     check_compare_f, check_control_f, check_control_h,
                     check_monotone_f, cycd, f_n, g_eval, g_identity_check)
from .distances import (DistanceMatrix, VARIANT_KINDS, compute_distance,
                        distance_bin, distance_cdf, distance_cyclic,
                        distance_disc, distance_gaussian,
                        distance_numeric_oracle, distance_ref)
from .harness import (CSV_HEADER, ExperimentConfig, PRESET_NAMES, ResultRow,
                      VariantSpec, default_config, default_grid, default_l,
                      default_variants, emit_csv, emit_svg, gaussian_l,
                      parse_result_csv, run_experiment, run_fig1, run_fig2,
                      run_fig3, run_gaussian, run_realdata)
from .ingest import (EdgeList, common_topk_by_degree, induced_subgraph,
                     load_graph, parse_edge_list, save_graph,
                     symmetrize_and_restrict, vertices_by_id)
from .matching import (MatchResult, accuracy, dump_match_csv, match_lenient,
                       match_strict, oblivious_check)
from .models import (CorrelatedModelSpec, CorrelatedPair, DEFAULT_ALPHA,
                     GaussianPair, GaussianPairSpec, Graph, chunglu_spec,
                     er_spec, expected_degrees, gaussian_spec,
                     inverse_sqrt_spec, min_expected_degree,
                     powerlaw_weights, relabel, sample_correlated_bernoulli,
                     sample_gaussian_pair, sample_pair, sbm_spec,
                     spec_from_json, subsample_pair)
from .signatures import (LandmarkTable, Signature, arc_segments,
                         ball_support, build_landmarks, build_signature,
                         cyclic_arc, frac, segments_measure,
                         signature_matrix)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CSV_HEADER", "CorrelatedModelSpec", "CorrelatedPair",
    "DEFAULT_ALPHA", "DistanceMatrix", "EdgeList", "ExperimentConfig",
    "GaussianPair", "GaussianPairSpec", "Graph", "LandmarkTable",
    "MatchResult", "PRESET_NAMES", "ResultRow", "Signature",
    "SymSumDistribution", "TOL", "VARIANT_KINDS", "VariantSpec", "accuracy",
    "arc_segments", "ball_support", "build_landmarks", "build_signature",
    "check_bern_to_sym", "check_compare_f", "check_control_f",
    "check_control_h", "check_monotone_f", "chunglu_spec",
    "common_topk_by_degree", "compute_distance", "cycd", "cyclic_arc",
    "default_config", "default_grid", "default_l", "default_variants",
    "distance_bin", "distance_cdf",
    "distance_cyclic", "distance_disc", "distance_gaussian",
    "distance_numeric_oracle", "distance_ref", "dump_match_csv", "emit_csv",
    "emit_svg", "er_spec", "expected_degrees", "f_n", "frac", "g_eval",
    "g_identity_check", "gaussian_l", "gaussian_spec", "induced_subgraph",
    "inverse_sqrt_spec", "load_graph", "match_lenient", "match_strict",
    "min_expected_degree", "oblivious_check", "parse_edge_list",
    "parse_result_csv", "powerlaw_weights", "relabel", "run_experiment",
    "run_fig1", "run_fig2", "run_fig3", "run_gaussian", "run_realdata",
    "sample_correlated_bernoulli", "sample_gaussian_pair", "sample_pair",
    "save_graph", "sbm_spec", "segments_measure", "signature_matrix",
    "spec_from_json", "subsample_pair", "symmetrize_and_restrict",
    "vertices_by_id",
]
