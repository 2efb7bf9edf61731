"""Exact point placement on a line from pairwise distance queries."""

from .model import Placement, Ppg, QueryEdge, canonicalize, load_instance, dump_instance
from .rigidity import (InstanceTooLarge, UnderdeterminedGraph, check_theorem1_equivalence,
                       enumerate_layer_drawings, enumerate_sign_vectors, is_line_rigid,
                       solve_all_placements)
from .conditions import (ThreePathLengths, appendixA_replacement_conditions, check_four_cycle,
                         check_three_path, lemma2_condition_sets, seven_cycle_conditions)
from .algorithm import (AlgorithmReport, VerificationFailed, build_round1_plan, expected_counts,
                        run_quadrilateral_baseline, run_triangle_baseline, run_two_round)
from .oracles import AdversaryOracle, HiddenInstance, HonestOracle, Transcript, adversary_verdict
from .lowerbound import attack_table, check_lemma4, density, extract_degree2_paths
from .dot import export_dot

__all__ = [
    "adversary_verdict",
    "AdversaryOracle",
    "AlgorithmReport",
    "appendixA_replacement_conditions",
    "attack_table",
    "build_round1_plan",
    "canonicalize",
    "check_four_cycle",
    "check_lemma4",
    "check_theorem1_equivalence",
    "check_three_path",
    "density",
    "dump_instance",
    "enumerate_layer_drawings",
    "enumerate_sign_vectors",
    "expected_counts",
    "export_dot",
    "extract_degree2_paths",
    "HiddenInstance",
    "HonestOracle",
    "InstanceTooLarge",
    "is_line_rigid",
    "lemma2_condition_sets",
    "load_instance",
    "Placement",
    "Ppg",
    "QueryEdge",
    "run_quadrilateral_baseline",
    "run_triangle_baseline",
    "run_two_round",
    "seven_cycle_conditions",
    "solve_all_placements",
    "ThreePathLengths",
    "Transcript",
    "UnderdeterminedGraph",
    "VerificationFailed",
]

__version__ = "0.1.0"
