from .diffusion import simulate_ic_once, estimate_spread, exact_spread_small
from .proxy import edv, tis, one_hop_influence, Transformation, make_transformations
from .evo import (
    Individual,
    Population,
    init_population,
    two_point_crossover,
    mutate,
    repair,
    elitist_select,
)
from .relationship import RelationshipMatrix, estimate_relationship, time_relationship
from .mtefim import transfer, run, run_named
from .selection import soss, mcss
from .baselines import (
    degree_select,
    pagerank_select,
    degree_discount_select,
    celf_select,
    naive_greedy_select,
    single_transformation_ea,
)
from .stats import spearman, wilcoxon_rank_sum
from .bench import spearman_similarity, run_experiment, parse_method

__all__ = [
    "simulate_ic_once",
    "estimate_spread",
    "exact_spread_small",
    "edv",
    "tis",
    "one_hop_influence",
    "Transformation",
    "make_transformations",
    "Individual",
    "Population",
    "init_population",
    "two_point_crossover",
    "mutate",
    "repair",
    "elitist_select",
    "RelationshipMatrix",
    "estimate_relationship",
    "time_relationship",
    "transfer",
    "run",
    "run_named",
    "soss",
    "mcss",
    "degree_select",
    "pagerank_select",
    "degree_discount_select",
    "celf_select",
    "naive_greedy_select",
    "single_transformation_ea",
    "spearman",
    "wilcoxon_rank_sum",
    "spearman_similarity",
    "run_experiment",
    "parse_method",
]
