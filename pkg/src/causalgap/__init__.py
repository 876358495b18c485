"""Graphical and entropic tests for gaps between classical and post-classical causal models."""

from .ci import CiRelation, CiSet, ci_consistent, observed_ci_relations
from .dist import (
    CausalModel,
    DiscreteDistribution,
    conditional_mutual_information,
    intervene_exogenous,
    marginalize,
    shannon_entropy,
)
from .finegrained import fine_grained_lhs_eq1, tilde_p, tilde_p_prime
from .graph import Gdag, Skeleton, canonical_projection, d_separated, e_separated, skeleton
from .interesting import ClassifyOptions, EsepCertificate, Verdict, classify, esep_search, esep_witness

__all__ = [
    "CausalModel",
    "CiRelation",
    "CiSet",
    "ClassifyOptions",
    "DiscreteDistribution",
    "EsepCertificate",
    "Gdag",
    "Skeleton",
    "Verdict",
    "canonical_projection",
    "ci_consistent",
    "classify",
    "conditional_mutual_information",
    "d_separated",
    "e_separated",
    "esep_search",
    "esep_witness",
    "fine_grained_lhs_eq1",
    "intervene_exogenous",
    "marginalize",
    "observed_ci_relations",
    "shannon_entropy",
    "skeleton",
    "tilde_p",
    "tilde_p_prime",
]
