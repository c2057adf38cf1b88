"""Dempster-Shafer machinery with fractal belief entropy.

Mass assignments over bitmask frames, belief/plausibility/commonality
queries, probability transforms, splitting processes, combination rules,
a zoo of uncertainty measures, and a CLI that reproduces the package's
reference experiments.
"""

from .belief import BeliefInterval, bel, belief_interval, commonality, pl
from .combine import (
    ProductFocalStructure,
    ProductFrame,
    dempster_combine,
    disjunctive_combine,
    joint_fbbpa,
    joint_product,
)
from .core import (
    DiscreteDistribution,
    FocalSet,
    Frame,
    MassAssignment,
    enumerate_powerset,
    is_bayesian,
    parse_bpa,
    serialize_bpa,
)
from .errors import EvidenceError
from .experiments import EXPERIMENT_NAMES, ExperimentSpec, run_experiment
from .fb import (
    EntropyReport,
    FbBpa,
    decompose,
    fb_entropy,
    fb_entropy_sparse,
    fbbpa,
    max_fb_entropy,
    shannon_entropy,
)
from .measures import MEASURE_IDS, au, au_distribution, measure, nonspecificity
from .transforms import (
    SplitTrace,
    TraceStep,
    betp,
    iterate_split,
    negation_step,
    parametrized_split_step_3,
    pnpl,
    ptm_fusion_process,
    uniform_bpa,
    uniform_split_step,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BeliefInterval",
    "DiscreteDistribution",
    "EntropyReport",
    "EvidenceError",
    "EXPERIMENT_NAMES",
    "ExperimentSpec",
    "FbBpa",
    "FocalSet",
    "Frame",
    "MassAssignment",
    "MEASURE_IDS",
    "ProductFocalStructure",
    "ProductFrame",
    "SplitTrace",
    "TraceStep",
    "au",
    "au_distribution",
    "bel",
    "belief_interval",
    "betp",
    "commonality",
    "decompose",
    "dempster_combine",
    "disjunctive_combine",
    "enumerate_powerset",
    "fb_entropy",
    "fb_entropy_sparse",
    "fbbpa",
    "is_bayesian",
    "iterate_split",
    "joint_fbbpa",
    "joint_product",
    "max_fb_entropy",
    "measure",
    "negation_step",
    "nonspecificity",
    "parametrized_split_step_3",
    "parse_bpa",
    "pl",
    "pnpl",
    "ptm_fusion_process",
    "run_experiment",
    "serialize_bpa",
    "shannon_entropy",
    "uniform_bpa",
    "uniform_split_step",
    "write_trace_csv",
]
