"""GSEMO variants with self-adaptive mutation on bi-objective benchmarks."""

from ._version import __version__
from .adaptation import (
    LogNormalState,
    TwoRateState,
    VarCtrlState,
    flip,
    lognormal_perturb,
    sample_binomial_gt0,
    sample_normal_gt0,
    two_rate_update,
    var_ctrl_update,
)
from .algorithms import (
    AGSEMO,
    ALGORITHMS,
    DEFAULT_BUDGET,
    GenerationReport,
    LogNormalGSEMO,
    StaticGSEMO,
    TwoRateGSEMO,
    VarCtrlGSEMO,
    make_algorithm,
)
from .archive import Archive, Individual
from .core import (
    Bitstring,
    ObjectiveVector,
    hamming_distance,
    strictly_dominates,
    weakly_dominates,
)
from .harness import (
    BatchResult,
    RunConfig,
    RunRecord,
    export,
    first_hit_grid,
    mix_seed,
    run_batch,
)
from .indicators import (
    HV_REFERENCE,
    MetricKind,
    OneObjState,
    hypervolume_2d,
    igd,
    parse_metric,
    score,
    tick_oneobj,
)
from .problems import COCZ, LOTZ, PROBLEMS, OneMinMax, Problem, make_problem
from .stats import SampleSummary, mann_whitney_u, summarize

__all__ = [
    "__version__",
    "AGSEMO",
    "ALGORITHMS",
    "Archive",
    "BatchResult",
    "Bitstring",
    "COCZ",
    "DEFAULT_BUDGET",
    "GenerationReport",
    "HV_REFERENCE",
    "Individual",
    "LOTZ",
    "LogNormalGSEMO",
    "LogNormalState",
    "MetricKind",
    "ObjectiveVector",
    "OneMinMax",
    "OneObjState",
    "PROBLEMS",
    "Problem",
    "RunConfig",
    "RunRecord",
    "SampleSummary",
    "StaticGSEMO",
    "TwoRateGSEMO",
    "TwoRateState",
    "VarCtrlGSEMO",
    "VarCtrlState",
    "export",
    "first_hit_grid",
    "flip",
    "hamming_distance",
    "hypervolume_2d",
    "igd",
    "lognormal_perturb",
    "make_algorithm",
    "make_problem",
    "mann_whitney_u",
    "mix_seed",
    "parse_metric",
    "run_batch",
    "sample_binomial_gt0",
    "sample_normal_gt0",
    "score",
    "strictly_dominates",
    "summarize",
    "tick_oneobj",
    "two_rate_update",
    "var_ctrl_update",
    "weakly_dominates",
]
