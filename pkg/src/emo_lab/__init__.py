"""Evolutionary multi-objective algorithms on trap-style bitstring benchmarks.

A numpy/numba library with five algorithm engines (SEMO, GSEMO, NSGA-II,
NSGA-III, SMS-EMOA), the selection machinery they are built from, and a
seeded experiment harness for measuring hitting times of the bi-objective
trap's Pareto front.
"""

from .algorithms import (
    AlgoKind,
    AlgorithmConfig,
    GenerationTrace,
    RunResult,
    Trace,
    dedup_merge,
    gsemo_archive_update,
    initialize_population,
    run,
    run_gsemo,
    run_nsga2,
    run_nsga3,
    run_smsemoa,
)
from .core import (
    Dominance,
    Individual,
    bits_from_string,
    bits_to_string,
    bitstring,
    dominance_compare,
    dominates,
    ones_count,
    random_bitstring,
    zeros_count,
)
from .harness import (
    CSV_HEADER,
    CellSummary,
    ExperimentPlan,
    ExperimentResult,
    ScalingFit,
    derive_rng,
    derive_seed,
    fit_scaling,
    monotone_monitor,
    oracle_hypervolume_lattice,
    oracle_non_dominated_sort,
    parse_algo,
    parse_plan,
    run_experiment,
    save_scaling_plot,
    summarize,
)
from .hypervolume import (
    default_reference,
    hv_contribution,
    hv_contributions,
    hypervolume_2d,
    smsemoa_eject,
)
from .nsga3 import (
    NormalizationContext,
    ReferencePointSet,
    associate,
    compute_context,
    das_dennis,
    niching,
    normalize,
    ray_distance,
    unit_vectors,
)
from .problems import (
    ProblemInstance,
    evaluate_otzt,
    evaluate_trap,
    format_problem,
    front_covered,
    front_fitness,
    is_pareto_optimal,
    make_individual,
    one_trap_zero_trap,
    parse_problem,
)
from .ranking import (
    LayerPartition,
    crowding_distance,
    non_dominated_sort,
    nsga2_truncate,
    select_critical_layer,
)
from .variation import MutationKind, mutate, uniform_parent_select

__version__ = "0.1.0"
