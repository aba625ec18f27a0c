"""Seed derivation, experiment execution, statistics, and the oracles."""

import math

import numpy as np
import pytest

from emo_lab import (
    AlgorithmConfig,
    CSV_HEADER,
    ExperimentPlan,
    GenerationTrace,
    Individual,
    Trace,
    bitstring,
    derive_seed,
    fit_scaling,
    monotone_monitor,
    oracle_hypervolume_lattice,
    oracle_non_dominated_sort,
    parse_algo,
    parse_plan,
    run_experiment,
    summarize,
)
from emo_lab.algorithms import RunResult


def make_result(success, evaluations):
    return RunResult(
        success=success, evaluations=evaluations, generations=evaluations,
        monotone_violations=0, final_max_ones=0, final_max_zeros=0,
        trace=None, population=[],
    )


def test_derive_seed_is_stable_and_distinct():
    a = derive_seed(0, "nsga2:n=32", 0)
    assert a == derive_seed(0, "nsga2:n=32", 0)
    others = {
        derive_seed(0, "nsga2:n=32", 1),
        derive_seed(0, "nsga2:n=64", 0),
        derive_seed(1, "nsga2:n=32", 0),
    }
    assert a not in others and len(others) == 3


def synthetic_trace(max_ones, max_zeros):
    rows = []
    for i, (mo, mz) in enumerate(zip(max_ones, max_zeros)):
        rows.append([i, i + 1, mo, mz, 4, 0])
    return Trace(np.array(rows, dtype=np.int64))


def test_monotone_monitor_examples():
    assert monotone_monitor(synthetic_trace([5, 5, 5], [3, 3, 3])) == 0
    assert monotone_monitor(synthetic_trace([5, 6, 6, 7], [8, 8, 9, 9])) == 0
    assert monotone_monitor(synthetic_trace([5, 5], [8, 7])) == 1
    assert monotone_monitor(synthetic_trace([5, 4, 3], [8, 7, 8])) == 2


def test_monotone_monitor_accepts_record_streams():
    records = [
        GenerationTrace(t=0, evaluations=1, max_ones=5, max_zeros=8, population_size=4, front_coverage="none"),
        GenerationTrace(t=1, evaluations=2, max_ones=6, max_zeros=7, population_size=4, front_coverage="none"),
    ]
    assert monotone_monitor(records) == 1


def test_summarize_examples():
    s = summarize([make_result(False, 100), make_result(False, 100)])
    assert s.success_rate == 0.0
    assert s.mean is None and s.median is None and s.stddev is None

    s = summarize([make_result(True, 1000)])
    assert s.success_rate == 1.0
    assert s.mean == 1000 and s.median == 1000 and s.stddev == 0.0

    s = summarize([make_result(True, v) for v in (100, 200, 300)])
    assert s.mean == 200 and s.median == 200


def test_fit_scaling_exact_model():
    ns = [32, 64, 128]
    means = [2 * n * math.log(n) for n in ns]
    fit = fit_scaling(ns, means)
    assert fit.coefficient == pytest.approx(2.0)
    assert fit.max_relative_residual == pytest.approx(0.0, abs=1e-12)


def test_fit_scaling_flags_wrong_growth():
    ns = [32, 64, 128]
    quadratic = fit_scaling(ns, [float(n * n) for n in ns])
    assert quadratic.max_relative_residual > 0.3
    constant = fit_scaling(ns, [5000.0, 5000.0, 5000.0])
    assert constant.max_relative_residual > 0.3


def test_fit_scaling_input_validation():
    with pytest.raises(ValueError):
        fit_scaling([32, 64], [1.0, 2.0])
    with pytest.raises(ValueError):
        fit_scaling([32, 64, 128], [1.0, None, 2.0])


def raw_individual(fitness):
    return Individual(genotype=bitstring([1]), fitness=tuple(fitness))


def test_oracle_sort_shapes():
    incomparable = [raw_individual((i, 9 - i)) for i in range(6)]
    assert [len(l) for l in oracle_non_dominated_sort(incomparable)] == [6]
    chain = [raw_individual((i, i)) for i in range(5)]
    layers = oracle_non_dominated_sort(chain)
    assert [len(l) for l in layers] == [1] * 5
    assert layers[0][0].fitness == (4, 4)
    with pytest.raises(ValueError):
        oracle_non_dominated_sort([raw_individual((0, 0))] * 300)


def test_oracle_lattice_examples():
    assert oracle_hypervolume_lattice([(2, 3)], (0, 0)) == 6
    assert oracle_hypervolume_lattice([(2, 3), (3, 1)], (0, 0)) == 7
    assert oracle_hypervolume_lattice([(0, 5), (5, 0)], (0, 0)) == 0
    with pytest.raises(ValueError):
        oracle_hypervolume_lattice([(10000, 2)], (0, 0))


def tiny_plan(tmp_path, runs=3, budget=4000, out="results.csv"):
    return ExperimentPlan(
        algorithms=[
            ("nsga2", AlgorithmConfig(kind="nsga2", mu=4, init_excludes_front=True)),
            ("smsemoa", AlgorithmConfig(kind="smsemoa", mu=3, init_excludes_front=True)),
        ],
        ns=[8, 12],
        runs=runs,
        budget=budget,
        master_seed=7,
        output=str(tmp_path / out),
    )


def test_run_experiment_shape_and_summaries(tmp_path):
    plan = tiny_plan(tmp_path)
    outcome = run_experiment(plan, workers=2)
    lines = outcome.csv_text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 2 * 2 * 3  # cells x runs
    assert len(outcome.summaries) == 4
    for s in outcome.summaries:
        assert s.success_rate == 1.0
    assert (tmp_path / "results.csv").read_text() == outcome.csv_text


def test_run_experiment_is_deterministic(tmp_path):
    a = run_experiment(tiny_plan(tmp_path, out="a.csv"), workers=2)
    b = run_experiment(tiny_plan(tmp_path, out="b.csv"), workers=1)
    assert a.csv_text == b.csv_text
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_run_experiment_empty_plan_yields_header_only():
    plan = ExperimentPlan(algorithms=[], ns=[8], runs=2, budget=100)
    outcome = run_experiment(plan)
    assert outcome.csv_text == CSV_HEADER + "\n"
    assert outcome.summaries == []


def test_run_experiment_with_hopeless_budget():
    plan = ExperimentPlan(
        algorithms=[("nsga2", AlgorithmConfig(kind="nsga2", mu=4))],
        ns=[16],
        runs=3,
        budget=1,
    )
    outcome = run_experiment(plan)
    assert outcome.summaries[0].success_rate == 0.0
    for res in outcome.results:
        assert not res.success


def test_plan_validation():
    with pytest.raises(ValueError):
        ExperimentPlan(algorithms=[], ns=[16, 8], runs=1, budget=10)
    with pytest.raises(ValueError):
        ExperimentPlan(algorithms=[], ns=[8], runs=0, budget=10)
    with pytest.raises(ValueError):
        ExperimentPlan(algorithms=[], ns=[8], runs=1, budget=0)


def test_parse_algo_descriptors():
    label, cfg = parse_algo("nsga2,mu=8,mutation=local,dedup=off,init=exclude-front")
    assert label == "nsga2"
    assert cfg.mu == 8 and not cfg.dedup and cfg.init_excludes_front
    label, cfg = parse_algo("nsga3,mu=10,refpoints=das-dennis:p=4,label=nsga3-dd4")
    assert label == "nsga3-dd4"
    assert len(cfg.refpoints) == 5
    label, cfg = parse_algo("smsemoa,mu=3,hv-ref=-16/-16")
    assert cfg.hv_ref == (-16.0, -16.0)
    with pytest.raises(ValueError):
        parse_algo("nsga2,bogus=1")
    with pytest.raises(ValueError):
        parse_algo("")


def test_parse_plan_file(tmp_path):
    text = """
# a small grid
problem = otzt
ns = 8,12
runs = 2
budget = 5000
seed = 3
algo = nsga2,mu=4,dedup=on
algo = nsga3,mu=4,refpoints=units
"""
    path = tmp_path / "plan.txt"
    path.write_text(text)
    plan = parse_plan(str(path))
    assert plan.ns == [8, 12]
    assert plan.runs == 2 and plan.budget == 5000 and plan.master_seed == 3
    assert [label for label, _ in plan.algorithms] == ["nsga2", "nsga3"]
    outcome = run_experiment(plan)
    assert len(outcome.results) == 8


def test_parse_plan_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("runs = 2\nbudget = 10\n")
    with pytest.raises(ValueError):
        parse_plan(str(path))  # no ns, no algo
    path.write_text("nonsense = 1\n")
    with pytest.raises(ValueError):
        parse_plan(str(path))


def test_worker_count_resolution(monkeypatch):
    from emo_lab.harness import _resolve_workers

    monkeypatch.delenv("EMO_LAB_WORKERS", raising=False)
    assert _resolve_workers(3) == 3
    assert _resolve_workers(None) >= 1
    monkeypatch.setenv("EMO_LAB_WORKERS", "5")
    assert _resolve_workers(None) == 5
    assert _resolve_workers(2) == 2  # explicit argument wins


def test_masked_problem_template(tmp_path):
    mask = np.random.default_rng(0).integers(0, 2, size=12, dtype=np.uint8)
    mask_hex = np.packbits(mask).tobytes().hex()
    plan = ExperimentPlan(
        algorithms=[("nsga2", AlgorithmConfig(kind="nsga2", mu=4, init_excludes_front=True))],
        ns=[12],
        runs=2,
        budget=50_000,
        problem=f"otzt:mask={mask_hex}",
    )
    outcome = run_experiment(plan)
    assert outcome.summaries[0].success_rate == 1.0
    assert f"mask={mask_hex}" in outcome.csv_text
