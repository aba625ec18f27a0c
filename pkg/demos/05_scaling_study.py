"""Hitting-time scaling of the deduplicating algorithms.

Mean evaluations to cover the front are measured over a grid of problem
sizes and fitted against the c * n * ln(n) model; the relative residual
says how well the growth matches.  Writes an SVG plot next to this file.
"""

import math
import os

import numpy as np

from emo_lab import (
    AlgorithmConfig,
    ExperimentPlan,
    fit_scaling,
    run_experiment,
    save_scaling_plot,
)

ns = [16, 32, 64, 128]
plan = ExperimentPlan(
    algorithms=[("nsga2", AlgorithmConfig(kind="nsga2", mu=4, init_excludes_front=True))],
    ns=ns,
    runs=30,
    budget=10_000_000,
    master_seed=0,
)

print(f"=== NSGA-II (mu=4, dedup) over n in {ns}, 30 runs each ===")
outcome = run_experiment(plan)
means = [s.mean for s in outcome.summaries]
print(f"{'n':>5} {'mean':>10} {'median':>10} {'stddev':>10}")
for s in outcome.summaries:
    print(f"{s.n:>5} {s.mean:>10.0f} {s.median:>10.0f} {s.stddev:>10.0f}")

fit = fit_scaling(ns, means)
print()
print(f"fit: mean ~ {fit.coefficient:.2f} * n * ln(n), "
      f"max relative residual {fit.max_relative_residual:.3f}")
for n, mean in zip(ns, means):
    model = fit.coefficient * n * math.log(n)
    print(f"  n={n:>3}: measured {mean:>8.0f}  model {model:>8.0f}")

out = os.path.join(os.path.dirname(__file__), "scaling.svg")
save_scaling_plot(out, ns, means, fit)
print()
print(f"wrote {out}")
