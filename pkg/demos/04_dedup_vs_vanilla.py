"""Deduplication is the difference between covering and stagnating.

Without it, copies of the first optimum found flood the top layer and
the survivors of the other slope die out; the second optimum then needs
an all-bits jump.  With it, duplicates are rejected on merge and the two
extreme lineages survive every generation.
"""

import numpy as np

from emo_lab import AlgorithmConfig, ExperimentPlan, run_experiment

plan = ExperimentPlan(
    algorithms=[
        ("nsga2-dedup", AlgorithmConfig(kind="nsga2", mu=4, dedup=True, init_excludes_front=True)),
        ("nsga2-vanilla", AlgorithmConfig(kind="nsga2", mu=4, dedup=False, init_excludes_front=True)),
        ("smsemoa-dedup", AlgorithmConfig(kind="smsemoa", mu=3, dedup=True, init_excludes_front=True)),
        ("smsemoa-vanilla", AlgorithmConfig(kind="smsemoa", mu=3, dedup=False, init_excludes_front=True)),
    ],
    ns=[48],
    runs=20,
    budget=300_000,
    master_seed=1,
)

print("=== n=48, 20 runs, budget 300000 evaluations ===")
outcome = run_experiment(plan)
print(f"{'algo':<16} {'success':>8} {'mean evals':>12} {'median':>10}")
for s in outcome.summaries:
    mean = f"{s.mean:.0f}" if s.mean is not None else "-"
    median = f"{s.median:.0f}" if s.median is not None else "-"
    print(f"{s.label:<16} {s.success_rate:>8.2f} {mean:>12} {median:>10}")

print()
print("nearly every vanilla run spends the whole budget without assembling")
print("both optima (an occasional run gets lucky in the first generations),")
print("while the deduplicating variants finish in a few thousand evaluations")
