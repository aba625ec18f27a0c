"""One seeded run of each algorithm on the same instance.

The archive algorithms (SEMO, GSEMO) delete dominated points, so the
first optimum they find wipes out the whole population and the second
optimum is out of reach.  The population-based algorithms keep dominated
solutions in ranked layers and, with genotype deduplication, walk both
slopes of the trap at once.
"""

import numpy as np

from emo_lab import AlgorithmConfig, one_trap_zero_trap, run

n = 32
budget = 200_000
inst = one_trap_zero_trap(n)

print(f"=== one run each, n={n}, budget={budget} evaluations ===")
print(f"{'algo':<10} {'success':>8} {'evals':>9} {'gens':>9} {'final max ones/zeros':>22}")
for kind, mu in (("semo", 1), ("gsemo", 1), ("nsga2", 4), ("nsga3", 4), ("smsemoa", 3)):
    cfg = AlgorithmConfig(kind=kind, mu=mu, init_excludes_front=True)
    res = run(inst, cfg, budget, np.random.default_rng(0))
    print(f"{kind:<10} {str(res.success):>8} {res.evaluations:>9} {res.generations:>9} "
          f"{res.final_max_ones:>11}/{res.final_max_zeros}")

# The trace records one row per generation; watching max_ones/max_zeros
# shows the two-sided climb of the deduplicating algorithms.
print()
print("=== NSGA-II trace excerpt (every 25th generation) ===")
cfg = AlgorithmConfig(kind="nsga2", mu=4, init_excludes_front=True)
res = run(inst, cfg, budget, np.random.default_rng(0))
print("t,evals,max_ones,max_zeros,pop_size,coverage")
for rec in list(res.trace.records())[::25]:
    print(f"{rec.t},{rec.evaluations},{rec.max_ones},{rec.max_zeros},"
          f"{rec.population_size},{rec.front_coverage}")
last = res.trace.record(len(res.trace) - 1)
print(f"{last.t},{last.evaluations},{last.max_ones},{last.max_zeros},"
      f"{last.population_size},{last.front_coverage}")

# GSEMO's collapse, visible in the population-size column.
print()
print("=== GSEMO archive collapse ===")
res = run(inst, AlgorithmConfig(kind="gsemo"), budget, np.random.default_rng(3))
sizes = res.trace.population_size
cov = res.trace.coverage
first = int(np.argmax(cov >= 1)) if (cov >= 1).any() else None
if first is None:
    print("no optimum found within the budget (try another seed)")
else:
    print(f"archive size just before an optimum appeared: {int(sizes[first - 1])}")
    print(f"archive size from then on: {set(sizes[first:].tolist())}")
