"""Self-check suites: oracle equivalences and structural property tests.

Each suite draws randomized (seeded) or exhaustive instances, checks the
fast path against an independent brute-force oracle or a required
structural property, and reports the first counterexample if any.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algorithms import AlgoKind, AlgorithmConfig, Trace, run
from .core import Dominance, Individual, bitstring, dominance_compare
from .harness import (
    derive_rng,
    monotone_monitor,
    oracle_hypervolume_lattice,
    oracle_non_dominated_sort,
)
from .hypervolume import default_reference, hv_contributions, hypervolume_2d
from .problems import evaluate_otzt, front_fitness, one_trap_zero_trap
from .ranking import non_dominated_sort

__all__ = [
    "SUITES",
    "SuiteReport",
    "run_suite",
    "verify_dominance_structure",
    "verify_extreme_contribution",
    "verify_hypervolume",
    "verify_monotone",
    "verify_sorting",
]


@dataclass
class SuiteReport:
    name: str
    passed: bool
    checks: int
    failure: str | None = None


def _random_individuals(rng: np.random.Generator, count: int, n: int) -> list:
    inst = one_trap_zero_trap(n)
    members = []
    for _ in range(count):
        bits = bitstring(rng.integers(0, 2, size=n, dtype=np.uint8))
        members.append(Individual(genotype=bits, fitness=evaluate_otzt(inst, bits)))
    return members


def verify_sorting(samples: int = 10_000, seed: int = 0) -> SuiteReport:
    """Layer partition equals the repeated-peeling oracle on random multisets."""
    rng = np.random.default_rng(seed)
    for i in range(samples):
        count = int(rng.integers(1, 65))
        n = int(rng.integers(2, 11))
        members = _random_individuals(rng, count, n)
        fast = non_dominated_sort(members)
        slow = oracle_non_dominated_sort(members)
        fast_ids = [[id(m) for m in layer] for layer in fast]
        slow_ids = [[id(m) for m in layer] for layer in slow]
        if fast_ids != slow_ids:
            detail = f"instance {i}: layer sizes {[len(l) for l in fast]} vs {[len(l) for l in slow]}"
            return SuiteReport("sorting", False, i + 1, detail)
    return SuiteReport("sorting", True, samples)


def verify_hypervolume(samples: int = 10_000, seed: int = 0) -> SuiteReport:
    """Sweep hypervolume equals the unit-cell counting oracle exactly."""
    rng = np.random.default_rng(seed)
    for i in range(samples):
        count = int(rng.integers(1, 9))
        h = (int(rng.integers(-6, 1)), int(rng.integers(-6, 1)))
        points = [
            (int(rng.integers(h[0], 13)), int(rng.integers(h[1], 13)))
            for _ in range(count)
        ]
        fast = hypervolume_2d(points, h)
        slow = oracle_hypervolume_lattice(points, h)
        if fast != float(slow):
            return SuiteReport(
                "hypervolume", False, i + 1,
                f"points={points} h={h}: sweep {fast} vs lattice {slow}",
            )
    return SuiteReport("hypervolume", True, samples)


def verify_dominance_structure(max_n: int = 12) -> SuiteReport:
    """Exhaustive front structure of the bi-objective trap for small n.

    For every instance size up to ``max_n``: each of the two optima
    dominates every other point, the optima are mutually incomparable,
    and no two non-optimal points dominate each other.
    """
    checks = 0
    for n in range(1, max_n + 1):
        inst = one_trap_zero_trap(n)
        front = set(front_fitness(n))
        # Fitness depends only on the masked ones-count, so the 2^n points
        # collapse to the n + 1 distinct fitness vectors: pairwise checks
        # over these classes cover all genotype pairs.
        classes = []
        for m in range(n + 1):
            bits = bitstring([1] * m + [0] * (n - m))
            classes.append(evaluate_otzt(inst, bits))
        for i, u in enumerate(classes):
            for j, v in enumerate(classes):
                if i == j:
                    continue
                checks += 1
                rel = dominance_compare(u, v)
                if u in front and v in front:
                    if rel is not Dominance.INCOMPARABLE:
                        return SuiteReport(
                            "dominance-structure", False, checks,
                            f"n={n}: optima {u} vs {v} related as {rel.value}",
                        )
                elif u in front:
                    if rel is not Dominance.DOMINATES:
                        return SuiteReport(
                            "dominance-structure", False, checks,
                            f"n={n}: optimum {u} does not dominate {v}",
                        )
                elif v not in front:
                    if rel in (Dominance.DOMINATES, Dominance.DOMINATED_BY):
                        return SuiteReport(
                            "dominance-structure", False, checks,
                            f"n={n}: interior points {u}, {v} are comparable",
                        )
    return SuiteReport("dominance-structure", True, checks)


def random_interior_layer(rng: np.random.Generator, n: int, min_size: int = 3) -> list:
    """A random unique-fitness multiset of interior (non-optimal) points."""
    size = int(rng.integers(min_size, n))
    ones = rng.choice(np.arange(1, n), size=size, replace=False)
    inst = one_trap_zero_trap(n)
    members = []
    for m in sorted(int(v) for v in ones):
        bits = bitstring([1] * m + [0] * (n - m))
        members.append(Individual(genotype=bits, fitness=evaluate_otzt(inst, bits)))
    return members


def verify_extreme_contribution(
    layers: int = 1000, ns: Sequence[int] = (8, 16, 32), seed: int = 0
) -> SuiteReport:
    """On interior layers, both fitness extremes out-contribute every
    interior point's hypervolume contribution (default reference point)."""
    rng = np.random.default_rng(seed)
    checks = 0
    for n in ns:
        h = default_reference(n)
        for _ in range(layers):
            members = random_interior_layer(rng, n)
            contrib = hv_contributions(members, h)
            # members are sorted by ones-count: extremes sit at the ends
            lo, hi = contrib[0], contrib[-1]
            for inner in contrib[1:-1]:
                checks += 1
                if not (hi > inner and lo > inner):
                    fits = [m.fitness for m in members]
                    return SuiteReport(
                        "extreme-contribution", False, checks,
                        f"n={n} layer {fits}: contributions {contrib.tolist()}",
                    )
    return SuiteReport("extreme-contribution", True, checks)


def verify_monotone(seed: int = 0, runs: int = 5, n: int = 16, budget: int = 200_000) -> SuiteReport:
    """Monitor soundness plus zero violations for the dedup algorithms.

    First injects a synthetic trace with one known decrease and checks the
    monitor counts exactly it; then runs each deduplicating engine under
    its guarantee preconditions and requires zero violations.
    """
    synthetic = Trace(np.array(
        [[0, 1, 5, 8, 4, 0],
         [1, 2, 6, 7, 4, 0],   # max_zeros drops: one violation
         [2, 3, 6, 7, 4, 0]],
        dtype=np.int64,
    ))
    if monotone_monitor(synthetic) != 1:
        return SuiteReport("monotone", False, 1, "synthetic decrease not counted as exactly 1")

    inst = one_trap_zero_trap(n)
    configs = [
        ("nsga2", AlgorithmConfig(kind=AlgoKind.NSGA2, mu=4, init_excludes_front=True)),
        ("nsga3", AlgorithmConfig(kind=AlgoKind.NSGA3, mu=4, init_excludes_front=True)),
        ("smsemoa", AlgorithmConfig(kind=AlgoKind.SMSEMOA, mu=3, init_excludes_front=True)),
    ]
    checks = 1
    for label, cfg in configs:
        for ri in range(runs):
            res = run(inst, cfg, budget, derive_rng(seed, f"verify-{label}", ri))
            checks += 1
            if res.monotone_violations != 0:
                return SuiteReport(
                    "monotone", False, checks,
                    f"{label} run {ri}: {res.monotone_violations} violations",
                )
            if monotone_monitor(res.trace) != res.monotone_violations:
                return SuiteReport(
                    "monotone", False, checks,
                    f"{label} run {ri}: monitor and engine disagree",
                )
    return SuiteReport("monotone", True, checks)


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "sorting": verify_sorting,
    "hypervolume": verify_hypervolume,
    "dominance-structure": verify_dominance_structure,
    "extreme-contribution": verify_extreme_contribution,
    "monotone": verify_monotone,
}


def run_suite(name: str, samples: int | None = None, n: int | None = None) -> SuiteReport:
    """Run one named suite with optional size overrides."""
    if name == "sorting":
        return verify_sorting(samples or 10_000)
    if name == "hypervolume":
        return verify_hypervolume(samples or 10_000)
    if name == "dominance-structure":
        return verify_dominance_structure(max_n=n or 12)
    if name == "extreme-contribution":
        if n is not None:
            return verify_extreme_contribution(layers=samples or 1000, ns=(n,))
        return verify_extreme_contribution(layers=samples or 1000)
    if name == "monotone":
        return verify_monotone(n=n or 16)
    raise ValueError(f"unknown suite {name!r}")
