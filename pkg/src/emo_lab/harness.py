"""Experiment planning, seeded execution, statistics, and oracle suites.

Reproducibility contract: the generator of run ``r`` of cell ``c`` is
seeded with the first 8 bytes (big endian) of
``sha256(f"{master_seed}|{c}|{r}")`` where ``c`` is the cell id string
``"<algo label>:n=<n>"``.  Two executions of the same plan therefore
produce byte-identical CSV files, regardless of worker count.
"""

from __future__ import annotations

import hashlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .algorithms import AlgorithmConfig, GenerationTrace, RunResult, Trace, run
from .core import Individual, dominates
from .nsga3 import das_dennis, unit_vectors
from .problems import ProblemInstance, format_problem, parse_problem
from .variation import MutationKind

__all__ = [
    "CSV_HEADER",
    "CellSummary",
    "ExperimentPlan",
    "ExperimentResult",
    "ScalingFit",
    "derive_rng",
    "derive_seed",
    "fit_scaling",
    "monotone_monitor",
    "oracle_hypervolume_lattice",
    "oracle_non_dominated_sort",
    "parse_algo",
    "parse_plan",
    "run_experiment",
    "save_scaling_plot",
    "summarize",
]

CSV_HEADER = "run_id,seed,algo,problem,n,mu,mutation,dedup,budget,success,evaluations,generations,violations"

WORKERS_ENV = "EMO_LAB_WORKERS"


# ---------------------------------------------------------------------------
# seeding
# ---------------------------------------------------------------------------


def derive_seed(master_seed: int, cell_id: str, run_index: int) -> int:
    """Stable 64-bit per-run seed from (master seed, cell id, run index)."""
    digest = hashlib.sha256(f"{master_seed}|{cell_id}|{run_index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(master_seed: int, cell_id: str, run_index: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, cell_id, run_index))


# ---------------------------------------------------------------------------
# plans and execution
# ---------------------------------------------------------------------------


@dataclass
class ExperimentPlan:
    """A grid of (algorithm config) x (problem size), repeated ``runs`` times."""

    algorithms: list  # [(label, AlgorithmConfig), ...]
    ns: list
    runs: int
    budget: int
    master_seed: int = 0
    problem: str = "otzt"
    output: str | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs per cell must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if any(b <= a for a, b in zip(self.ns, self.ns[1:])):
            raise ValueError("n values must be strictly increasing")

    def cells(self) -> list:
        out = []
        for label, cfg in self.algorithms:
            for n in self.ns:
                out.append((label, cfg, n))
        return out


@dataclass
class CellSummary:
    """Statistics of one cell; means cover successful runs only."""

    label: str
    n: int
    runs: int
    success_rate: float
    mean: float | None
    median: float | None
    stddev: float | None


@dataclass
class ExperimentResult:
    plan: ExperimentPlan
    results: list  # RunResult per run, traces dropped, in (cell, run) order
    summaries: list  # CellSummary per cell
    csv_text: str


def _build_instance(problem_field: str, n: int) -> ProblemInstance:
    """Instantiate the plan's problem template at size ``n``."""
    parts = problem_field.strip().split(":")
    if parts[0] != "otzt":
        raise ValueError(f"unsupported problem template: {problem_field!r}")
    descriptor = f"otzt:n={n}"
    for part in parts[1:]:
        if part.startswith("n="):
            raise ValueError("plan problem template must not fix n; use the ns list")
        descriptor += f":{part}"
    return parse_problem(descriptor)


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def summarize(results: Sequence[RunResult], label: str = "", n: int = 0) -> CellSummary:
    """Mean/median/stddev of hitting times over successes, plus success rate."""
    if not results:
        raise ValueError("cannot summarise zero results")
    hits = [r.evaluations for r in results if r.success]
    rate = len(hits) / len(results)
    if hits:
        mean = float(np.mean(hits))
        median = float(np.median(hits))
        stddev = float(np.std(hits))
    else:
        mean = median = stddev = None
    return CellSummary(
        label=label, n=n, runs=len(results), success_rate=rate,
        mean=mean, median=median, stddev=stddev,
    )


def _csv_row(row_id: int, seed: int, label: str, inst: ProblemInstance,
             cfg: AlgorithmConfig, budget: int, res: RunResult) -> str:
    return ",".join(
        [
            str(row_id),
            str(seed),
            label,
            format_problem(inst),
            str(inst.n),
            str(cfg.mu),
            cfg.mutation.value,
            "true" if cfg.dedup else "false",
            str(budget),
            "true" if res.success else "false",
            str(res.evaluations),
            str(res.generations),
            str(res.monotone_violations),
        ]
    )


def run_experiment(plan: ExperimentPlan, workers: int | None = None) -> ExperimentResult:
    """Execute every run of the plan and aggregate per-cell summaries.

    Runs execute concurrently (the engines release the GIL); results are
    merged only after each run completes and are ordered by (cell, run),
    so the output is independent of scheduling.
    """
    cells = plan.cells()
    jobs = []
    for ci, (label, cfg, n) in enumerate(cells):
        inst = _build_instance(plan.problem, n)
        for ri in range(plan.runs):
            jobs.append((ci, ri, label, cfg, n, inst))

    def one(job):
        ci, ri, label, cfg, n, inst = job
        cell_id = f"{label}:n={n}"
        seed = derive_seed(plan.master_seed, cell_id, ri)
        res = run(inst, cfg, plan.budget, np.random.default_rng(seed))
        # keep results slim: the trace is summarised into the violation
        # count already, the final population is not needed for tables
        slim = replace(res, trace=None, population=[], run_id=ci * plan.runs + ri, seed=seed)
        return ci, ri, inst, slim

    nworkers = _resolve_workers(workers)
    if nworkers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            outcomes = list(pool.map(one, jobs))
    else:
        outcomes = [one(job) for job in jobs]
    outcomes.sort(key=lambda item: (item[0], item[1]))

    lines = [CSV_HEADER]
    per_cell: dict[int, list] = {ci: [] for ci in range(len(cells))}
    results = []
    for ci, ri, inst, res in outcomes:
        label, cfg, n = cells[ci]
        lines.append(_csv_row(res.run_id, res.seed, label, inst, cfg, plan.budget, res))
        per_cell[ci].append(res)
        results.append(res)
    csv_text = "\n".join(lines) + "\n"

    summaries = []
    for ci, (label, cfg, n) in enumerate(cells):
        summaries.append(summarize(per_cell[ci], label=label, n=n))

    if plan.output:
        with open(plan.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text)
    return ExperimentResult(plan=plan, results=results, summaries=summaries, csv_text=csv_text)


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


@dataclass
class ScalingFit:
    """Least-squares coefficient of the model mean ~ c * n * ln(n)."""

    coefficient: float
    max_relative_residual: float


def fit_scaling(ns: Sequence[int], means: Sequence[float]) -> ScalingFit:
    """Fit c in ``mean ~ c * n * ln n`` and report the worst relative miss."""
    if len(ns) < 3 or len(means) != len(ns):
        raise ValueError("need at least three (n, mean) points")
    if any(m is None for m in means):
        raise ValueError("every cell needs a mean hitting time")
    g = np.array([n * math.log(n) for n in ns], dtype=np.float64)
    m = np.asarray(means, dtype=np.float64)
    c = float((m * g).sum() / (g * g).sum())
    resid = float(np.max(np.abs(m - c * g) / m))
    return ScalingFit(coefficient=c, max_relative_residual=resid)


def monotone_monitor(trace: Trace | Iterable[GenerationTrace]) -> int:
    """Count generations where max_ones or max_zeros decreases."""
    if isinstance(trace, Trace):
        mo = trace.max_ones
        mz = trace.max_zeros
    else:
        records = list(trace)
        mo = np.array([r.max_ones for r in records], dtype=np.int64)
        mz = np.array([r.max_zeros for r in records], dtype=np.int64)
    return int(np.count_nonzero((mo[1:] < mo[:-1]) | (mz[1:] < mz[:-1])))


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------


def oracle_non_dominated_sort(members: Sequence[Individual]) -> list:
    """Repeated peeling: each layer is everything no remaining point dominates."""
    if len(members) > 256:
        raise ValueError("oracle guard: at most 256 members")
    remaining = list(members)
    layers = []
    while remaining:
        layer = [
            p
            for p in remaining
            if not any(dominates(q.fitness, p.fitness) for q in remaining if q is not p)
        ]
        layers.append(layer)
        keep = {id(p) for p in layer}
        remaining = [p for p in remaining if id(p) not in keep]
    return layers


def oracle_hypervolume_lattice(points: Sequence[Sequence[int]], h: Sequence[int]) -> int:
    """Count unit lattice cells covered by some box [h, f]."""
    h1, h2 = int(h[0]), int(h[1])
    if any(int(f1) - h1 > 4096 or int(f2) - h2 > 4096 for f1, f2 in points):
        raise ValueError("oracle guard: coordinates too far above the reference point")
    width = max((int(f1) - h1 for f1, f2 in points), default=0)
    height = max((int(f2) - h2 for f1, f2 in points), default=0)
    if width <= 0 or height <= 0:
        return 0
    grid = np.zeros((width, height), dtype=bool)
    for f1, f2 in points:
        w = int(f1) - h1
        ht = int(f2) - h2
        if w > 0 and ht > 0:
            grid[:w, :ht] = True
    return int(grid.sum())


# ---------------------------------------------------------------------------
# plan and algorithm descriptors
# ---------------------------------------------------------------------------


def parse_algo(text: str) -> tuple[str, AlgorithmConfig]:
    """Parse an algorithm descriptor.

    Grammar: ``<kind>[,key=value]...`` with keys ``mu``, ``mutation``
    (bitwise|local), ``dedup`` (on|off), ``refpoints`` (units or
    das-dennis:p=<P>), ``hv-ref`` (<f1>/<f2>), ``eps-nadir``, ``init``
    (uniform|exclude-front) and ``label``.
    Example: ``nsga3,mu=10,refpoints=das-dennis:p=4,init=exclude-front``.
    """
    parts = [p.strip() for p in text.strip().split(",") if p.strip()]
    if not parts:
        raise ValueError("empty algorithm descriptor")
    kind = parts[0]
    kwargs: dict = {}
    label = None
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"malformed algorithm field {part!r}")
        if key == "mu":
            kwargs["mu"] = int(value)
        elif key == "mutation":
            kwargs["mutation"] = MutationKind(value)
        elif key == "dedup":
            kwargs["dedup"] = _parse_switch(value)
        elif key == "refpoints":
            kwargs["refpoints"] = parse_refpoints(value)
        elif key == "hv-ref":
            a, _, b = value.partition("/")
            kwargs["hv_ref"] = (float(a), float(b))
        elif key == "eps-nadir":
            kwargs["eps_nadir"] = float(value)
        elif key == "init":
            if value not in ("uniform", "exclude-front"):
                raise ValueError(f"unknown init mode {value!r}")
            kwargs["init_excludes_front"] = value == "exclude-front"
        elif key == "label":
            label = value
        else:
            raise ValueError(f"unknown algorithm field {key!r}")
    cfg = AlgorithmConfig(kind=kind, **kwargs)
    return label or kind, cfg


def parse_refpoints(text: str):
    """Parse ``units`` or ``das-dennis:p=<P>``."""
    if text == "units":
        return unit_vectors(2)
    if text.startswith("das-dennis:p="):
        return das_dennis(2, int(text.removeprefix("das-dennis:p=")))
    raise ValueError(f"unknown reference point descriptor {text!r}")


def _parse_switch(value: str) -> bool:
    if value in ("on", "true", "1"):
        return True
    if value in ("off", "false", "0"):
        return False
    raise ValueError(f"expected on/off, got {value!r}")


def parse_plan(path: str) -> ExperimentPlan:
    """Read a flat key-value plan file.

    One ``key = value`` pair per line; ``#`` starts a comment.  Keys:
    ``problem`` (default otzt), ``ns`` (comma-separated ints), ``runs``,
    ``budget``, ``seed``, ``out`` (CSV path) and one ``algo`` line per
    algorithm descriptor (grammar of :func:`parse_algo`).
    """
    fields: dict[str, str] = {}
    algos: list[tuple[str, AlgorithmConfig]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key = key.strip()
            value = value.strip()
            if key == "algo":
                algos.append(parse_algo(value))
            elif key in ("problem", "ns", "runs", "budget", "seed", "out"):
                fields[key] = value
            else:
                raise ValueError(f"{path}:{lineno}: unknown plan key {key!r}")
    if not algos:
        raise ValueError(f"{path}: plan needs at least one algo line")
    for required in ("ns", "runs", "budget"):
        if required not in fields:
            raise ValueError(f"{path}: plan needs a {required!r} line")
    return ExperimentPlan(
        algorithms=algos,
        ns=[int(v) for v in fields["ns"].split(",")],
        runs=int(fields["runs"]),
        budget=int(fields["budget"]),
        master_seed=int(fields.get("seed", "0")),
        problem=fields.get("problem", "otzt"),
        output=fields.get("out"),
    )


def save_scaling_plot(path: str, ns: Sequence[int], means: Sequence[float], fit: ScalingFit | None = None) -> None:
    """Write an SVG of mean hitting times vs n with the fitted curve."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ns, means, "o-", label="mean evaluations")
    if fit is not None:
        grid = np.linspace(min(ns), max(ns), 200)
        ax.plot(grid, fit.coefficient * grid * np.log(grid), "--",
                label=f"{fit.coefficient:.2f} n ln n")
    ax.set_xlabel("n")
    ax.set_ylabel("evaluations to cover the front")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
