"""Engines for the five algorithms: SEMO, GSEMO, NSGA-II, NSGA-III, SMS-EMOA.

Each engine runs one seeded, single-threaded optimisation loop on a
bi-objective trap instance and returns a :class:`RunResult` carrying a
dense per-generation :class:`Trace`.  The hot loops are compiled with
numba; the public selection operators in :mod:`ranking`, :mod:`nsga3` and
:mod:`hypervolume` wrap the very same compiled helpers, so unit-level
behaviour and engine behaviour cannot drift apart.

Randomness: every run owns one ``numpy.random.Generator``.  Draws happen
in a fixed order (per offspring: parent index, then mutation; then any
selection tie-breaks), which makes runs bitwise reproducible from
(config, seed).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np
from numba import njit

from .core import Dominance, Individual, dominance_compare
from .hypervolume import _argmin_uniform, _contributions, default_reference
from .nsga3 import ReferencePointSet, _associate, _context_arrays, _niche_select, _normalize_all, unit_vectors
from .problems import ProblemInstance, make_individual
from .ranking import _crowding, _layer_indices, _pick_largest
from .variation import MutationKind, _mutate_bitwise_into, _mutate_local_into

__all__ = [
    "AlgoKind",
    "AlgorithmConfig",
    "GenerationTrace",
    "RunResult",
    "Trace",
    "COVERAGE_LABELS",
    "dedup_merge",
    "gsemo_archive_update",
    "initialize_population",
    "run",
    "run_gsemo",
    "run_nsga2",
    "run_nsga3",
    "run_smsemoa",
]

COVERAGE_LABELS = ("none", "one", "both")


class AlgoKind(Enum):
    SEMO = "semo"
    GSEMO = "gsemo"
    NSGA2 = "nsga2"
    NSGA3 = "nsga3"
    SMSEMOA = "smsemoa"


@dataclass
class AlgorithmConfig:
    """Everything needed to run one algorithm, independent of the seed.

    ``mu`` is ignored by SEMO/GSEMO (their archive is unrestricted).  SEMO
    always uses local mutation and GSEMO always uses bitwise mutation; a
    conflicting explicit choice is rejected.
    """

    kind: AlgoKind
    mu: int = 4
    mutation: MutationKind | None = None
    dedup: bool = True
    refpoints: ReferencePointSet | None = None
    hv_ref: tuple[float, float] | None = None
    init_excludes_front: bool = False
    eps_nadir: float = 1e-6

    def __post_init__(self):
        if isinstance(self.kind, str):
            self.kind = AlgoKind(self.kind)
        if isinstance(self.mutation, str):
            self.mutation = MutationKind(self.mutation)
        if self.mu < 1:
            raise ValueError("population size mu must be at least 1")
        if self.kind is AlgoKind.SEMO:
            if self.mutation is None:
                self.mutation = MutationKind.LOCAL
            elif self.mutation is not MutationKind.LOCAL:
                raise ValueError("semo is defined with local mutation only")
        elif self.kind is AlgoKind.GSEMO:
            if self.mutation is None:
                self.mutation = MutationKind.BITWISE
            elif self.mutation is not MutationKind.BITWISE:
                raise ValueError("gsemo is defined with bitwise mutation only")
        elif self.mutation is None:
            self.mutation = MutationKind.BITWISE
        if self.kind is AlgoKind.NSGA3 and self.refpoints is None:
            self.refpoints = unit_vectors(2)


@dataclass(frozen=True)
class GenerationTrace:
    """One audit record: population statistics after a generation."""

    t: int
    evaluations: int
    max_ones: int
    max_zeros: int
    population_size: int
    front_coverage: str  # none | one | both


class Trace:
    """Per-generation audit trail as a dense (rows, 6) int64 matrix.

    Columns: t, evaluations, max_ones, max_zeros, population_size,
    coverage (0, 1 or 2 front fitness vectors present).
    """

    CSV_HEADER = "t,evals,max_ones,max_zeros,pop_size,coverage"

    def __init__(self, matrix: np.ndarray):
        self.matrix = matrix

    def __len__(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def t(self) -> np.ndarray:
        return self.matrix[:, 0]

    @property
    def evaluations(self) -> np.ndarray:
        return self.matrix[:, 1]

    @property
    def max_ones(self) -> np.ndarray:
        return self.matrix[:, 2]

    @property
    def max_zeros(self) -> np.ndarray:
        return self.matrix[:, 3]

    @property
    def population_size(self) -> np.ndarray:
        return self.matrix[:, 4]

    @property
    def coverage(self) -> np.ndarray:
        return self.matrix[:, 5]

    def record(self, i: int) -> GenerationTrace:
        row = self.matrix[i]
        return GenerationTrace(
            t=int(row[0]),
            evaluations=int(row[1]),
            max_ones=int(row[2]),
            max_zeros=int(row[3]),
            population_size=int(row[4]),
            front_coverage=COVERAGE_LABELS[int(row[5])],
        )

    def records(self) -> Iterable[GenerationTrace]:
        for i in range(len(self)):
            yield self.record(i)

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.CSV_HEADER + "\n")
            for row in self.matrix:
                fh.write(
                    f"{row[0]},{row[1]},{row[2]},{row[3]},{row[4]},{COVERAGE_LABELS[int(row[5])]}\n"
                )


@dataclass
class RunResult:
    """Outcome of one run; ``evaluations`` is the hitting time iff success."""

    success: bool
    evaluations: int
    generations: int
    monotone_violations: int
    final_max_ones: int
    final_max_zeros: int
    trace: Trace | None
    population: list
    run_id: int = -1
    seed: int = -1


Observer = Callable[[GenerationTrace], None]


# ---------------------------------------------------------------------------
# compiled helpers shared by all engines
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _raw_ones(bits):
    s = 0
    for i in range(bits.size):
        s += bits[i]
    return s


@njit(cache=True, nogil=True)
def _eval_masked_ones(bits, mask):
    s = 0
    for i in range(bits.size):
        s += bits[i] ^ mask[i]
    return s


@njit(cache=True, nogil=True)
def _fitness_from_om(om, n):
    f1 = om
    f2 = n - om
    if om == 0:
        f1 += n + 1
    if om == n:
        f2 += n + 1
    return f1, f2


@njit(cache=True, nogil=True)
def _sample_into(row, mask, exclude_front, rng):
    """Uniform bits; with exclusion, resample until not Pareto-optimal.

    The optimality test is a genotype predicate, so rejected samples cost
    no fitness evaluations.
    """
    n = row.size
    while True:
        for i in range(n):
            row[i] = np.uint8(rng.integers(0, 2))
        if not exclude_front:
            return
        om = _eval_masked_ones(row, mask)
        if om != 0 and om != n:
            return


@njit(cache=True, nogil=True)
def _row_equals(rows, idx, y):
    for j in range(y.size):
        if rows[idx, j] != y[j]:
            return False
    return True


@njit(cache=True, nogil=True)
def _pop_stats(om_arr, raw_arr, size, n):
    mo = 0
    mz = 0
    has_lo = False
    has_hi = False
    for i in range(size):
        r = raw_arr[i]
        if r > mo:
            mo = r
        if n - r > mz:
            mz = n - r
        if om_arr[i] == 0:
            has_lo = True
        elif om_arr[i] == n:
            has_hi = True
    cov = 0
    if has_lo:
        cov += 1
    if has_hi:
        cov += 1
    return mo, mz, cov


@njit(cache=True, nogil=True)
def _grown(trace, rows):
    if rows < trace.shape[0]:
        return trace
    tmp = np.empty((trace.shape[0] * 2, 6), np.int64)
    tmp[:rows] = trace
    return tmp


@njit(cache=True, nogil=True)
def _copy_member(sg, som, sraw, sf, si, dg, dom_, draw_, df, di):
    for j in range(sg.shape[1]):
        dg[di, j] = sg[si, j]
    dom_[di] = som[si]
    draw_[di] = sraw[si]
    df[di, 0] = sf[si, 0]
    df[di, 1] = sf[si, 1]


@njit(cache=True, nogil=True)
def _store_member(g, om_arr, raw_arr, f, idx, bits, om, n):
    for j in range(n):
        g[idx, j] = bits[j]
    om_arr[idx] = om
    raw_arr[idx] = _raw_ones(bits)
    f1, f2 = _fitness_from_om(om, n)
    f[idx, 0] = f1
    f[idx, 1] = f2


# ---------------------------------------------------------------------------
# (G)SEMO: unrestricted archive, one offspring per iteration
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _gsemo_kernel(mask, local, exclude_front, budget, rng):
    n = mask.size
    cap = n + 3  # distinct non-dominated fitness values are at most n - 1
    geno = np.zeros((cap, n), np.uint8)
    om = np.zeros(cap, np.int64)
    raw = np.zeros(cap, np.int64)
    fit = np.zeros((cap, 2), np.int64)

    _sample_into(geno[0], mask, exclude_front, rng)
    _store_member(geno, om, raw, fit, 0, geno[0], _eval_masked_ones(geno[0], mask), n)
    size = 1
    evals = 1
    t = 0

    trace = np.empty((1024, 6), np.int64)
    rows = 0
    mo, mz, cov = _pop_stats(om, raw, size, n)
    trace[rows, 0] = 0
    trace[rows, 1] = evals
    trace[rows, 2] = mo
    trace[rows, 3] = mz
    trace[rows, 4] = size
    trace[rows, 5] = cov
    rows += 1

    ybuf = np.empty(n, np.uint8)
    while cov < 2 and evals < budget:
        t += 1
        pidx = rng.integers(0, size)
        if local:
            _mutate_local_into(geno[pidx], ybuf, rng)
        else:
            _mutate_bitwise_into(geno[pidx], ybuf, rng)
        yom = _eval_masked_ones(ybuf, mask)
        f1, f2 = _fitness_from_om(yom, n)
        evals += 1
        dominated = False
        for i in range(size):
            if fit[i, 0] >= f1 and fit[i, 1] >= f2 and (fit[i, 0] > f1 or fit[i, 1] > f2):
                dominated = True
                break
        if not dominated:
            # keep incumbents the offspring does not weakly dominate
            w = 0
            for i in range(size):
                if not (f1 >= fit[i, 0] and f2 >= fit[i, 1]):
                    if w != i:
                        _copy_member(geno, om, raw, fit, i, geno, om, raw, fit, w)
                    w += 1
            _store_member(geno, om, raw, fit, w, ybuf, yom, n)
            size = w + 1
        mo, mz, cov = _pop_stats(om, raw, size, n)
        trace = _grown(trace, rows)
        trace[rows, 0] = t
        trace[rows, 1] = evals
        trace[rows, 2] = mo
        trace[rows, 3] = mz
        trace[rows, 4] = size
        trace[rows, 5] = cov
        rows += 1
    return trace[:rows].copy(), geno[:size].copy(), fit[:size].copy()


# ---------------------------------------------------------------------------
# NSGA-II / NSGA-III: (mu + mu) generational loop
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _nsga_kernel(mask, mu, local, dedup, exclude_front, budget, use_refs, refs, eps, rng):
    n = mask.size
    pop_g = np.zeros((mu, n), np.uint8)
    pop_om = np.zeros(mu, np.int64)
    pop_raw = np.zeros(mu, np.int64)
    pop_f = np.zeros((mu, 2), np.int64)
    rcap = 2 * mu
    r_g = np.zeros((rcap, n), np.uint8)
    r_om = np.zeros(rcap, np.int64)
    r_raw = np.zeros(rcap, np.int64)
    r_f = np.zeros((rcap, 2), np.int64)
    ybuf = np.empty(n, np.uint8)

    for k in range(mu):
        _sample_into(pop_g[k], mask, exclude_front, rng)
        _store_member(pop_g, pop_om, pop_raw, pop_f, k, pop_g[k], _eval_masked_ones(pop_g[k], mask), n)
    evals = mu
    t = 0

    trace = np.empty((1024, 6), np.int64)
    rows = 0
    mo, mz, cov = _pop_stats(pop_om, pop_raw, mu, n)
    trace[rows, 0] = 0
    trace[rows, 1] = evals
    trace[rows, 2] = mo
    trace[rows, 3] = mz
    trace[rows, 4] = mu
    trace[rows, 5] = cov
    rows += 1

    while cov < 2 and evals + mu <= budget:
        t += 1
        for i in range(mu):
            _copy_member(pop_g, pop_om, pop_raw, pop_f, i, r_g, r_om, r_raw, r_f, i)
        rsize = mu
        for _ in range(mu):
            pidx = rng.integers(0, mu)
            if local:
                _mutate_local_into(pop_g[pidx], ybuf, rng)
            else:
                _mutate_bitwise_into(pop_g[pidx], ybuf, rng)
            evals += 1
            keep = True
            if dedup:
                for i in range(rsize):
                    if _row_equals(r_g, i, ybuf):
                        keep = False
                        break
            if keep:
                _store_member(r_g, r_om, r_raw, r_f, rsize, ybuf, _eval_masked_ones(ybuf, mask), n)
                rsize += 1
        layer = _layer_indices(r_f[:rsize])
        nl = 0
        for i in range(rsize):
            if layer[i] + 1 > nl:
                nl = layer[i] + 1
        counts = np.zeros(nl, np.int64)
        for i in range(rsize):
            counts[layer[i]] += 1
        istar = 0
        cum = 0
        for l in range(nl):
            cum += counts[l]
            if cum >= mu:
                istar = l
                break
        # carry the layers before the critical one, grouped by layer
        npos = 0
        for lvl in range(istar):
            for i in range(rsize):
                if layer[i] == lvl:
                    _copy_member(r_g, r_om, r_raw, r_f, i, pop_g, pop_om, pop_raw, pop_f, npos)
                    npos += 1
        slots = mu - npos
        nc = counts[istar]
        crit_idx = np.empty(nc, np.int64)
        w = 0
        for i in range(rsize):
            if layer[i] == istar:
                crit_idx[w] = i
                w += 1
        if use_refs:
            ny = npos
            ufit = np.empty((ny + nc, 2), np.float64)
            for i in range(ny):
                ufit[i, 0] = pop_f[i, 0]
                ufit[i, 1] = pop_f[i, 1]
            for i in range(nc):
                ufit[ny + i, 0] = r_f[crit_idx[i], 0]
                ufit[ny + i, 1] = r_f[crit_idx[i], 1]
            ideal, zmax, nadir = _context_arrays(ufit, eps)
            vs = _normalize_all(ufit, ideal, nadir)
            assoc, dist = _associate(vs, refs, rng)
            chosen = _niche_select(assoc, dist, ny, refs.shape[0], slots, rng)
            for c in range(slots):
                src = crit_idx[chosen[c] - ny]
                _copy_member(r_g, r_om, r_raw, r_f, src, pop_g, pop_om, pop_raw, pop_f, npos)
                npos += 1
        else:
            critfit = np.empty((nc, 2), np.int64)
            for i in range(nc):
                critfit[i, 0] = r_f[crit_idx[i], 0]
                critfit[i, 1] = r_f[crit_idx[i], 1]
            cd = _crowding(critfit)
            chosen = _pick_largest(cd, slots, rng)
            for c in range(slots):
                src = crit_idx[chosen[c]]
                _copy_member(r_g, r_om, r_raw, r_f, src, pop_g, pop_om, pop_raw, pop_f, npos)
                npos += 1
        mo, mz, cov = _pop_stats(pop_om, pop_raw, mu, n)
        trace = _grown(trace, rows)
        trace[rows, 0] = t
        trace[rows, 1] = evals
        trace[rows, 2] = mo
        trace[rows, 3] = mz
        trace[rows, 4] = mu
        trace[rows, 5] = cov
        rows += 1
    return trace[:rows].copy(), pop_g.copy(), pop_f.copy()


# ---------------------------------------------------------------------------
# SMS-EMOA: steady-state (mu + 1) loop with hypervolume-based ejection
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _smsemoa_kernel(mask, mu, local, dedup, exclude_front, budget, h, rng):
    n = mask.size
    pop_g = np.zeros((mu, n), np.uint8)
    pop_om = np.zeros(mu, np.int64)
    pop_raw = np.zeros(mu, np.int64)
    pop_f = np.zeros((mu, 2), np.int64)
    rcap = mu + 1
    r_g = np.zeros((rcap, n), np.uint8)
    r_om = np.zeros(rcap, np.int64)
    r_raw = np.zeros(rcap, np.int64)
    r_f = np.zeros((rcap, 2), np.int64)
    ybuf = np.empty(n, np.uint8)

    for k in range(mu):
        _sample_into(pop_g[k], mask, exclude_front, rng)
        _store_member(pop_g, pop_om, pop_raw, pop_f, k, pop_g[k], _eval_masked_ones(pop_g[k], mask), n)
    evals = mu
    t = 0

    trace = np.empty((1024, 6), np.int64)
    rows = 0
    mo, mz, cov = _pop_stats(pop_om, pop_raw, mu, n)
    trace[rows, 0] = 0
    trace[rows, 1] = evals
    trace[rows, 2] = mo
    trace[rows, 3] = mz
    trace[rows, 4] = mu
    trace[rows, 5] = cov
    rows += 1

    # Rejected duplicates cost an iteration but no evaluation, so cap the
    # iteration count defensively; the cap is far beyond anything reachable.
    itercap = 4 * budget + 1024
    while cov < 2 and evals < budget and t < itercap:
        t += 1
        pidx = rng.integers(0, mu)
        if local:
            _mutate_local_into(pop_g[pidx], ybuf, rng)
        else:
            _mutate_bitwise_into(pop_g[pidx], ybuf, rng)
        if dedup:
            dup = False
            for i in range(mu):
                if _row_equals(pop_g, i, ybuf):
                    dup = True
                    break
            if dup:
                trace = _grown(trace, rows)
                trace[rows, 0] = t
                trace[rows, 1] = evals
                trace[rows, 2] = mo
                trace[rows, 3] = mz
                trace[rows, 4] = mu
                trace[rows, 5] = cov
                rows += 1
                continue
        yom = _eval_masked_ones(ybuf, mask)
        evals += 1
        for i in range(mu):
            _copy_member(pop_g, pop_om, pop_raw, pop_f, i, r_g, r_om, r_raw, r_f, i)
        _store_member(r_g, r_om, r_raw, r_f, mu, ybuf, yom, n)
        rsize = mu + 1
        layer = _layer_indices(r_f[:rsize])
        last = 0
        for i in range(rsize):
            if layer[i] > last:
                last = layer[i]
        nlast = 0
        for i in range(rsize):
            if layer[i] == last:
                nlast += 1
        last_idx = np.empty(nlast, np.int64)
        lastfit = np.empty((nlast, 2), np.float64)
        w = 0
        for i in range(rsize):
            if layer[i] == last:
                last_idx[w] = i
                lastfit[w, 0] = r_f[i, 0]
                lastfit[w, 1] = r_f[i, 1]
                w += 1
        contrib = _contributions(lastfit, h)
        eject = last_idx[_argmin_uniform(contrib, rng)]
        w = 0
        for i in range(rsize):
            if i != eject:
                _copy_member(r_g, r_om, r_raw, r_f, i, pop_g, pop_om, pop_raw, pop_f, w)
                w += 1
        mo, mz, cov = _pop_stats(pop_om, pop_raw, mu, n)
        trace = _grown(trace, rows)
        trace[rows, 0] = t
        trace[rows, 1] = evals
        trace[rows, 2] = mo
        trace[rows, 3] = mz
        trace[rows, 4] = mu
        trace[rows, 5] = cov
        rows += 1
    return trace[:rows].copy(), pop_g.copy(), pop_f.copy()


# ---------------------------------------------------------------------------
# public operations and wrappers
# ---------------------------------------------------------------------------


def initialize_population(
    problem: ProblemInstance,
    mu: int,
    init_excludes_front: bool,
    rng: np.random.Generator,
) -> list:
    """Sample ``mu`` uniform members, optionally resampling away the optima."""
    if mu < 1:
        raise ValueError("population size mu must be at least 1")
    buf = np.empty(problem.n, dtype=np.uint8)
    members = []
    for _ in range(mu):
        _sample_into(buf, problem.mask, init_excludes_front, rng)
        members.append(make_individual(problem, buf))
    return members


def dedup_merge(parents: Sequence[Individual], offspring: Sequence[Individual], dedup: bool = True) -> list:
    """Merge offspring into the parent multiset.

    With ``dedup`` the offspring are first reduced to unique genotypes and
    any genotype already present among the parents is dropped; without it
    the result is the plain multiset union.
    """
    if not dedup:
        return list(parents) + list(offspring)
    merged = list(parents)
    seen = {ind.genotype.tobytes() for ind in parents}
    for ind in offspring:
        key = ind.genotype.tobytes()
        if key not in seen:
            seen.add(key)
            merged.append(ind)
    return merged


def gsemo_archive_update(population: Sequence[Individual], offspring: Individual) -> tuple[list, bool]:
    """Archive acceptance rule of the (G)SEMO engines.

    The offspring is rejected iff some incumbent strictly dominates it;
    on acceptance, every incumbent it weakly dominates (equal fitness
    included) is removed and the offspring is appended.
    """
    for ind in population:
        if dominance_compare(ind.fitness, offspring.fitness) is Dominance.DOMINATES:
            return list(population), False
    survivors = [
        ind
        for ind in population
        if dominance_compare(offspring.fitness, ind.fitness)
        not in (Dominance.DOMINATES, Dominance.EQUAL)
    ]
    survivors.append(offspring)
    return survivors, True


def _require_otzt(problem: ProblemInstance) -> None:
    if problem.kind != "otzt":
        raise ValueError("engines run on bi-objective trap instances only")


def _require_budget(budget: int) -> None:
    if budget < 1:
        raise ValueError("evaluation budget must be positive")


def _finish(kernel_out, budget: int, observer: Observer | None) -> RunResult:
    matrix, pop_g, pop_f = kernel_out
    trace = Trace(matrix)
    mo = trace.max_ones
    mz = trace.max_zeros
    violations = int(np.count_nonzero((mo[1:] < mo[:-1]) | (mz[1:] < mz[:-1])))
    last = matrix[-1]
    population = []
    for i in range(pop_g.shape[0]):
        bits = pop_g[i].copy()
        bits.setflags(write=False)
        population.append(Individual(genotype=bits, fitness=(int(pop_f[i, 0]), int(pop_f[i, 1]))))
    result = RunResult(
        success=bool(last[5] == 2 and last[1] <= budget),
        evaluations=int(last[1]),
        generations=int(last[0]),
        monotone_violations=violations,
        final_max_ones=int(last[2]),
        final_max_zeros=int(last[3]),
        trace=trace,
        population=population,
    )
    if observer is not None:
        for rec in trace.records():
            observer(rec)
    return result


def run_gsemo(
    problem: ProblemInstance,
    cfg: AlgorithmConfig,
    budget: int,
    rng: np.random.Generator,
    observer: Observer | None = None,
) -> RunResult:
    """Archive loop: insert non-dominated offspring, drop what it covers."""
    _require_otzt(problem)
    _require_budget(budget)
    if cfg.kind not in (AlgoKind.SEMO, AlgoKind.GSEMO):
        raise ValueError(f"config is for {cfg.kind.value}, not an archive engine")
    local = cfg.mutation is MutationKind.LOCAL
    out = _gsemo_kernel(problem.mask, local, cfg.init_excludes_front, budget, rng)
    return _finish(out, budget, observer)


def run_nsga2(
    problem: ProblemInstance,
    cfg: AlgorithmConfig,
    budget: int,
    rng: np.random.Generator,
    observer: Observer | None = None,
) -> RunResult:
    """(mu+mu) loop with non-dominated sorting and crowding truncation."""
    _require_otzt(problem)
    _require_budget(budget)
    if cfg.kind is not AlgoKind.NSGA2:
        raise ValueError(f"config is for {cfg.kind.value}, not nsga2")
    local = cfg.mutation is MutationKind.LOCAL
    dummy_refs = np.zeros((1, 2), dtype=np.float64)
    out = _nsga_kernel(
        problem.mask, cfg.mu, local, cfg.dedup, cfg.init_excludes_front,
        budget, False, dummy_refs, cfg.eps_nadir, rng,
    )
    return _finish(out, budget, observer)


def run_nsga3(
    problem: ProblemInstance,
    cfg: AlgorithmConfig,
    budget: int,
    rng: np.random.Generator,
    observer: Observer | None = None,
) -> RunResult:
    """(mu+mu) loop with reference-point niching on the critical layer."""
    _require_otzt(problem)
    _require_budget(budget)
    if cfg.kind is not AlgoKind.NSGA3:
        raise ValueError(f"config is for {cfg.kind.value}, not nsga3")
    refset = cfg.refpoints if cfg.refpoints is not None else unit_vectors(2)
    if cfg.mu < 2 * len(refset):
        warnings.warn(
            "population smaller than twice the reference-point count; "
            "preservation of the layer extremes is not guaranteed",
            stacklevel=2,
        )
    local = cfg.mutation is MutationKind.LOCAL
    out = _nsga_kernel(
        problem.mask, cfg.mu, local, cfg.dedup, cfg.init_excludes_front,
        budget, True, refset.points, cfg.eps_nadir, rng,
    )
    return _finish(out, budget, observer)


def run_smsemoa(
    problem: ProblemInstance,
    cfg: AlgorithmConfig,
    budget: int,
    rng: np.random.Generator,
    observer: Observer | None = None,
) -> RunResult:
    """Steady-state loop ejecting a minimal hypervolume contributor.

    With deduplication, an offspring whose genotype already exists in the
    population is rejected before evaluation: the iteration counts, the
    evaluation does not.
    """
    _require_otzt(problem)
    _require_budget(budget)
    if cfg.kind is not AlgoKind.SMSEMOA:
        raise ValueError(f"config is for {cfg.kind.value}, not smsemoa")
    href = cfg.hv_ref if cfg.hv_ref is not None else default_reference(problem.n)
    h = np.asarray(href, dtype=np.float64)
    if h.shape != (2,):
        raise ValueError("hypervolume reference point must have two components")
    if h[0] > 1.0 or h[1] > 1.0:
        # every attainable fitness component is at least 1
        raise ValueError("hypervolume reference components must be <= 1")
    local = cfg.mutation is MutationKind.LOCAL
    out = _smsemoa_kernel(
        problem.mask, cfg.mu, local, cfg.dedup, cfg.init_excludes_front, budget, h, rng,
    )
    return _finish(out, budget, observer)


_RUNNERS = {
    AlgoKind.SEMO: run_gsemo,
    AlgoKind.GSEMO: run_gsemo,
    AlgoKind.NSGA2: run_nsga2,
    AlgoKind.NSGA3: run_nsga3,
    AlgoKind.SMSEMOA: run_smsemoa,
}


def run(
    problem: ProblemInstance,
    cfg: AlgorithmConfig,
    budget: int,
    rng: np.random.Generator,
    observer: Observer | None = None,
) -> RunResult:
    """Dispatch to the engine matching ``cfg.kind``."""
    return _RUNNERS[cfg.kind](problem, cfg, budget, rng, observer)
