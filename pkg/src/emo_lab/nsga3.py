"""Reference-point selection: normalisation, ray association, and niching.

The critical-layer selection used by NSGA-III.  Objective vectors are
normalised against the ideal point (componentwise minimum of the current
generation's candidates) and a nadir point chosen to keep all denominators
strictly positive; each candidate is then associated with the nearest
reference ray, and a round-robin niching loop fills the remaining
population slots, always serving the reference point with the smallest
niche count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
from numba import njit

from .core import Individual

__all__ = [
    "NormalizationContext",
    "ReferencePointSet",
    "associate",
    "compute_context",
    "das_dennis",
    "niching",
    "normalize",
    "ray_distance",
    "unit_vectors",
]

DEFAULT_EPS_NADIR = 1e-6


@dataclass(frozen=True)
class ReferencePointSet:
    """Nonzero, pairwise-distinct reference points spanning the objectives."""

    points: np.ndarray  # (count, d) float64
    contains_unit_vectors: bool

    def __len__(self) -> int:
        return int(self.points.shape[0])


def _make_refset(points: np.ndarray) -> ReferencePointSet:
    points = np.ascontiguousarray(points, dtype=np.float64)
    if np.any(np.all(points == 0.0, axis=1)):
        raise ValueError("reference points must be nonzero")
    if len({tuple(p) for p in points}) != points.shape[0]:
        raise ValueError("reference points must be pairwise distinct")
    d = points.shape[1]
    units = {tuple(row) for row in np.eye(d)}
    has_units = units.issubset({tuple(p) for p in points})
    points.setflags(write=False)
    return ReferencePointSet(points=points, contains_unit_vectors=has_units)


def unit_vectors(d: int = 2) -> ReferencePointSet:
    """The d axis unit vectors, the minimal useful reference set."""
    if d < 2:
        raise ValueError("need at least two objectives")
    return _make_refset(np.eye(d))


def das_dennis(d: int, p: int) -> ReferencePointSet:
    """Simplex-lattice reference points: all (a_1/p, ..., a_d/p) with
    nonnegative integers a_i summing to p.

    Yields C(p+d-1, d-1) points, always including the unit vectors.
    """
    if d < 2:
        raise ValueError("need at least two objectives")
    if p < 1:
        raise ValueError("lattice resolution p must be >= 1")
    rows = []
    # Stars and bars: bar positions determine the composition.
    for bars in combinations(range(p + d - 1), d - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(p + d - 2 - prev)
        rows.append([a / p for a in comp])
    points = np.array(rows, dtype=np.float64)
    assert points.shape[0] == math.comb(p + d - 1, d - 1)
    return _make_refset(points)


@dataclass(frozen=True)
class NormalizationContext:
    """Ideal/nadir pair with guaranteed strictly positive denominators."""

    z_ideal: np.ndarray
    z_max: np.ndarray
    z_nadir: np.ndarray
    eps_nadir: float


@njit(cache=True, nogil=True)
def _context_arrays(fit, eps):
    d = fit.shape[1]
    ideal = np.empty(d, np.float64)
    zmax = np.empty(d, np.float64)
    nadir = np.empty(d, np.float64)
    for j in range(d):
        lo = fit[0, j]
        hi = fit[0, j]
        for i in range(1, fit.shape[0]):
            v = fit[i, j]
            if v < lo:
                lo = v
            if v > hi:
                hi = v
        ideal[j] = lo
        zmax[j] = hi
        # Nadir rule: take the maximum when it is usable, otherwise fall
        # back to a small offset above the ideal so that nadir > ideal and
        # nadir >= eps always hold.
        if hi > lo and hi >= eps:
            nadir[j] = hi
        else:
            nadir[j] = max(lo + eps, eps)
    return ideal, zmax, nadir


@njit(cache=True, nogil=True)
def _normalize_all(fit, ideal, nadir):
    m = fit.shape[0]
    d = fit.shape[1]
    out = np.empty((m, d), np.float64)
    for i in range(m):
        for j in range(d):
            out[i, j] = (fit[i, j] - ideal[j]) / (nadir[j] - ideal[j])
    return out


@njit(cache=True, nogil=True)
def _ray_distance(v, r):
    rr = 0.0
    vr = 0.0
    for j in range(r.size):
        rr += r[j] * r[j]
        vr += v[j] * r[j]
    t = vr / rr
    acc = 0.0
    for j in range(r.size):
        res = v[j] - t * r[j]
        acc += res * res
    return math.sqrt(acc)


@njit(cache=True, nogil=True)
def _associate(vectors, refs, rng):
    """Nearest reference ray per vector; exact distance ties are uniform."""
    m = vectors.shape[0]
    nref = refs.shape[0]
    assoc = np.empty(m, np.int64)
    dist = np.empty(m, np.float64)
    for i in range(m):
        best = np.inf
        for r in range(nref):
            dd = _ray_distance(vectors[i], refs[r])
            if dd < best:
                best = dd
        ties = 0
        for r in range(nref):
            if _ray_distance(vectors[i], refs[r]) == best:
                ties += 1
        pick = 0
        if ties > 1:
            pick = rng.integers(0, ties)
        seen = 0
        for r in range(nref):
            if _ray_distance(vectors[i], refs[r]) == best:
                if seen == pick:
                    assoc[i] = r
                    dist[i] = best
                    break
                seen += 1
    return assoc, dist


@njit(cache=True, nogil=True)
def _niche_select(assoc, dist, ny, nref, slots, rng):
    """Round-robin fill of ``slots`` from the candidates at indices >= ny.

    ``assoc``/``dist`` cover the already-kept members (first ``ny`` rows,
    which only seed the niche counts) followed by the candidates.  Each
    pass picks the active reference point with minimal niche count (ties
    uniform), then its unselected candidate closest to the ray (ties
    uniform); a reference point without candidates left is retired.
    """
    m = assoc.size
    rho = np.zeros(nref, np.int64)
    for i in range(ny):
        rho[assoc[i]] += 1
    active = np.ones(nref, np.bool_)
    selected = np.zeros(m, np.bool_)
    out = np.full(slots, -1, np.int64)
    count = 0
    for _ in range(nref + slots + 1):
        if count == slots:
            break
        # reference point with minimal niche count among the active ones
        best_rho = np.int64(2 ** 62)
        for r in range(nref):
            if active[r] and rho[r] < best_rho:
                best_rho = rho[r]
        if best_rho == 2 ** 62:
            break  # no active reference points left; caller validates
        ties = 0
        for r in range(nref):
            if active[r] and rho[r] == best_rho:
                ties += 1
        pick = 0
        if ties > 1:
            pick = rng.integers(0, ties)
        r_min = -1
        seen = 0
        for r in range(nref):
            if active[r] and rho[r] == best_rho:
                if seen == pick:
                    r_min = r
                    break
                seen += 1
        # unselected candidate associated with r_min at minimal ray distance
        best_d = np.inf
        found = False
        for i in range(ny, m):
            if not selected[i] and assoc[i] == r_min:
                found = True
                if dist[i] < best_d:
                    best_d = dist[i]
        if not found:
            active[r_min] = False
            continue
        ties = 0
        for i in range(ny, m):
            if not selected[i] and assoc[i] == r_min and dist[i] == best_d:
                ties += 1
        pick = 0
        if ties > 1:
            pick = rng.integers(0, ties)
        seen = 0
        for i in range(ny, m):
            if not selected[i] and assoc[i] == r_min and dist[i] == best_d:
                if seen == pick:
                    selected[i] = True
                    out[count] = i
                    count += 1
                    rho[r_min] += 1
                    break
                seen += 1
    return out


def compute_context(
    fitness_vectors: Sequence[Sequence[int]], eps_nadir: float = DEFAULT_EPS_NADIR
) -> NormalizationContext:
    """Ideal/max/nadir points of the current generation's candidates."""
    if len(fitness_vectors) == 0:
        raise ValueError("cannot build a normalisation context from no vectors")
    fit = np.asarray(fitness_vectors, dtype=np.float64)
    ideal, zmax, nadir = _context_arrays(fit, eps_nadir)
    for arr in (ideal, zmax, nadir):
        arr.setflags(write=False)
    return NormalizationContext(z_ideal=ideal, z_max=zmax, z_nadir=nadir, eps_nadir=eps_nadir)


def normalize(f: Sequence[int], ctx: NormalizationContext) -> np.ndarray:
    """Map a fitness vector to [ideal, nadir]-relative coordinates."""
    f = np.asarray(f, dtype=np.float64)
    return (f - ctx.z_ideal) / (ctx.z_nadir - ctx.z_ideal)


def ray_distance(v: Sequence[float], r: Sequence[float]) -> float:
    """Euclidean distance from ``v`` to the ray through the origin and ``r``."""
    r = np.asarray(r, dtype=np.float64)
    if not np.any(r):
        raise ValueError("reference ray must be nonzero")
    return float(_ray_distance(np.asarray(v, dtype=np.float64), r))


def associate(
    vectors: Sequence[Sequence[float]],
    refset: ReferencePointSet,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-ray index and distance per vector (exact ties uniform)."""
    if len(refset) == 0:
        raise ValueError("reference point set is empty")
    vecs = np.ascontiguousarray(vectors, dtype=np.float64)
    return _associate(vecs, refset.points, rng)


def niching(
    carried: Sequence[Individual],
    critical: Sequence[Individual],
    refset: ReferencePointSet,
    mu: int,
    rng: np.random.Generator,
    eps_nadir: float = DEFAULT_EPS_NADIR,
) -> list[Individual]:
    """Select critical-layer members so that carried + selected has size mu.

    Runs the full pipeline on ``carried + critical``: context, normalise,
    associate, then the round-robin loop seeded with the carried members'
    niche counts.
    """
    ny, nc = len(carried), len(critical)
    if not (ny < mu <= ny + nc):
        raise ValueError(f"infeasible niching sizes: |carried|={ny}, |critical|={nc}, mu={mu}")
    fit = np.array([ind.fitness for ind in list(carried) + list(critical)], dtype=np.float64)
    ideal, _, nadir = _context_arrays(fit, eps_nadir)
    vs = _normalize_all(fit, ideal, nadir)
    assoc, dist = _associate(vs, refset.points, rng)
    chosen = _niche_select(assoc, dist, ny, len(refset), mu - ny, rng)
    assert np.all(chosen >= 0), "niching failed to fill all open slots"
    return [critical[int(i) - ny] for i in chosen]
