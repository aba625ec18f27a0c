"""Bi-objective hypervolume, per-point contributions, and worst-point ejection.

All in-scope fitness values and default reference points are integers, and
every intermediate product stays far below 2**53, so the float64 sweep is
exact: equal contributions compare equal bitwise and argmin tie sets are
unambiguous.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from numba import njit

from .core import Individual

__all__ = [
    "default_reference",
    "hv_contribution",
    "hv_contributions",
    "hypervolume_2d",
    "smsemoa_eject",
]


def default_reference(n: int) -> tuple[float, float]:
    """Reference point ``(-ceil(n/2)^2, -ceil(n/2)^2)``.

    Far enough below the attainable fitness range that the two extreme
    points of any interior layer out-contribute every point between them.
    """
    c = float(math.ceil(n / 2) ** 2)
    return (-c, -c)


@njit(cache=True, nogil=True)
def _hv2d(fit, h):
    """Area of the union of boxes [h, f] for the rows of ``fit``.

    Sweep over f1 in descending order, accumulating horizontal strips
    above the best f2 seen so far.
    """
    m = fit.shape[0]
    if m == 0:
        return 0.0
    order = np.argsort(-fit[:, 0], kind="mergesort")
    hv = 0.0
    best2 = h[1]
    for oi in range(m):
        i = order[oi]
        f2 = fit[i, 1]
        if f2 > best2:
            hv += (fit[i, 0] - h[0]) * (f2 - best2)
            best2 = f2
    return hv


@njit(cache=True, nogil=True)
def _contributions(fit, h):
    """Per-row contribution: total hypervolume minus the rest's hypervolume."""
    m = fit.shape[0]
    total = _hv2d(fit, h)
    out = np.empty(m, np.float64)
    sub = np.empty((m - 1, 2), np.float64)
    for i in range(m):
        w = 0
        for j in range(m):
            if j != i:
                sub[w, 0] = fit[j, 0]
                sub[w, 1] = fit[j, 1]
                w += 1
        out[i] = total - _hv2d(sub[:w], h)
    return out


@njit(cache=True, nogil=True)
def _argmin_uniform(values, rng):
    """Index of a minimal value, uniform among exact ties."""
    m = values.size
    best = values[0]
    for i in range(1, m):
        if values[i] < best:
            best = values[i]
    ties = 0
    for i in range(m):
        if values[i] == best:
            ties += 1
    pick = 0
    if ties > 1:
        pick = rng.integers(0, ties)
    seen = 0
    for i in range(m):
        if values[i] == best:
            if seen == pick:
                return i
            seen += 1
    return 0


def _points_matrix(points, h) -> np.ndarray:
    fit = np.asarray(points, dtype=np.float64)
    if fit.size == 0:
        return fit.reshape(0, 2)
    if fit.ndim != 2 or fit.shape[1] != 2:
        raise ValueError("expected a sequence of bi-objective fitness vectors")
    if np.any(fit[:, 0] < h[0]) or np.any(fit[:, 1] < h[1]):
        raise ValueError("every point must weakly dominate the reference point")
    return fit


def hypervolume_2d(points: Sequence[Sequence[float]], reference: Sequence[float]) -> float:
    """Measure of the region dominated by ``points`` above ``reference``."""
    h = np.asarray(reference, dtype=np.float64)
    if h.shape != (2,):
        raise ValueError("reference point must have two components")
    return float(_hv2d(_points_matrix(points, h), h))


def hv_contributions(members: Sequence[Individual], reference: Sequence[float]) -> np.ndarray:
    """Hypervolume contribution per member, aligned with the input order."""
    if not members:
        raise ValueError("no members to score")
    h = np.asarray(reference, dtype=np.float64)
    fit = _points_matrix([ind.fitness for ind in members], h)
    return _contributions(fit, h)


def hv_contribution(x: Individual, members: Sequence[Individual], reference: Sequence[float]) -> float:
    """Contribution of ``x`` within ``members`` (zero if its fitness is duplicated)."""
    for idx, ind in enumerate(members):
        if ind is x:
            return float(hv_contributions(members, reference)[idx])
    raise ValueError("individual is not a member of the given set")


def smsemoa_eject(
    members: Sequence[Individual], reference: Sequence[float], rng: np.random.Generator
) -> Individual:
    """Pick a member with minimal hypervolume contribution (ties uniform)."""
    values = hv_contributions(members, reference)
    return members[int(_argmin_uniform(values, rng))]
