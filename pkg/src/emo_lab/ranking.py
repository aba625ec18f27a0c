"""Non-dominated sorting, critical layer selection, and crowding distance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .core import Individual

__all__ = [
    "LayerPartition",
    "crowding_distance",
    "non_dominated_sort",
    "nsga2_truncate",
    "select_critical_layer",
]


@njit(cache=True, nogil=True)
def _layer_indices(fit):
    """Assign each row of a fitness matrix its non-domination layer (0-based).

    Plain O(m^2 d) dominance counting.  Layer membership is independent of
    the input order; callers that need stable layer contents should scan
    the returned array in input order.
    """
    m = fit.shape[0]
    d = fit.shape[1]
    ndom = np.zeros(m, np.int64)
    dom = np.zeros((m, m), np.bool_)
    for i in range(m):
        for j in range(i + 1, m):
            i_ge = True
            j_ge = True
            for k in range(d):
                if fit[i, k] < fit[j, k]:
                    i_ge = False
                if fit[j, k] < fit[i, k]:
                    j_ge = False
            if i_ge and not j_ge:
                dom[i, j] = True
                ndom[j] += 1
            elif j_ge and not i_ge:
                dom[j, i] = True
                ndom[i] += 1
    layer = np.full(m, -1, np.int64)
    frontier = np.empty(m, np.int64)
    fcount = 0
    for i in range(m):
        if ndom[i] == 0:
            layer[i] = 0
            frontier[fcount] = i
            fcount += 1
    lvl = 0
    while fcount > 0:
        nxt = np.empty(m, np.int64)
        ncount = 0
        for fi in range(fcount):
            i = frontier[fi]
            for j in range(m):
                if dom[i, j]:
                    ndom[j] -= 1
                    if ndom[j] == 0:
                        layer[j] = lvl + 1
                        nxt[ncount] = j
                        ncount += 1
        frontier = nxt
        fcount = ncount
        lvl += 1
    return layer


@njit(cache=True, nogil=True)
def _crowding(fit):
    """Crowding distances for one layer given as an integer fitness matrix.

    Per objective the layer is stably sorted in descending order; the first
    and last ranked get an infinite value, interior positions accumulate
    the neighbour gap normalised by the objective's total range.  A
    degenerate range (all values equal) contributes 0 to interior points.
    """
    m = fit.shape[0]
    d = fit.shape[1]
    vals = np.zeros(m, np.float64)
    for k in range(d):
        order = np.argsort(-fit[:, k], kind="mergesort")
        vals[order[0]] = np.inf
        vals[order[m - 1]] = np.inf
        denom = float(fit[order[0], k] - fit[order[m - 1], k])
        if denom > 0.0:
            for pos in range(1, m - 1):
                i = order[pos]
                vals[i] += (fit[order[pos - 1], k] - fit[order[pos + 1], k]) / denom
    return vals


@njit(cache=True, nogil=True)
def _pick_largest(values, r, rng):
    """Indices of the ``r`` largest values; ties broken uniformly at random.

    A uniform random permutation is applied first, then a stable descending
    sort, so equally-valued candidates appear in uniformly random relative
    order.  Consumes the permutation draws unconditionally.
    """
    m = values.size
    perm = rng.permutation(m)
    key = np.empty(m, np.float64)
    for i in range(m):
        key[i] = values[perm[i]]
    order = np.argsort(-key, kind="mergesort")
    out = np.empty(r, np.int64)
    for i in range(r):
        out[i] = perm[order[i]]
    return out


def _fitness_matrix(members: Sequence[Individual]) -> np.ndarray:
    return np.array([ind.fitness for ind in members], dtype=np.int64)


def non_dominated_sort(members: Sequence[Individual]) -> list[list[Individual]]:
    """Partition a multiset of individuals into non-domination layers.

    The first layer holds everything not dominated within the input; each
    later layer holds what becomes non-dominated once the earlier layers
    are removed.  Layers preserve the input order internally.
    """
    if not members:
        raise ValueError("cannot sort an empty multiset")
    layer = _layer_indices(_fitness_matrix(members))
    layers: list[list[Individual]] = [[] for _ in range(int(layer.max()) + 1)]
    for idx, lvl in enumerate(layer):
        layers[int(lvl)].append(members[idx])
    return layers


@dataclass(frozen=True)
class LayerPartition:
    """Layers plus the capacity split used by the fixed-size engines."""

    layers: list
    critical_index: int  # 1-based index of the layer straddling the capacity
    carried: list        # members of all layers before the critical one
    open_slots: int      # capacity left for critical-layer members


def select_critical_layer(layers: Sequence[Sequence[Individual]], mu: int) -> LayerPartition:
    """Find the layer at which cumulative layer sizes first reach ``mu``."""
    total = sum(len(layer) for layer in layers)
    if total < mu:
        raise ValueError(f"layers hold {total} members, cannot fill capacity {mu}")
    carried: list[Individual] = []
    for i, layer in enumerate(layers):
        if len(carried) + len(layer) >= mu:
            return LayerPartition(
                layers=[list(l) for l in layers],
                critical_index=i + 1,
                carried=carried,
                open_slots=mu - len(carried),
            )
        carried = carried + list(layer)
    raise AssertionError("unreachable: total >= mu")


def crowding_distance(members: Sequence[Individual]) -> np.ndarray:
    """Crowding value per member, aligned with the input order."""
    if not members:
        raise ValueError("cannot compute crowding distance of an empty multiset")
    return _crowding(_fitness_matrix(members))


def nsga2_truncate(members: Sequence[Individual], r: int, rng: np.random.Generator) -> list[Individual]:
    """Keep the ``r`` members with the largest crowding distances.

    Ties are broken uniformly at random.
    """
    if r > len(members):
        raise ValueError(f"cannot keep {r} members out of {len(members)}")
    if r < 0:
        raise ValueError("r must be nonnegative")
    values = crowding_distance(members)
    chosen = _pick_largest(values, r, rng)
    return [members[int(i)] for i in chosen]
