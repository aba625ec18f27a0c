"""Parent selection and mutation operators.

All randomness flows through a single ``numpy.random.Generator`` owned by
one run.  The draw order is fixed and documented per operator so that runs
are bitwise reproducible:

* ``uniform_parent_select`` always consumes exactly one index draw.
* bitwise mutation consumes one uniform per position (per-bit Bernoulli
  with probability 1/n), in position order.
* local mutation consumes one index draw.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

import numpy as np
from numba import njit

from .core import Individual

__all__ = ["MutationKind", "mutate", "uniform_parent_select"]


class MutationKind(Enum):
    """Available mutation operators."""

    BITWISE = "bitwise"  # flip each bit independently with probability 1/n
    LOCAL = "local"      # flip exactly one uniformly chosen bit


@njit(cache=True, nogil=True)
def _draw_index(rng, k):
    return rng.integers(0, k)


@njit(cache=True, nogil=True)
def _mutate_bitwise_into(parent, out, rng):
    n = parent.size
    p = 1.0 / n
    for i in range(n):
        out[i] = parent[i]
    for i in range(n):
        if rng.random() < p:
            out[i] = 1 - out[i]


@njit(cache=True, nogil=True)
def _mutate_local_into(parent, out, rng):
    n = parent.size
    for i in range(n):
        out[i] = parent[i]
    j = rng.integers(0, n)
    out[j] = 1 - out[j]


def mutate(kind: MutationKind, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Return a mutated copy of ``x`` (the input is never modified)."""
    x = np.asarray(x, dtype=np.uint8)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("genotype must be a nonempty 1-d bit array")
    out = np.empty(x.size, dtype=np.uint8)
    if kind is MutationKind.BITWISE:
        _mutate_bitwise_into(x, out, rng)
    elif kind is MutationKind.LOCAL:
        _mutate_local_into(x, out, rng)
    else:
        raise ValueError(f"unknown mutation kind: {kind!r}")
    out.setflags(write=False)
    return out


def uniform_parent_select(population: Sequence[Individual], rng: np.random.Generator) -> Individual:
    """Pick one member uniformly at random (with replacement across calls)."""
    if not population:
        raise ValueError("cannot select from an empty population")
    return population[int(_draw_index(rng, len(population)))]
