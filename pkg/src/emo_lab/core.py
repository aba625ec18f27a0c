"""Bitstring genotypes, integer fitness vectors, and Pareto dominance."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Dominance",
    "Individual",
    "Population",
    "bitstring",
    "bits_from_string",
    "bits_to_string",
    "dominance_compare",
    "dominates",
    "ones_count",
    "random_bitstring",
    "zeros_count",
]


class Dominance(Enum):
    """Outcome of comparing two fitness vectors under maximisation."""

    DOMINATES = "dominates"
    DOMINATED_BY = "dominated_by"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


def dominance_compare(u: Sequence[int], v: Sequence[int]) -> Dominance:
    """Compare two fitness vectors componentwise (all objectives maximised).

    ``u`` dominates ``v`` when every component of ``u`` is >= the matching
    component of ``v`` and at least one is strictly greater.  Identical
    vectors are EQUAL, everything else is INCOMPARABLE.
    """
    if len(u) != len(v):
        raise ValueError(f"objective count mismatch: {len(u)} vs {len(v)}")
    u_ge = all(a >= b for a, b in zip(u, v))
    v_ge = all(b >= a for a, b in zip(u, v))
    if u_ge and v_ge:
        return Dominance.EQUAL
    if u_ge:
        return Dominance.DOMINATES
    if v_ge:
        return Dominance.DOMINATED_BY
    return Dominance.INCOMPARABLE


def dominates(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff ``u`` strictly dominates ``v``."""
    return dominance_compare(u, v) is Dominance.DOMINATES


def bitstring(bits: Iterable[int]) -> np.ndarray:
    """Return a validated, read-only uint8 array of 0/1 values."""
    arr = np.array(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a bitstring must be a nonempty 1-d sequence")
    if np.any(arr > 1):
        raise ValueError("bitstring entries must be 0 or 1")
    arr.setflags(write=False)
    return arr


def random_bitstring(n: int, rng: np.random.Generator) -> np.ndarray:
    """Sample a uniform bitstring of length ``n``."""
    if n < 1:
        raise ValueError("bitstring length must be positive")
    arr = rng.integers(0, 2, size=n, dtype=np.uint8)
    arr.setflags(write=False)
    return arr


def bits_from_string(text: str) -> np.ndarray:
    """Parse a bitstring literal such as ``"10100"``."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a bitstring literal: {text!r}")
    return bitstring([int(c) for c in text])


def bits_to_string(x: np.ndarray) -> str:
    return "".join(str(int(b)) for b in x)


def ones_count(x: np.ndarray) -> int:
    """Number of 1-bits in ``x``."""
    return int(np.asarray(x).sum())


def zeros_count(x: np.ndarray) -> int:
    """Number of 0-bits in ``x``."""
    return int(np.asarray(x).size) - ones_count(x)


@dataclass(frozen=True, eq=False)
class Individual:
    """A genotype with its fitness cached at construction.

    Genotypes are immutable; engines never re-evaluate an individual, so
    the number of Individual constructions from fresh genotypes equals the
    number of fitness evaluations.
    """

    genotype: np.ndarray
    fitness: tuple[int, ...]


# Populations are ordered multisets: all tie-breaking randomness is drawn
# from an explicit Generator, never from container iteration order.
Population = list
