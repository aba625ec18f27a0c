"""Trap-style benchmark functions on bitstrings.

The bi-objective benchmark rewards both the number of ones and the number
of zeros, with a large bonus on the two conforming extremes, so its Pareto
front consists of exactly two genotypes at maximal Hamming distance.  An
XOR mask generalises the function to a whole class with the same structure:
the instance with mask ``a`` evaluated at ``x`` equals the unmasked
instance evaluated at ``x ^ a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import Individual, bitstring, ones_count

__all__ = [
    "ProblemInstance",
    "evaluate_otzt",
    "evaluate_trap",
    "format_problem",
    "front_covered",
    "front_fitness",
    "is_pareto_optimal",
    "make_individual",
    "one_trap_zero_trap",
    "parse_problem",
]


@dataclass(frozen=True)
class ProblemInstance:
    """A benchmark instance; ``mask`` is XOR-applied before evaluation."""

    kind: str
    n: int
    mask: np.ndarray

    def __post_init__(self):
        if self.kind not in ("otzt", "trap"):
            raise ValueError(f"unknown problem kind: {self.kind!r}")
        if self.n < 1:
            raise ValueError("problem size n must be positive")
        if self.mask.shape != (self.n,):
            raise ValueError("mask length must equal n")


def one_trap_zero_trap(n: int, mask: Iterable[int] | None = None) -> ProblemInstance:
    """Bi-objective trap instance of size ``n`` (all-zeros mask by default)."""
    mask_arr = bitstring(mask) if mask is not None else bitstring(np.zeros(n, dtype=np.uint8))
    return ProblemInstance(kind="otzt", n=n, mask=mask_arr)


def evaluate_otzt(inst: ProblemInstance, x: np.ndarray) -> tuple[int, int]:
    """Evaluate the bi-objective trap at ``x`` (maximisation).

    With ``y = x ^ mask`` and ``m = |y|_1``:
    ``f1 = m + (n+1)*[m == 0]`` and ``f2 = (n-m) + (n+1)*[m == n]``.
    The all-zeros / all-ones indicators stand in for the products over
    ``1-y_i`` and ``y_i``, which they equal exactly.
    """
    if inst.kind != "otzt":
        raise ValueError(f"not a bi-objective trap instance: {inst.kind!r}")
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (inst.n,):
        raise ValueError(f"genotype length {x.size} does not match n={inst.n}")
    n = inst.n
    m = int((x ^ inst.mask).sum())
    f1 = m + (n + 1) * (m == 0)
    f2 = (n - m) + (n + 1) * (m == n)
    return (f1, f2)


def evaluate_trap(n: int, x: np.ndarray) -> int:
    """Scalar trap value ``|x|_1 + (n+1)*[x == 0^n]``."""
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (n,):
        raise ValueError(f"genotype length {x.size} does not match n={n}")
    m = ones_count(x)
    return m + (n + 1) * (m == 0)


def make_individual(inst: ProblemInstance, x: np.ndarray) -> Individual:
    """Construct an individual with its fitness cached (one evaluation)."""
    return Individual(genotype=bitstring(x), fitness=evaluate_otzt(inst, x))


def is_pareto_optimal(inst: ProblemInstance, x: np.ndarray) -> bool:
    """True iff ``x ^ mask`` is the all-zeros or all-ones string."""
    m = int((np.asarray(x, dtype=np.uint8) ^ inst.mask).sum())
    return m == 0 or m == inst.n


def front_fitness(n: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two Pareto-front fitness vectors."""
    return ((n + 1, n), (n, n + 1))


def front_covered(inst: ProblemInstance, population: Sequence[Individual]) -> bool:
    """True iff the population realises both Pareto-front fitness vectors."""
    targets = set(front_fitness(inst.n))
    seen = {ind.fitness for ind in population if ind.fitness in targets}
    return len(seen) == 2


def format_problem(inst: ProblemInstance) -> str:
    """Serialise to the ``otzt:n=<N>[:mask=<hex>]`` descriptor."""
    text = f"{inst.kind}:n={inst.n}"
    if np.any(inst.mask):
        text += f":mask={_mask_to_hex(inst.mask)}"
    return text


def parse_problem(text: str) -> ProblemInstance:
    """Parse a ``otzt:n=<N>[:mask=<hex>]`` descriptor."""
    parts = text.strip().split(":")
    kind = parts[0]
    if kind != "otzt":
        raise ValueError(f"unsupported problem descriptor: {text!r}")
    n = None
    mask_hex = None
    for part in parts[1:]:
        key, _, value = part.partition("=")
        if key == "n":
            n = int(value)
        elif key == "mask":
            mask_hex = value
        else:
            raise ValueError(f"unknown problem field {key!r} in {text!r}")
    if n is None or n < 1:
        raise ValueError(f"problem descriptor needs n=<positive int>: {text!r}")
    mask = _mask_from_hex(mask_hex, n) if mask_hex else None
    return one_trap_zero_trap(n, mask)


def _mask_to_hex(mask: np.ndarray) -> str:
    # Big bit order: bit i of the mask is bit (7 - i % 8) of byte i // 8.
    return np.packbits(np.asarray(mask, dtype=np.uint8)).tobytes().hex()


def _mask_from_hex(text: str, n: int) -> np.ndarray:
    raw = bytes.fromhex(text)
    if len(raw) != (n + 7) // 8:
        raise ValueError(f"mask hex encodes {len(raw)} bytes, expected {(n + 7) // 8} for n={n}")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=n)
    tail = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))[n:]
    if np.any(tail):
        raise ValueError("mask hex has nonzero padding bits beyond n")
    return bits
