"""Mutation operator distributions and uniform parent selection."""

import numpy as np
import pytest

from emo_lab import (
    Individual,
    MutationKind,
    bitstring,
    make_individual,
    mutate,
    one_trap_zero_trap,
    uniform_parent_select,
)


def hamming(a, b):
    return int((a != b).sum())


def test_local_mutation_flips_exactly_one_bit():
    rng = np.random.default_rng(0)
    for _ in range(300):
        n = int(rng.integers(1, 50))
        x = bitstring(rng.integers(0, 2, size=n, dtype=np.uint8))
        y = mutate(MutationKind.LOCAL, x, rng)
        assert hamming(x, y) == 1
        assert y.size == n


def test_bitwise_mean_flip_count():
    # Binomial(n, 1/n) has mean 1; Monte-Carlo check at n=20
    rng = np.random.default_rng(1)
    n = 20
    x = bitstring(np.zeros(n, dtype=np.uint8))
    trials = 100_000
    total = 0
    for _ in range(trials):
        total += int(mutate(MutationKind.BITWISE, x, rng).sum())
    assert abs(total / trials - 1.0) <= 0.05


def test_bitwise_all_bits_flip_probability():
    # exact Binomial oracle: P(all 4 bits flip) = (1/4)^4 = 1/256
    rng = np.random.default_rng(2)
    n = 4
    x = bitstring(np.zeros(n, dtype=np.uint8))
    trials = 1_000_000
    hits = 0
    for _ in range(trials):
        if mutate(MutationKind.BITWISE, x, rng).sum() == n:
            hits += 1
    p = 1.0 / 256.0
    sigma = (p * (1 - p) / trials) ** 0.5
    assert abs(hits / trials - p) <= 3 * sigma


def test_bitwise_per_position_frequency_and_independence():
    rng = np.random.default_rng(3)
    n = 8
    x = bitstring(np.zeros(n, dtype=np.uint8))
    trials = 50_000
    flips = np.zeros((trials, n))
    for i in range(trials):
        flips[i] = mutate(MutationKind.BITWISE, x, rng)
    freq = flips.mean(axis=0)
    assert np.all(np.abs(freq - 1.0 / n) < 0.01)
    cov = np.cov(flips, rowvar=False)
    off_diag = cov[~np.eye(n, dtype=bool)]
    assert np.all(np.abs(off_diag) < 0.005)


def test_mutate_does_not_touch_the_input():
    rng = np.random.default_rng(4)
    x = bitstring([1, 0, 1, 0, 1])
    snapshot = x.copy()
    for _ in range(50):
        mutate(MutationKind.BITWISE, x, rng)
        mutate(MutationKind.LOCAL, x, rng)
    assert np.array_equal(x, snapshot)


def test_parent_select_single_member():
    inst = one_trap_zero_trap(4)
    member = make_individual(inst, bitstring([0, 1, 0, 1]))
    rng = np.random.default_rng(5)
    for _ in range(20):
        assert uniform_parent_select([member], rng) is member


def test_parent_select_uniform_frequencies():
    inst = one_trap_zero_trap(6)
    rng = np.random.default_rng(6)
    members = [
        make_individual(inst, bitstring([int(b) for b in f"{value:06b}"]))
        for value in (1, 3, 7, 15)
    ]
    draws = 100_000
    counts = {id(m): 0 for m in members}
    for _ in range(draws):
        counts[id(uniform_parent_select(members, rng))] += 1
    for m in members:
        assert abs(counts[id(m)] / draws - 0.25) <= 0.02


def test_parent_select_multiset_semantics():
    # duplicate genotypes are distinct members and each gets its own mass
    inst = one_trap_zero_trap(4)
    a = make_individual(inst, bitstring([0, 1, 1, 0]))
    b = make_individual(inst, bitstring([0, 1, 1, 0]))
    rng = np.random.default_rng(7)
    draws = 40_000
    hits_a = sum(uniform_parent_select([a, b], rng) is a for _ in range(draws))
    assert abs(hits_a / draws - 0.5) <= 0.02


def test_parent_select_empty_population():
    with pytest.raises(ValueError):
        uniform_parent_select([], np.random.default_rng(0))
