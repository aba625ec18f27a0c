"""Layer sorting, crowding distance, and crowding-based truncation."""

import math

import numpy as np
import pytest

from emo_lab import (
    Individual,
    bitstring,
    crowding_distance,
    evaluate_otzt,
    make_individual,
    non_dominated_sort,
    nsga2_truncate,
    one_trap_zero_trap,
    oracle_non_dominated_sort,
    select_critical_layer,
)


def interior_layer(n, ones_counts):
    """Trap individuals with the given ones-counts (unique iff counts are)."""
    inst = one_trap_zero_trap(n)
    members = []
    for m in ones_counts:
        bits = bitstring([1] * m + [0] * (n - m))
        members.append(Individual(genotype=bits, fitness=evaluate_otzt(inst, bits)))
    return members


def raw_individual(fitness, tag=0):
    """An individual carrying an arbitrary fitness vector."""
    return Individual(genotype=bitstring([1, tag % 2]), fitness=tuple(fitness))


def test_sort_trap_four_points():
    inst = one_trap_zero_trap(20)
    zero = make_individual(inst, np.zeros(20, np.uint8))
    one = make_individual(inst, np.ones(20, np.uint8))
    five = make_individual(inst, bitstring([1] * 5 + [0] * 15))
    ten = make_individual(inst, bitstring([1] * 10 + [0] * 10))
    layers = non_dominated_sort([zero, one, five, ten])
    assert layers[0] == [zero, one]
    assert layers[1] == [five, ten]
    assert len(layers) == 2


def test_sort_all_equal_is_single_layer():
    members = [raw_individual((4, 4)) for _ in range(5)]
    layers = non_dominated_sort(members)
    assert layers == [members]


def test_sort_matches_peeling_oracle():
    rng = np.random.default_rng(0)
    for _ in range(300):
        count = int(rng.integers(1, 17))
        members = [raw_individual(rng.integers(0, 8, size=2)) for _ in range(count)]
        fast = non_dominated_sort(members)
        slow = oracle_non_dominated_sort(members)
        assert [[id(m) for m in layer] for layer in fast] == [
            [id(m) for m in layer] for layer in slow
        ]


def test_sort_layer_membership_order_independent():
    rng = np.random.default_rng(1)
    members = [raw_individual(rng.integers(0, 6, size=2)) for _ in range(12)]
    base = {id(m): li for li, layer in enumerate(non_dominated_sort(members)) for m in layer}
    perm = [members[i] for i in rng.permutation(12)]
    shuffled = {id(m): li for li, layer in enumerate(non_dominated_sort(perm)) for m in layer}
    assert base == shuffled


def test_critical_layer_examples():
    a = [raw_individual((9, 0)) for _ in range(2)]
    b = [raw_individual((5, 1)) for _ in range(6)]
    part = select_critical_layer([a, b], mu=4)
    assert part.critical_index == 2
    assert part.carried == a
    assert part.open_slots == 2

    part = select_critical_layer([b + a[:2]], mu=4)
    assert part.critical_index == 1
    assert part.carried == []
    assert part.open_slots == 4

    part = select_critical_layer([a[:1], b + a], mu=8)
    assert part.critical_index == 2
    assert part.open_slots == 7

    with pytest.raises(ValueError):
        select_critical_layer([a], mu=4)


def test_crowding_hand_computed_example():
    members = [raw_individual(f) for f in ((1, 19), (2, 18), (3, 17))]
    values = crowding_distance(members)
    assert values[0] == math.inf
    assert values[2] == math.inf
    # (3-1)/(3-1) + (19-17)/(19-17) = 2, evaluated by hand
    assert values[1] == pytest.approx(2.0)


def test_crowding_small_sets_all_infinite():
    for count in (1, 2):
        members = [raw_individual((i, 5 - i)) for i in range(count)]
        assert np.all(np.isinf(crowding_distance(members)))


def test_crowding_trap_layer_extremes_are_the_infinite_ones():
    rng = np.random.default_rng(2)
    n = 24
    for _ in range(50):
        size = int(rng.integers(3, 10))
        counts = sorted(rng.choice(np.arange(1, n), size=size, replace=False).tolist())
        members = interior_layer(n, counts)
        values = crowding_distance(members)
        infinite = {i for i, v in enumerate(values) if math.isinf(v)}
        # unique fitness: the max-ones and max-zeros members and only them
        assert infinite == {0, len(members) - 1}


def test_crowding_symmetric_under_objective_swap():
    rng = np.random.default_rng(3)
    for _ in range(100):
        fits = [tuple(rng.integers(0, 12, size=2)) for _ in range(int(rng.integers(1, 9)))]
        members = [raw_individual(f) for f in fits]
        swapped = [raw_individual((f2, f1)) for f1, f2 in fits]
        assert np.array_equal(crowding_distance(members), crowding_distance(swapped))


def _crowding_ascending_reference(fits):
    """Alternate evaluation sorting ascending; used to show the boundary
    rule does not depend on the sort direction."""
    m = len(fits)
    values = np.zeros(m)
    for k in range(2):
        order = sorted(range(m), key=lambda i: fits[i][k])  # stable ascending
        values[order[0]] = math.inf
        values[order[-1]] = math.inf
        denom = fits[order[-1]][k] - fits[order[0]][k]
        if denom > 0:
            for pos in range(1, m - 1):
                i = order[pos]
                values[i] += (fits[order[pos + 1]][k] - fits[order[pos - 1]][k]) / denom
    return values


def test_crowding_sort_direction_irrelevant_on_unique_fitness():
    rng = np.random.default_rng(4)
    for _ in range(50):
        size = int(rng.integers(3, 9))
        counts = sorted(rng.choice(np.arange(1, 20), size=size, replace=False).tolist())
        members = interior_layer(20, counts)
        ours = crowding_distance(members)
        alt = _crowding_ascending_reference([m.fitness for m in members])
        assert np.array_equal(np.isinf(ours), np.isinf(alt))
        finite = ~np.isinf(ours)
        assert np.allclose(ours[finite], alt[finite])


def test_crowding_equal_fitness_positional_rule():
    members = [raw_individual((4, 4)) for _ in range(4)]
    values = crowding_distance(members)
    assert math.isinf(values[0]) and math.isinf(values[3])
    assert values[1] == 0.0 and values[2] == 0.0


def test_truncate_whole_layer_and_bounds():
    members = [raw_individual(f) for f in ((1, 19), (2, 18), (3, 17))]
    rng = np.random.default_rng(5)
    assert set(map(id, nsga2_truncate(members, 3, rng))) == set(map(id, members))
    with pytest.raises(ValueError):
        nsga2_truncate(members, 4, rng)


def test_truncate_prefers_infinite_members():
    members = [raw_individual(f) for f in ((1, 19), (2, 18), (3, 17))]
    rng = np.random.default_rng(6)
    middle = members[1]
    for _ in range(50):
        kept = nsga2_truncate(members, 2, rng)
        assert middle not in kept
        one = nsga2_truncate(members, 1, rng)[0]
        assert one is not middle


def test_truncate_uniform_among_equal_values():
    # four positional-extreme members (duplicated extreme fitness), one
    # finite member; keeping 3 must exclude each extreme ~ 1/4 of the time
    fits = [(9, 1), (9, 1), (1, 9), (1, 9), (5, 5)]
    members = [raw_individual(f, tag=i) for i, f in enumerate(fits)]
    values = crowding_distance(members)
    assert sum(math.isinf(v) for v in values) == 4
    rng = np.random.default_rng(7)
    excluded = {id(m): 0 for m in members[:4]}
    trials = 4000
    for _ in range(trials):
        kept = nsga2_truncate(members, 3, rng)
        assert members[4] not in kept
        (missing,) = [m for m in members[:4] if m not in kept]
        excluded[id(missing)] += 1
    for count in excluded.values():
        assert abs(count / trials - 0.25) <= 0.04


def test_truncate_keeps_both_extremes_of_unique_layers():
    rng = np.random.default_rng(8)
    n = 16
    for _ in range(200):
        size = int(rng.integers(4, 10))
        counts = sorted(rng.choice(np.arange(1, n), size=size, replace=False).tolist())
        members = interior_layer(n, counts)
        kept = nsga2_truncate(members, 3, rng)
        assert members[0] in kept and members[-1] in kept
