"""Benchmark function values, the XOR mask class, and front predicates."""

import numpy as np
import pytest

from emo_lab import (
    Dominance,
    bits_from_string,
    dominance_compare,
    evaluate_otzt,
    evaluate_trap,
    format_problem,
    front_covered,
    front_fitness,
    is_pareto_optimal,
    make_individual,
    one_trap_zero_trap,
    parse_problem,
)


def all_bitstrings(n):
    for value in range(2**n):
        yield np.array([(value >> i) & 1 for i in range(n)], dtype=np.uint8)


def test_fitness_at_the_two_optima():
    inst = one_trap_zero_trap(20)
    assert evaluate_otzt(inst, np.zeros(20, np.uint8)) == (21, 20)
    assert evaluate_otzt(inst, np.ones(20, np.uint8)) == (20, 21)


def test_fitness_interior_point():
    inst = one_trap_zero_trap(5)
    assert evaluate_otzt(inst, bits_from_string("10100")) == (2, 3)


def test_fitness_with_full_mask():
    # y = x XOR mask = 0^5, so the masked instance scores x like 0^5
    inst = one_trap_zero_trap(5, mask=[1, 1, 1, 1, 1])
    assert evaluate_otzt(inst, bits_from_string("11111")) == (6, 5)


def test_fitness_length_mismatch():
    inst = one_trap_zero_trap(5)
    with pytest.raises(ValueError):
        evaluate_otzt(inst, np.zeros(4, np.uint8))


def test_trap_examples():
    assert evaluate_trap(5, bits_from_string("00000")) == 6
    assert evaluate_trap(5, bits_from_string("11111")) == 5
    assert evaluate_trap(5, bits_from_string("10100")) == 2


def test_pareto_optimality():
    inst = one_trap_zero_trap(8)
    assert is_pareto_optimal(inst, np.zeros(8, np.uint8))
    assert is_pareto_optimal(inst, np.ones(8, np.uint8))
    assert not is_pareto_optimal(inst, bits_from_string("10000000"))
    masked = one_trap_zero_trap(4, mask=[1, 0, 0, 0])
    # x XOR mask = 1^4
    assert is_pareto_optimal(masked, bits_from_string("0111"))
    assert not is_pareto_optimal(masked, bits_from_string("1111"))


def test_front_covered():
    inst = one_trap_zero_trap(6)
    zero = make_individual(inst, np.zeros(6, np.uint8))
    one = make_individual(inst, np.ones(6, np.uint8))
    interior = make_individual(inst, bits_from_string("101000"))
    assert front_covered(inst, [zero, one, interior])
    assert not front_covered(inst, [zero])
    assert not front_covered(inst, [interior, interior])


def test_mask_invariance_exhaustive_small_n():
    rng = np.random.default_rng(0)
    for n in (3, 6, 10):
        mask = rng.integers(0, 2, size=n, dtype=np.uint8)
        masked = one_trap_zero_trap(n, mask)
        plain = one_trap_zero_trap(n)
        for x in all_bitstrings(n):
            assert evaluate_otzt(masked, x) == evaluate_otzt(plain, x ^ mask)


def test_mask_invariance_randomized_larger_n():
    rng = np.random.default_rng(1)
    n = 40
    mask = rng.integers(0, 2, size=n, dtype=np.uint8)
    masked = one_trap_zero_trap(n, mask)
    plain = one_trap_zero_trap(n)
    for _ in range(500):
        x = rng.integers(0, 2, size=n, dtype=np.uint8)
        assert evaluate_otzt(masked, x) == evaluate_otzt(plain, x ^ mask)


def test_interior_fitness_depends_only_on_unitation():
    inst = one_trap_zero_trap(8)
    by_ones = {}
    for x in all_bitstrings(8):
        by_ones.setdefault(int(x.sum()), set()).add(evaluate_otzt(inst, x))
    assert all(len(values) == 1 for values in by_ones.values())
    for m in range(1, 8):
        assert by_ones[m] == {(m, 8 - m)}


def test_front_structure_small_exhaustive():
    # every optimum dominates every other point; the optima are mutually
    # incomparable; distinct non-optimal points never dominate each other
    for n in range(1, 9):
        inst = one_trap_zero_trap(n)
        front = set(front_fitness(n))
        points = [evaluate_otzt(inst, x) for x in all_bitstrings(n)]
        for u in points:
            for v in points:
                rel = dominance_compare(u, v)
                if u in front and v not in front:
                    assert rel is Dominance.DOMINATES
                elif u in front and v in front and u != v:
                    assert rel is Dominance.INCOMPARABLE
                elif u not in front and v not in front:
                    assert rel in (Dominance.INCOMPARABLE, Dominance.EQUAL)


def test_descriptor_round_trip():
    inst = one_trap_zero_trap(12, mask=[1, 0] * 6)
    text = format_problem(inst)
    back = parse_problem(text)
    assert back.n == 12
    assert np.array_equal(back.mask, inst.mask)
    assert format_problem(back) == text

    plain = parse_problem("otzt:n=32")
    assert plain.n == 32
    assert not plain.mask.any()
    assert format_problem(plain) == "otzt:n=32"


def test_descriptor_errors():
    with pytest.raises(ValueError):
        parse_problem("nonsense:n=4")
    with pytest.raises(ValueError):
        parse_problem("otzt")
    with pytest.raises(ValueError):
        parse_problem("otzt:n=0")
    with pytest.raises(ValueError):
        parse_problem("otzt:n=4:mask=abcd")  # nonzero padding bits
    with pytest.raises(ValueError):
        parse_problem("otzt:n=4:mask=0000")  # wrong byte count
