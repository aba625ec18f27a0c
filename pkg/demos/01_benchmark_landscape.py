"""A tour of the bi-objective trap landscape.

The benchmark rewards ones in the first objective and zeros in the
second, with a large bonus on the two conforming extremes.  The Pareto
front is exactly {all-zeros, all-ones}; every other point sits on the
anti-diagonal and is incomparable with every other interior point.
"""

import numpy as np

from emo_lab import (
    bits_from_string,
    evaluate_otzt,
    evaluate_trap,
    front_fitness,
    is_pareto_optimal,
    one_trap_zero_trap,
)

n = 20
inst = one_trap_zero_trap(n)

print(f"=== landscape at n={n} (one fitness class per ones-count) ===")
print(f"{'ones':>5} {'f1':>5} {'f2':>5}  note")
for m in range(n + 1):
    x = np.array([1] * m + [0] * (n - m), dtype=np.uint8)
    f1, f2 = evaluate_otzt(inst, x)
    note = "Pareto-optimal" if is_pareto_optimal(inst, x) else ""
    print(f"{m:>5} {f1:>5} {f2:>5}  {note}")

print()
print("front fitness vectors:", front_fitness(n))

# The scalar trap is the first objective on its own: climbing ones leads
# away from the bonus at the all-zeros string.
print()
print("=== scalar trap slice at n=5 ===")
for text in ("00000", "10000", "11000", "11100", "11110", "11111"):
    print(f"  trap({text}) = {evaluate_trap(5, bits_from_string(text))}")

# XOR masks relocate the two optima without changing the structure:
# the instance with mask a scores x exactly like the plain instance
# scores x ^ a.
print()
print("=== a masked instance keeps the same geometry ===")
rng = np.random.default_rng(7)
mask = rng.integers(0, 2, size=n, dtype=np.uint8)
masked = one_trap_zero_trap(n, mask)
print("mask          :", "".join(map(str, mask)))
print("optimum A     :", "".join(map(str, mask)), "->", evaluate_otzt(masked, mask))
print("optimum B     :", "".join(map(str, 1 - mask)), "->", evaluate_otzt(masked, 1 - mask))
x = rng.integers(0, 2, size=n, dtype=np.uint8)
print("random point  :", "".join(map(str, x)), "->", evaluate_otzt(masked, x),
      "= plain at x^mask:", evaluate_otzt(inst, x ^ mask))
