"""The three survival-selection mechanisms on one critical layer.

A layer of mutually incomparable points has to be thinned to fit the
population capacity.  NSGA-II scores crowding distance, NSGA-III
normalises and fills reference-ray niches, SMS-EMOA ejects the smallest
hypervolume contributor.  All three favour the layer's two extremes,
which is what keeps progress toward both optima alive.
"""

import numpy as np

from emo_lab import (
    Individual,
    associate,
    bitstring,
    compute_context,
    crowding_distance,
    das_dennis,
    default_reference,
    evaluate_otzt,
    hv_contributions,
    niching,
    normalize,
    nsga2_truncate,
    one_trap_zero_trap,
    unit_vectors,
)

n = 16
inst = one_trap_zero_trap(n)
ones_counts = [3, 6, 7, 11, 13]
layer = []
for m in ones_counts:
    bits = bitstring([1] * m + [0] * (n - m))
    layer.append(Individual(genotype=bits, fitness=evaluate_otzt(inst, bits)))
print("layer fitness vectors:", [m.fitness for m in layer])

print()
print("=== crowding distance (sort-boundary members get infinity) ===")
for member, value in zip(layer, crowding_distance(layer)):
    print(f"  {member.fitness}: {value}")
rng = np.random.default_rng(0)
kept = nsga2_truncate(layer, 3, rng)
print("keep 3 by crowding:", [m.fitness for m in kept])

print()
print("=== reference-point niching ===")
ctx = compute_context([m.fitness for m in layer])
print("ideal:", tuple(ctx.z_ideal.tolist()), "nadir:", tuple(ctx.z_nadir.tolist()))
vectors = [normalize(m.fitness, ctx) for m in layer]
refset = unit_vectors(2)
idx, dist = associate(vectors, refset, rng)
for member, v, r, d in zip(layer, vectors, idx, dist):
    ray = tuple(refset.points[r].tolist())
    print(f"  {member.fitness} -> normalised ({v[0]:.2f}, {v[1]:.2f}), ray {ray}, distance {d:.3f}")
kept = niching([], layer, refset, mu=3, rng=rng)
print("keep 3 by niching:", [m.fitness for m in kept])
lattice = das_dennis(2, 4)
print(f"a denser lattice has {len(lattice)} rays:", [tuple(p.tolist()) for p in lattice.points])

print()
print("=== hypervolume contributions ===")
h = default_reference(n)
print("reference point:", h)
for member, value in zip(layer, hv_contributions(layer, h)):
    print(f"  {member.fitness}: {value:.0f}")
print("the extremes dominate the scores; an ejection would remove an interior point")
