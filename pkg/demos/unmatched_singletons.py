#!/usr/bin/env python
# Where the heavy/light comparison breaks for d >= 2.
# sym^d always subdivides the cone {i}x[d] of each light point i, but the
# weighted blow-up only does so when a_(d+1) + a_i > 1.
import random
from fractions import Fraction as Q

from nestofan import WeightVector, verify_thm2, unmatched_singletons, b_A, g_A
from nestofan import random_toric_weight

a = WeightVector(2, 5, (Q(1), Q(1), Q(5, 9), Q(1, 3), Q(1, 3)))
print("weights:", [str(x) for x in a.a])
print("g_A:", sorted(sorted(m) for m in g_A(a)))
print("b_A:", sorted(sorted(m) for m in b_A(a).members))
print("unmatched light points:", unmatched_singletons(a))
print("fans equal:", verify_thm2(a))

# The same pattern on random chambers: equality holds exactly when nothing is unmatched
rng = random.Random(0)
agree = 0
for _ in range(30):
    w = random_toric_weight(2, 6, rng)
    agree += verify_thm2(w) == (not unmatched_singletons(w))
print(f"prediction matched {agree}/30 random (2,6) chambers")
