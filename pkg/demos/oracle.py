#!/usr/bin/env python
# Nested fans built by star subdivision against normal fans of Minkowski sums
# of simplices. Two unrelated constructions of the same object.
import random

from nestofan import connected_building_sets, minkowski_nestohedron_oracle, nested_fan
from nestofan import random_connected_building_set, fan_equal, f_vector

for m in (2, 3, 4):
    sets = list(connected_building_sets(list(range(1, m + 1))))
    ok = sum(fan_equal(minkowski_nestohedron_oracle(b), nested_fan(b)) for b in sets)
    print(f"{m} elements: {ok}/{len(sets)} agree")

rng = random.Random(3)
b = random_connected_building_set(range(1, 6), rng)
print("a random set on 5 elements:", sorted(sorted(x) for x in b.members if len(x) > 1))
print("f-vector:", f_vector(nested_fan(b)), "oracle agrees:",
      fan_equal(minkowski_nestohedron_oracle(b), nested_fan(b)))
