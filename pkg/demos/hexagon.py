#!/usr/bin/env python
# The smallest interesting case: two points on a line, d = 2.
# The symmetric product of the complete building set on {1,2} gives a hexagon,
# and so does the Losev-Manin fan for n = 5.

from nestofan import complete_building_set, sym_building_set, sym_fan
from nestofan import blowup_fan, lm_weights, f_vector, fan_equal
from nestofan.render import render_svg

b = complete_building_set([1, 2])
s = sym_building_set(b, 2)
print("members:", sorted(sorted(m) for m in s.members))

hexagon = sym_fan(b, 2)
print("f-vector:", f_vector(hexagon))   # (1, 6, 6)
for ray, label in zip(hexagon.rays, hexagon.labels):
    print("  ray", ray, label or "(new)")

lm = blowup_fan(lm_weights(2, 5))
print("same as the LM(2,5) blow-up:", fan_equal(hexagon, lm))

with open("hexagon.svg", "w") as fh:
    fh.write(render_svg(hexagon, "sym^2 of K_2"))
print("wrote hexagon.svg")
