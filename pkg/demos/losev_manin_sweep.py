#!/usr/bin/env python
# Blow-up of the Losev-Manin weights against sym^d of the complete building set,
# over the whole desk-scale grid.
import time

from nestofan import lm_fan, verify_thm1, f_vector

for d in (1, 2, 3):
    for n in range(d + 3, 9):
        t = time.perf_counter()
        ok = verify_thm1(d, n)
        ms = (time.perf_counter() - t) * 1000
        print(f"d={d} n={n}  equal={ok}  f={f_vector(lm_fan(d, n))}  {ms:.0f} ms")
