#!/usr/bin/env python
# Every pair of cones either has no common supercone or a smallest one.
# Two independent routes: the literal pair loop, and a reduction to rays.
import time

from nestofan import lm_fan, check_lemma_join, product_fan_symmetries

for d, n in [(1, 6), (2, 6), (2, 7)]:
    f = lm_fan(d, n)
    syms = product_fan_symmetries(f, n - d - 1, d)
    for method in ("pairs", "rays"):
        t = time.perf_counter()
        res = check_lemma_join(f, syms, method=method)
        print(f"LM({d},{n}) {method:5}: ok={res.ok} cones={res.cones} "
              f"reps={res.representatives} {time.perf_counter() - t:.2f}s")
