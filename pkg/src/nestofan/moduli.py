"""Weight vectors, blow-up centers, Losev-Manin fans and theorem checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import (
    Fan,
    _bits,
    cone_lookup,
    fan_equal,
    fan_power,
    is_unimodular,
    ray_permutation,
    refines,
    simplex_fan,
    simplex_power_symmetries,
    star_subdivision,
    validate_fan,
)
from .nesto import (
    OVER_POLYTOPE,
    PLAIN,
    BuildingSet,
    complete_building_set,
    nested_fan,
    sym_fan,
    validate_building_set,
)


@dataclass(frozen=True)
class WeightVector:
    """Exact weights ``a_1..a_n`` on n labelled points in P^d."""

    d: int
    n: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(Fraction(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if self.n < self.d + 2:
            raise ValueError("requires n >= d+2")
        if len(a) != self.n:
            raise ValueError(f"expected {self.n} weights, got {len(a)}")

    def __getitem__(self, i: int) -> Fraction:
        """1-based access, matching point labels."""
        return self.a[i - 1]

    @property
    def light(self) -> tuple[int, ...]:
        """Labels d+2..n of the points that are not fixed to coordinate points."""
        return tuple(range(self.d + 2, self.n + 1))


def _require_range(d: int, n: int) -> None:
    if d < 1:
        raise ValueError("d must be a positive integer")
    if n <= d + 2:
        raise ValueError("requires n > d+2")


def weight_floor(d: int, n: int) -> tuple[Fraction, ...]:
    """Lower bounds w_1..w_n of the weight domain."""
    _require_range(d, n)
    eps = Fraction(1, n - d)
    eps2 = Fraction(1, (d + 1) * (n - d))
    head = [1 - eps2] * d
    mid = [1 - (n - (d + 1)) * eps + d * eps2]
    return tuple(head + mid + [eps] * (n - d - 1))


def validate_weight(a: WeightVector) -> bool:
    if a.n <= a.d + 2:
        return False
    floor = weight_floor(a.d, a.n)
    return all(w <= x <= 1 for w, x in zip(floor, a.a))


def lm_weights(d: int, n: int) -> WeightVector:
    _require_range(d, n)
    light = Fraction(1, n - d - 1)
    return WeightVector(d, n, tuple([Fraction(1)] * (d + 1) + [light] * (n - d - 1)))


def g_A(a: WeightVector) -> set[frozenset[int]]:
    """Index sets I of the blow-up centers: proper subsets of {d+1..n}, |I| >= 2, weight > 1."""
    pool = range(a.d + 1, a.n + 1)
    out = set()
    for k in range(2, len(pool)):
        for subset in itertools.combinations(pool, k):
            if sum(a[i] for i in subset) > 1:
                out.add(frozenset(subset))
    return out


def is_toric_chamber(a: WeightVector) -> bool:
    return sum(a[i] for i in a.light) <= 1


def _require_toric(a: WeightVector) -> None:
    if not is_toric_chamber(a):
        raise ValueError("weight vector is not in the toric chamber (a_{d+2}+...+a_n > 1)")


def b_A(a: WeightVector) -> BuildingSet:
    """Building set on {d+2..n} over the simplex: singletons and the proper subsets
    I with a_{d+1} + sum_I a_i > 1."""
    _require_toric(a)
    ground = a.light
    base = simplex_fan(ground)
    members = {frozenset({i}) for i in ground}
    for k in range(1, len(ground)):
        for subset in itertools.combinations(ground, k):
            if a[a.d + 1] + sum(a[i] for i in subset) > 1:
                members.add(frozenset(subset))
    return BuildingSet(ground, frozenset(members), OVER_POLYTOPE, base)


def as_plain(b: BuildingSet) -> BuildingSet:
    """The same members plus the whole ground set, as a plain (connected) building set."""
    return BuildingSet(b.ground, b.members | {frozenset(b.ground)}, PLAIN)


def blowup_centers(a: WeightVector, rng: random.Random | None = None) -> list[frozenset[int]]:
    """Centers of ``g_A`` in blow-up order: larger index sets (smaller centers) first.

    Ties are lexicographic, or shuffled when ``rng`` is given.
    """
    centers = sorted(g_A(a), key=lambda s: (-len(s), sorted(s)))
    if rng is None:
        return centers
    out = []
    for _, grp in itertools.groupby(centers, key=len):
        grp = list(grp)
        rng.shuffle(grp)
        out.extend(grp)
    return out


def blowup_base(a: WeightVector) -> Fan:
    """Fan of (P^{n-d-2})^d with factor k carrying labels (i, k), i in {d+2..n}."""
    return fan_power(simplex_fan(a.light), a.d)


def blowup_fan(a: WeightVector, rng: random.Random | None = None) -> Fan:
    """Fan of the iterated blow-up of (P^{n-d-2})^d along the torus-invariant centers of ``g_A``."""
    _require_toric(a)
    fan = base = blowup_base(a)
    for center in blowup_centers(a, rng):
        if a.d + 1 not in center:
            raise AssertionError(f"center {sorted(center)} is not torus-invariant")
        rest = sorted(center - {a.d + 1})
        idx = base.indices_of((i, k) for i in rest for k in range(1, a.d + 1))
        if cone_lookup(fan, idx) is None:
            raise AssertionError(f"cone of center {sorted(center)} is missing")
        fan = star_subdivision(fan, idx)
    return fan


def lm_fan(d: int, n: int) -> Fan:
    return blowup_fan(lm_weights(d, n))


def verify_thm1(d: int, n: int) -> bool:
    """The Losev-Manin blow-up fan equals the d-th symmetric product of the complete building set."""
    _require_range(d, n)
    lhs = blowup_fan(lm_weights(d, n))
    rhs = sym_fan(complete_building_set(range(d + 2, n + 1)), d)
    return fan_equal(lhs, rhs)


def verify_thm2(a: WeightVector) -> bool:
    """The blow-up fan of ``a`` equals the d-th symmetric product of ``b_A(a)``."""
    _require_toric(a)
    return fan_equal(blowup_fan(a), sym_fan(as_plain(b_A(a)), a.d))


def unmatched_singletons(a: WeightVector) -> list[int]:
    """Light points i with a_{d+1} + a_i <= 1.

    For d >= 2 the symmetric product still subdivides the cone of {i} x [d]
    (every building set contains {i}) while no blow-up center does, so
    :func:`verify_thm2` is false exactly when this list is nonempty.
    """
    _require_toric(a)
    if a.d == 1:
        return []
    return [i for i in a.light if a[a.d + 1] + a[i] <= 1]


def random_toric_weight(d: int, n: int, rng: random.Random, max_den: int = 24) -> WeightVector:
    """A valid weight vector in the toric chamber with every denominator at most ``max_den``."""
    floor = weight_floor(d, n)

    def pick(lo: Fraction, hi: Fraction) -> Fraction:
        while True:
            q = rng.randint(1, max_den)
            p_lo = -(-lo.numerator * q // lo.denominator)
            p_hi = hi.numerator * q // hi.denominator
            if p_lo <= p_hi:
                return Fraction(rng.randint(p_lo, p_hi), q)

    a = [pick(floor[i], Fraction(1)) for i in range(d + 1)]
    light = list(range(d + 1, n))
    rng.shuffle(light)
    vals = {}
    slack = 1 - sum(floor[i] for i in light)
    for i in light:
        x = pick(floor[i], floor[i] + slack)
        slack -= x - floor[i]
        vals[i] = x
    a += [vals[i] for i in range(d + 1, n)]
    return WeightVector(d, n, tuple(a))


# ---------------------------------------------------------------------------
# orbit-closure intersections


@dataclass
class LemmaCheck:
    """Outcome of checking star(s) & star(t) == star(join(s, t)) over cone pairs."""

    cones: int
    representatives: int
    pairs: int
    method: str = "pairs"
    failures: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def fan_symmetries(fan: Fan, matrices: Iterable[Sequence[Sequence[int]]]) -> list[tuple[int, ...]]:
    """Ray permutations of those matrices that are automorphisms of the fan."""
    out = []
    for mat in matrices:
        perm = ray_permutation(fan, mat)
        if perm is not None:
            out.append(perm)
    return out


def product_fan_symmetries(fan: Fan, m: int, d: int) -> list[tuple[int, ...]]:
    """Verified automorphisms among the label/factor permutations of (m-label simplex)^d."""
    if fan.rank != d * (m - 1):
        return []
    return fan_symmetries(fan, simplex_power_symmetries(m, d))


def _orbit_representatives(masks: list[int], index: dict[int, int], perms: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(len(masks)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in perms:
        for k, m in enumerate(masks):
            img = 0
            for i in _bits(m):
                img |= 1 << perm[i]
            j = index[img]
            a, b = find(k), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return sorted({find(k) for k in range(len(masks))})


PAIR_LOOP_LIMIT = 4_000_000


def _lemma_by_pairs(fan: Fan, masks: list[int], reps) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    ms = fan.face_masks
    failures = []
    for k in reps:
        s = masks[k]
        star_s = ms[s]
        for t in masks:
            both = star_s & ms[t]
            joined = ms.get(s | t)
            ok = both == 0 if joined is None else both == joined
            if not ok:
                failures.append((_bits(s), _bits(t)))
    return failures


def _lemma_by_rays(fan: Fan) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Reduce the pair condition to single rays.

    If star(x) is the intersection of the ray stars of x for every cone x,
    then star(s) & star(t) = star(s | t) whenever s | t is a cone. If the
    ray stars of every minimal non-cone have empty intersection, then so do
    those of any non-cone s | t, which contains one.
    """
    ms = fan.face_masks
    everything = ms.get(0, 0)
    ray_star = [ms.get(1 << i, 0) for i in range(len(fan.rays))]
    failures = []
    for x, star_x in ms.items():
        common = everything
        for i in _bits(x):
            common &= ray_star[i]
        if common != star_x:
            failures.append((_bits(x), ()))
    for f in ms:
        top = f.bit_length()
        for r in range(top, len(fan.rays)):
            x = f | (1 << r)
            if x in ms or any(x & ~(1 << i) not in ms for i in _bits(f)):
                continue
            common = ms[f] & ray_star[r]
            if common:
                failures.append((_bits(f), (r,)))
    return failures


def check_lemma_join(
    fan: Fan, symmetries: Sequence[tuple[int, ...]] = (), method: str = "auto"
) -> LemmaCheck:
    """Check the orbit-closure intersection rule on every pair of cones.

    For cones s, t the maximal cones containing both must be exactly those
    containing their join when the join exists, and there must be none
    otherwise. Stars are compared through the maximal cones they reach,
    which determines them in a simplicial fan.

    ``method="pairs"`` compares every pair directly, one s per symmetry
    orbit (``symmetries`` are ray permutations already verified to be fan
    automorphisms). ``method="rays"`` proves the same statement for all
    pairs from single-ray conditions and scales to fans with tens of
    thousands of cones. ``"auto"`` picks the pair loop when it is small.
    """
    ms = fan.face_masks
    masks = sorted(ms, key=lambda m: (m.bit_count(), m))
    if method == "auto":
        method = "pairs" if len(masks) ** 2 <= PAIR_LOOP_LIMIT * max(1, len(symmetries)) else "rays"
    if method == "pairs":
        index = {m: k for k, m in enumerate(masks)}
        reps = _orbit_representatives(masks, index, list(symmetries)) if symmetries else range(len(masks))
        failures = _lemma_by_pairs(fan, masks, reps)
        return LemmaCheck(len(masks), len(reps), len(reps) * len(masks), method, failures)
    if method == "rays":
        return LemmaCheck(len(masks), len(masks), len(masks) ** 2, method, _lemma_by_rays(fan))
    raise ValueError(f"unknown method {method!r}")


def verify_lemma_join(fan: Fan, symmetries: Sequence[tuple[int, ...]] = ()) -> bool:
    return check_lemma_join(fan, symmetries).ok


# ---------------------------------------------------------------------------
# Hassett comparison


def hassett_weight_A_prime(a: WeightVector) -> tuple[Fraction, ...]:
    """The (n-d+1)-entry vector (1, a_{d+1}, ..., a_n)."""
    _require_toric(a)
    return (Fraction(1),) + a.a[a.d:]


def chamber_signature(weights: Sequence[Fraction]) -> frozenset[frozenset[int]]:
    """Positions of every nonempty subset whose weights sum to at most 1."""
    n = len(weights)
    return frozenset(
        frozenset(s)
        for k in range(1, n + 1)
        for s in itertools.combinations(range(n), k)
        if sum(weights[i] for i in s) <= 1
    )


def _fmt(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _dominates(lo: Sequence[Fraction], hi: Sequence[Fraction]) -> bool:
    return len(lo) == len(hi) and all(x <= y for x, y in zip(lo, hi))


def verify_thm3_part1(a: WeightVector) -> dict:
    """Exact weight checks behind the Hassett reduction maps, reported rather than asserted.

    Two readings are evaluated where the printed vectors are ambiguous: the
    light entries of the projective-space weights are 1/(n-2) as printed or
    1/(n-d-1), and the coarse-chamber vector is (1, 1, a_{d+3}, ..., a_n) as
    printed or (1, 1, a_{d+2}, ..., a_n).
    """
    d, n = a.d, a.n
    report = {"instance": {"d": d, "n": n, "a": [f"{x.numerator}/{x.denominator}" for x in a.a]}, "checks": []}
    checks = report["checks"]
    if d == 1 and n == 3:
        checks.append({"name": "skipped", "pass": True,
                       "detail": "d = 1, n = 3: the space is P^1 for every weight vector"})
        return report
    _require_toric(a)
    floor = weight_floor(d, n)
    total = 1 + sum(a.a[d:])
    checks.append({"name": "sum_exceeds_two", "pass": total > 2,
                   "detail": f"1 + a_{d + 1} + ... + a_n = {total}"})

    a_prime = hassett_weight_A_prime(a)
    mid = (Fraction(1),) + floor[d:]
    length = n - d + 1
    for tag, light in (("printed_1/(n-2)", Fraction(1, n - 2)), ("variant_1/(n-d-1)", Fraction(1, n - d - 1))):
        a_proj = (Fraction(1),) + (light,) * (length - 1)
        low = _dominates(a_proj, mid)
        high = _dominates(mid, a_prime)
        checks.append({
            "name": f"dominance[{tag}]",
            "pass": low and high,
            "detail": f"{_fmt(a_proj)} <= {_fmt(mid)}: {low}; {_fmt(mid)} <= {_fmt(a_prime)}: {high}",
        })

    readings = (
        ("printed_a_{d+3}", (Fraction(1), Fraction(1)) + a.a[d + 2:]),
        ("shifted_a_{d+2}", (Fraction(1), Fraction(1)) + a.a[d + 1:]),
    )
    for tag, vec in readings:
        lm_type = (Fraction(1), Fraction(1)) + (Fraction(1, n - 2),) * (len(vec) - 2)
        same = chamber_signature(vec) == chamber_signature(lm_type)
        dom = _dominates(a_prime, vec)
        detail = (
            f"{_fmt(vec)} vs {_fmt(lm_type)}: same chamber {same}; "
            + (f"dominates A' {dom}" if len(vec) == len(a_prime)
               else f"length {len(vec)} differs from A' length {len(a_prime)}")
        )
        checks.append({"name": f"coarse_chamber[{tag}]", "pass": same and dom, "detail": detail})
    passes = {c["name"]: c["pass"] for c in checks if c["name"].startswith("coarse_chamber")}
    if len(set(passes.values())) > 1:
        checks.append({"name": "readings_disagree", "pass": False,
                       "detail": "; ".join(f"{k}={v}" for k, v in passes.items())})
    return report


def verify_thm3_part2(a: WeightVector) -> bool:
    """The nested fan of ``b_A(a)`` is a smooth fan between the simplex fan and the permutohedral fan."""
    _require_toric(a)
    b = b_A(a)
    if validate_building_set(b):
        return False
    simplex = b.base
    nested = nested_fan(b)
    permutohedral = nested_fan(complete_building_set(b.ground))
    return (
        not validate_fan(nested)
        and is_unimodular(nested)
        and refines(nested, simplex)
        and refines(permutohedral, nested)
    )
