"""Building sets, nested fans, symmetric products and a Minkowski-sum oracle."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .geometry import (
    Fan,
    FanError,
    Label,
    _rank,
    cone_lookup,
    fan_equal,
    fan_power,
    primitive,
    simplex_fan,
    star_subdivision,
)

PLAIN = "plain"
OVER_POLYTOPE = "over_polytope"


def label_key(label: Label) -> tuple[int, ...]:
    return (label,) if isinstance(label, int) else tuple(label)


def members_key(member: Iterable[Label]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(label_key(x) for x in member))


@dataclass(frozen=True)
class BuildingSet:
    """A family of subsets of a labelled ground set.

    In ``plain`` mode the reference fan is the simplex fan of ``ground``. In
    ``over_polytope`` mode ``base`` is the normal fan of the ambient polytope
    and its ray labels are the elements of ``ground``.
    """

    ground: tuple[Label, ...]
    members: frozenset[frozenset[Label]]
    mode: str = PLAIN
    base: Fan | None = None

    def __post_init__(self):
        ground = tuple(self.ground)
        members = frozenset(frozenset(m) for m in self.members)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", members)
        if len(set(ground)) != len(ground):
            raise ValueError("ground labels must be distinct")
        if self.mode not in (PLAIN, OVER_POLYTOPE):
            raise ValueError(f"unknown building set mode {self.mode!r}")
        if self.mode == OVER_POLYTOPE and self.base is None:
            raise ValueError("an over_polytope building set needs a base fan")
        gset = set(ground)
        for m in members:
            if not m:
                raise ValueError("members must be nonempty")
            if not m <= gset:
                raise ValueError(f"member {sorted(m, key=label_key)} is not a subset of the ground set")

    def sorted_members(self) -> list[frozenset[Label]]:
        return sorted(self.members, key=lambda m: (len(m), members_key(m)))


def reference_fan(b: BuildingSet) -> Fan:
    return b.base if b.mode == OVER_POLYTOPE else simplex_fan(b.ground)


def face_nonempty(fan: Fan, member: Iterable[Label]) -> bool:
    """Whether the facets labelled by ``member`` meet, i.e. their rays span a cone."""
    return cone_lookup(fan, fan.indices_of(member)) is not None


def validate_building_set(b: BuildingSet, base: Fan | None = None) -> list[str]:
    """Violations of the building-set axioms.

    Plain sets must be closed under unions of overlapping members. When a
    ``base`` fan is passed for a plain set, or the set is over a polytope,
    a missing union is only a violation if its face is nonempty.
    """
    report = []
    for g in b.ground:
        if frozenset({g}) not in b.members:
            report.append(f"singleton {{{g}}} missing")
    ref = base
    if b.mode == OVER_POLYTOPE:
        ref = b.base
        for m in b.sorted_members():
            if not face_nonempty(ref, m):
                report.append(f"member {sorted(m, key=label_key)} indexes an empty face")
    for i, j in itertools.combinations(b.sorted_members(), 2):
        if not i & j:
            continue
        u = i | j
        if u in b.members:
            continue
        if ref is not None and not face_nonempty(ref, u):
            continue
        report.append(
            f"union of {sorted(i, key=label_key)} and {sorted(j, key=label_key)} is missing"
        )
    return report


def complete_building_set(ground: Sequence[Label]) -> BuildingSet:
    """All nonempty subsets of ``ground``."""
    ground = tuple(ground)
    if not ground:
        raise ValueError("ground set must be nonempty")
    members = [
        frozenset(c) for k in range(1, len(ground) + 1) for c in itertools.combinations(ground, k)
    ]
    return BuildingSet(ground, frozenset(members))


def connected_components(b: BuildingSet) -> set[frozenset[Label]]:
    return {m for m in b.members if not any(m < other for other in b.members)}


def is_connected(b: BuildingSet) -> bool:
    return connected_components(b) == {frozenset(b.ground)}


def subdivision_schedule(b: BuildingSet, base: Fan | None = None) -> list[frozenset[Label]]:
    """Non-singleton members whose cone exists in the base fan, largest first.

    Ties are broken lexicographically on the sorted label lists.
    """
    ref = base if base is not None else reference_fan(b)
    sched = [m for m in b.members if len(m) > 1 and face_nonempty(ref, m)]
    return sorted(sched, key=lambda m: (-len(m), members_key(m)))


def subdivide_along(base: Fan, schedule: Iterable[Iterable[Label]]) -> Fan:
    fan = base
    for member in schedule:
        idx = base.indices_of(member)
        try:
            fan = star_subdivision(fan, idx)
        except FanError:
            raise AssertionError(
                f"cone of {sorted(member, key=label_key)} vanished during subdivision"
            ) from None
    return fan


def nested_fan(b: BuildingSet, base: Fan | None = None) -> Fan:
    """Iterated stellar subdivision of the reference fan along the members of ``b``."""
    ref = base if base is not None else reference_fan(b)
    return subdivide_along(ref, subdivision_schedule(b, ref))


def _size_classes(schedule: list[frozenset[Label]]) -> list[list[frozenset[Label]]]:
    return [list(g) for _, g in itertools.groupby(schedule, key=len)]


def schedule_count(b: BuildingSet, base: Fan | None = None) -> int:
    """Number of total orders with non-increasing member size."""
    return math.prod(math.factorial(len(g)) for g in _size_classes(subdivision_schedule(b, base)))


def valid_schedules(
    b: BuildingSet, base: Fan | None = None, *, trials: int = 100, limit: int = 5000, seed: int = 0
) -> Iterator[list[frozenset[Label]]]:
    """Every admissible schedule when there are at most ``limit``, otherwise ``trials`` random ones."""
    classes = _size_classes(subdivision_schedule(b, base))
    total = math.prod(math.factorial(len(g)) for g in classes)
    if total <= limit:
        for combo in itertools.product(*(itertools.permutations(g) for g in classes)):
            yield [m for part in combo for m in part]
        return
    rng = random.Random(seed)
    for _ in range(trials):
        out = []
        for g in classes:
            g = list(g)
            rng.shuffle(g)
            out.extend(g)
        yield out


def order_independence_check(
    b: BuildingSet, base: Fan | None = None, trials: int = 100, *, limit: int = 5000, seed: int = 0
) -> bool:
    """Nested fans agree across admissible schedules (all of them when feasible)."""
    ref = base if base is not None else reference_fan(b)
    expected = nested_fan(b, ref)
    for sched in valid_schedules(b, ref, trials=trials, limit=limit, seed=seed):
        if not fan_equal(subdivide_along(ref, sched), expected):
            return False
    return True


# ---------------------------------------------------------------------------
# symmetric products


def _check_sym_input(b: BuildingSet, d: int) -> None:
    if b.mode != PLAIN:
        raise ValueError("symmetric products take a plain building set")
    if not is_connected(b):
        raise ValueError("symmetric products take a connected building set")
    if d < 1:
        raise ValueError("d must be a positive integer")


def sym_building_set(b: BuildingSet, d: int) -> BuildingSet:
    """d-th symmetric product: a building set over the d-fold power of the simplex.

    Members are all singletons ``(i, k)`` together with ``I x [d]`` for every
    member ``I`` whose face in the product of simplices is nonempty.
    """
    _check_sym_input(b, d)
    base = fan_power(simplex_fan(b.ground), d)
    ground = tuple((i, k) for k in range(1, d + 1) for i in b.ground)
    members = {frozenset({g}) for g in ground}
    for m in b.members:
        dup = frozenset((i, k) for i in m for k in range(1, d + 1))
        if face_nonempty(base, dup):
            members.add(dup)
    return BuildingSet(ground, frozenset(members), OVER_POLYTOPE, base)


def sym_fan(b: BuildingSet, d: int) -> Fan:
    return nested_fan(sym_building_set(b, d))


def diagonal_compatibility_check(b: BuildingSet, d: int) -> bool:
    """The diagonal map v -> (v, ..., v) carries each new ray of the nested fan of ``b``
    to the matching new ray of its d-th symmetric product."""
    _check_sym_input(b, d)
    simplex = simplex_fan(b.ground)
    nested = nested_fan(b)
    sym = sym_building_set(b, d)
    symf = nested_fan(sym)
    for m in b.sorted_members():
        if not face_nonempty(simplex, m):
            continue
        v = primitive(
            [sum(simplex.rays[i][k] for i in simplex.indices_of(m)) for k in range(simplex.rank)]
        )
        if v not in nested.ray_index:
            return False
        diag = v * d
        dup = [(i, k) for i in m for k in range(1, d + 1)]
        bary = primitive(
            [sum(sym.base.rays[i][k] for i in sym.base.indices_of(dup)) for k in range(sym.base.rank)]
        )
        if bary != diag or diag not in symf.ray_index:
            return False
    return True


# ---------------------------------------------------------------------------
# Minkowski-sum oracle

ORACLE_MAX_GROUND = 6


def minkowski_nestohedron_oracle(b: BuildingSet, seed: int = 0, random_trials: int = 64) -> Fan:
    """Normal fan of the Minkowski sum of the simplices spanned by the members of ``b``.

    Independent of :func:`nested_fan`: vertices come from summing per-summand
    minimizers of generic functionals (random ones first, then one per
    ordering of the ground set, which reaches every vertex), rays from the
    0/1 directions whose minimal face is a facet, and maximal cones from
    vertex-facet incidences. Coordinates use the same elimination of the
    last ground element as :func:`simplex_fan`.
    """
    if b.mode != PLAIN or not is_connected(b):
        raise ValueError("the oracle takes a connected plain building set")
    m = len(b.ground)
    if m > ORACLE_MAX_GROUND:
        raise FanError("oracle is desk-scale only")
    if m < 2:
        raise FanError("the oracle needs at least two ground elements")
    pos = {g: k for k, g in enumerate(b.ground)}
    summands = [sorted(pos[g] for g in member) for member in b.sorted_members()]

    def vertex(c: Sequence[int]) -> tuple[int, ...]:
        v = [0] * m
        for s in summands:
            v[min(s, key=lambda i: c[i])] += 1
        return tuple(v)

    rng = random.Random(seed)
    verts = set()
    for _ in range(random_trials):
        c = [rng.randint(-10**6, 10**6) for _ in range(m)]
        if len(set(c)) == m:
            verts.add(vertex(c))
    for perm in itertools.permutations(range(m)):
        verts.add(vertex(perm))
    verts = sorted(verts)

    v0 = verts[0]
    if _rank([[a - b0 for a, b0 in zip(w, v0)] for w in verts]) != m - 1:
        raise AssertionError("Minkowski sum is not full-dimensional")

    rays = []
    incident: list[set[int]] = []
    for k in range(1, m):
        for subset in itertools.combinations(range(m), k):
            vals = [sum(w[i] for i in subset) for w in verts]
            low = min(vals)
            face = [j for j, x in enumerate(vals) if x == low]
            w0 = verts[face[0]]
            dim = _rank([[a - b0 for a, b0 in zip(verts[j], w0)] for j in face[1:]]) if len(face) > 1 else 0
            if dim != m - 2:
                continue
            direction = [int(i in subset) for i in range(m)]
            rays.append(primitive([direction[i] - direction[m - 1] for i in range(m - 1)]))
            incident.append(set(face))
    cones = set()
    for j in range(len(verts)):
        cones.add(tuple(sorted(r for r in range(len(rays)) if j in incident[r])))
    return Fan(m - 1, tuple(rays), frozenset(cones))


# ---------------------------------------------------------------------------
# generators of building sets for tests and sweeps


def _closure(members: set[frozenset], ground: frozenset) -> set[frozenset]:
    members = set(members)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(list(members), 2):
            if a & b and (a | b) not in members:
                members.add(a | b)
                changed = True
    return members


def connected_building_sets(ground: Sequence[Label]) -> Iterator[BuildingSet]:
    """Every connected plain building set on ``ground`` (exponential; keep ground small)."""
    ground = tuple(ground)
    full = frozenset(ground)
    base = {frozenset({g}) for g in ground} | {full}
    middle = [
        frozenset(c) for k in range(2, len(ground)) for c in itertools.combinations(ground, k)
    ]
    for bits in range(1 << len(middle)):
        chosen = {middle[i] for i in range(len(middle)) if bits >> i & 1}
        fam = base | chosen
        if all(not (a & b) or (a | b) in fam for a, b in itertools.combinations(chosen, 2)):
            yield BuildingSet(ground, frozenset(fam))


def random_connected_building_set(ground: Sequence[Label], rng: random.Random, density: float = 0.3) -> BuildingSet:
    """Closure of a random family of subsets, plus singletons and the ground set."""
    ground = tuple(ground)
    full = frozenset(ground)
    picks = set()
    for k in range(2, len(ground)):
        for c in itertools.combinations(ground, k):
            if rng.random() < density:
                picks.add(frozenset(c))
    fam = _closure(picks, full) | {frozenset({g}) for g in ground} | {full}
    return BuildingSet(ground, frozenset(fam))
