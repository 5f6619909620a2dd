"""Exact lattice, cone and fan kernel.

Fans are simplicial. A cone is a sorted tuple of indices into the owning
fan's ray table, and rays are primitive integer vectors. Nothing here uses
floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

LatticeVector = tuple[int, ...]
Cone = tuple[int, ...]
Label = int | tuple[int, int]


class FanError(ValueError):
    """Raised for malformed fans or cones that do not belong to a fan."""


# ---------------------------------------------------------------------------
# small exact linear algebra helpers


def _det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            a = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - a * row_k[j]) // prev
        prev = pivot
    return sign * m[-1][-1]


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][col] / m[rank][col]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _adjugate(cols: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Return ``(adj, det)`` of the square matrix with the given columns.

    ``adj`` is an integer matrix with ``adj @ B == det * I``; the rows of
    ``adj`` are therefore (scaled) dual coordinates for the cone generators.
    Fraction-free Gauss-Jordan on ``[B | I]``.
    """
    n = len(cols)
    a = [[cols[j][i] for j in range(n)] + [int(i == k) for k in range(n)] for i in range(n)]
    prev, sign = 1, 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return [[0] * n for _ in range(n)], 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            f = row_i[k]
            a[i] = [(x * pivot - f * y) // prev for x, y in zip(row_i, row_k)]
        prev = pivot
    det = sign * prev
    # after elimination the left block is prev * I and the right block is
    # prev * B^{-1}, up to the row-swap sign carried by prev
    adj = [[sign * x for x in row[n:]] for row in a]
    return adj, det


def _solve_in_span(gens: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with sum c_k gens[k] == v, or None. gens independent."""
    k = len(gens)
    n = len(v)
    m = [[Fraction(gens[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((i for i in range(row, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(n):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    if any(m[i][k] != 0 for i in range(row, n)):
        return None
    return [m[i][k] for i in range(k)]


def _lp_feasible(a: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
    """Is ``{x >= 0 : a x = b}`` nonempty? Exact phase-one simplex, Bland's rule."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for i in range(m):
        r = [Fraction(x) for x in a[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r, bi = [-x for x in r], -bi
        rows.append(r + [Fraction(int(k == i)) for k in range(m)] + [bi])
    basis = [n + i for i in range(m)]
    total = n + m
    while True:
        cost = [Fraction(int(j >= n)) for j in range(total)]
        for i in range(m):
            if basis[i] >= n:
                cost = [c - x for c, x in zip(cost, rows[i][:total])]
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen in phase one
            break
        p = best[1]
        piv = rows[p][enter]
        rows[p] = [x / piv for x in rows[p]]
        for i in range(m):
            if i != p and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[p])]
        basis[p] = enter
    return all(rows[i][-1] == 0 for i in range(m) if basis[i] >= n)


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _bits(mask: int) -> Cone:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# vectors


def primitive(v: Sequence[int]) -> LatticeVector:
    """Divide an integer vector by the gcd of its entries.

    >>> primitive((2, 4, -6))
    (1, 2, -3)
    """
    v = tuple(int(x) for x in v)
    g = reduce(math.gcd, (abs(x) for x in v), 0)
    if g == 0:
        raise FanError("not a ray direction")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(math.gcd, (abs(x) for x in v), 0) == 1


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    """A simplicial rational fan: a ray table plus a set of maximal cones.

    ``labels``, when present, has one entry per ray; rays created by
    subdivision carry ``None``.
    """

    rank: int
    rays: tuple[LatticeVector, ...]
    max_cones: frozenset[Cone]
    labels: tuple[Label | None, ...] | None = None

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = frozenset(tuple(sorted(c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(rays):
                raise FanError("labels must have one entry per ray")
            object.__setattr__(self, "labels", labels)
        if self.rank < 0:
            raise FanError("rank must be nonnegative")
        for r in rays:
            if len(r) != self.rank:
                raise FanError(f"ray {r} does not have length {self.rank}")
        for c in cones:
            if len(set(c)) != len(c):
                raise FanError(f"cone {c} repeats a ray")
            if c and (c[0] < 0 or c[-1] >= len(rays)):
                raise FanError(f"cone {c} has an out-of-range ray index")

    # cached derived data; never part of equality

    @cached_property
    def cones_sorted(self) -> tuple[Cone, ...]:
        return tuple(sorted(self.max_cones))

    @cached_property
    def ray_index(self) -> dict[LatticeVector, int]:
        return {r: i for i, r in enumerate(self.rays)}

    @cached_property
    def label_index(self) -> dict[Label, int]:
        if self.labels is None:
            return {}
        return {lab: i for i, lab in enumerate(self.labels) if lab is not None}

    @cached_property
    def _ray_to_max(self) -> list[int]:
        out = [0] * len(self.rays)
        for k, c in enumerate(self.cones_sorted):
            for i in c:
                out[i] |= 1 << k
        return out

    @cached_property
    def _all_max(self) -> int:
        return (1 << len(self.cones_sorted)) - 1

    @cached_property
    def face_masks(self) -> dict[int, int]:
        """Every cone (as a ray bitmask) mapped to the bitmask of maximal cones containing it."""
        out: dict[int, int] = {}
        for k, c in enumerate(self.cones_sorted):
            bit = 1 << k
            full = _mask(c)
            sub = full
            while True:
                out[sub] = out.get(sub, 0) | bit
                if sub == 0:
                    break
                sub = (sub - 1) & full
        return out

    def labels_of(self, cone: Cone) -> list[Label | None]:
        if self.labels is None:
            return [None] * len(cone)
        return [self.labels[i] for i in cone]

    def indices_of(self, labels: Iterable[Label]) -> Cone:
        """Ray indices for a collection of labels."""
        idx = self.label_index
        try:
            return tuple(sorted(idx[lab] for lab in labels))
        except KeyError as exc:
            raise FanError(f"label {exc.args[0]!r} is not a ray label of this fan") from None


def point_fan() -> Fan:
    """The rank-0 fan consisting of the zero cone alone."""
    return Fan(0, (), frozenset({()}), ())


def simplex_fan(labels: Sequence[Label]) -> Fan:
    """Normal fan of the simplex on ``len(labels)`` facets.

    Works in Z^{m-1}: the first m-1 rays are the standard basis and the last
    is minus their sum.
    """
    labels = tuple(labels)
    m = len(labels)
    if m < 2:
        raise FanError("a simplex fan needs at least two labels")
    if len(set(labels)) != m:
        raise FanError("simplex labels must be distinct")
    r = m - 1
    rays = [tuple(int(i == k) for i in range(r)) for k in range(r)]
    rays.append(tuple([-1] * r))
    cones = frozenset(itertools.combinations(range(m), r))
    return Fan(r, tuple(rays), cones, labels)


def product(f: Fan, g: Fan) -> Fan:
    """Product fan: rays padded by zeros, cones are unions of one cone from each."""
    shift = len(f.rays)
    rays = [r + (0,) * g.rank for r in f.rays] + [(0,) * f.rank + r for r in g.rays]
    cones = frozenset(
        a + tuple(i + shift for i in b) for a in f.max_cones for b in g.max_cones
    )
    labels = None
    if f.labels is not None and g.labels is not None:
        labels = f.labels + g.labels
    return Fan(f.rank + g.rank, tuple(rays), cones, labels)


def fan_power(f: Fan, d: int) -> Fan:
    """d-fold product of ``f`` with factor k's copy of label i relabelled ``(i, k)``, k = 1..d."""
    if d < 1:
        raise FanError("power must be positive")
    out = point_fan()
    for k in range(1, d + 1):
        labels = None if f.labels is None else tuple((lab, k) for lab in f.labels)
        out = product(out, Fan(f.rank, f.rays, f.max_cones, labels))
    return out


def cone_lookup(fan: Fan, ray_indices: Iterable[int]) -> Cone | None:
    """The cone spanned by the given rays if it is a face of a maximal cone."""
    idx = sorted(set(ray_indices))
    for i in idx:
        if not 0 <= i < len(fan.rays):
            raise FanError(f"ray index {i} out of range")
    acc = fan._all_max
    for i in idx:
        acc &= fan._ray_to_max[i]
        if not acc:
            return None
    return tuple(idx) if acc else None


def _require(fan: Fan, cone: Iterable[int]) -> Cone:
    c = cone_lookup(fan, cone)
    if c is None:
        raise FanError("cone not in fan")
    return c


def _trusted(rank: int, rays: tuple, cones: frozenset, labels: tuple | None) -> Fan:
    """Build a Fan from already-normalized parts, skipping the input checks."""
    fan = object.__new__(Fan)
    object.__setattr__(fan, "rank", rank)
    object.__setattr__(fan, "rays", rays)
    object.__setattr__(fan, "max_cones", cones)
    object.__setattr__(fan, "labels", labels)
    return fan


def star_subdivision(fan: Fan, cone: Iterable[int]) -> Fan:
    """Stellar subdivision at ``cone``: insert the primitive sum of its generators.

    Every maximal cone containing ``cone`` is replaced by the cones obtained by
    swapping one generator of ``cone`` for the new ray. A 1-dimensional cone
    gives the fan back unchanged.
    """
    sigma = tuple(sorted(set(cone)))
    if len(sigma) <= 1:
        _require(fan, sigma)
        return fan
    for i in sigma:
        if not 0 <= i < len(fan.rays):
            raise FanError(f"ray index {i} out of range")
    u = primitive([sum(fan.rays[i][k] for i in sigma) for k in range(fan.rank)])
    new = len(fan.rays)
    s = set(sigma)
    cones = set()
    hit = False
    for tau in fan.max_cones:
        if s.issubset(tau):
            hit = True
            rest = [i for i in tau if i not in s]
            for x in sigma:
                cones.add(tuple(sorted(rest + [i for i in sigma if i != x])) + (new,))
        else:
            cones.add(tau)
    if not hit:
        raise FanError("cone not in fan")
    if u in fan.ray_index:
        raise FanError(f"barycenter {u} of {sigma} is already a ray")
    labels = None if fan.labels is None else fan.labels + (None,)
    return _trusted(fan.rank, fan.rays + (u,), frozenset(cones), labels)


def join(fan: Fan, sigma: Iterable[int], tau: Iterable[int]) -> Cone | None:
    """Smallest cone of the fan containing both cones, or None if there is none."""
    a = _require(fan, sigma)
    b = _require(fan, tau)
    return cone_lookup(fan, set(a) | set(b))


def star(fan: Fan, sigma: Iterable[int]) -> set[Cone]:
    """All cones of the fan having ``sigma`` as a face."""
    s = _require(fan, sigma)
    out = set()
    sset = set(s)
    for tau in fan.max_cones:
        if sset.issubset(tau):
            rest = [i for i in tau if i not in sset]
            for k in range(len(rest) + 1):
                for extra in itertools.combinations(rest, k):
                    out.add(tuple(sorted(s + extra)))
    return out


def all_cones(fan: Fan) -> list[Cone]:
    """Every cone of the fan, ordered by dimension and then lexicographically."""
    return sorted((_bits(m) for m in fan.face_masks), key=lambda c: (len(c), c))


def f_vector(fan: Fan) -> tuple[int, ...]:
    counts = [0] * (fan.rank + 1)
    for m in fan.face_masks:
        counts[m.bit_count()] += 1
    return tuple(counts)


def _gcd_of_maximal_minors(vectors: Sequence[Sequence[int]]) -> int:
    k = len(vectors)
    if k == 0:
        return 1
    n = len(vectors[0])
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = math.gcd(g, _det([[v[c] for c in cols] for v in vectors]))
        if g == 1:
            return 1
    return g


def is_unimodular(fan: Fan) -> bool:
    """True iff every maximal cone's generators extend to a lattice basis."""
    for c in fan.max_cones:
        vecs = [fan.rays[i] for i in c]
        if len(vecs) == fan.rank:
            if abs(_det(vecs)) != 1:
                return False
        elif _gcd_of_maximal_minors(vecs) != 1:
            return False
    return True


def _walls(fan: Fan) -> dict[Cone, list[Cone]]:
    walls: dict[Cone, list[Cone]] = {}
    for c in fan.cones_sorted:
        for k in range(len(c)):
            walls.setdefault(c[:k] + c[k + 1:], []).append(c)
    return walls


def _is_pure_full(fan: Fan) -> bool:
    return fan.rank > 0 and all(len(c) == fan.rank for c in fan.max_cones)


def is_complete(fan: Fan) -> bool:
    """Pure full-dimensional with every wall shared by exactly two maximal cones.

    Together with a clean :func:`validate_fan` report this means the support
    is the whole space.
    """
    if fan.rank == 0:
        return True
    return _is_pure_full(fan) and all(len(v) == 2 for v in _walls(fan).values())


class _ConeFrames:
    """Per-cone adjugates, so membership tests are integer dot products."""

    def __init__(self, fan: Fan):
        self.fan = fan
        self.adj: dict[Cone, tuple[list[list[int]], int]] = {}

    def get(self, cone: Cone) -> tuple[list[list[int]], int]:
        got = self.adj.get(cone)
        if got is None:
            got = self.adj[cone] = _adjugate([self.fan.rays[i] for i in cone])
        return got

    def coords(self, cone: Cone, v: Sequence[int]) -> list[int]:
        """det * (coordinates of v in the cone's generator basis), sign-normalized."""
        adj, det = self.get(cone)
        s = 1 if det > 0 else -1
        return [s * sum(a * x for a, x in zip(row, v)) for row in adj]


def _generic_point(fan: Fan, frames: _ConeFrames) -> LatticeVector:
    """A lattice point off every wall hyperplane of every maximal cone."""
    for t in range(2, 200):
        p = tuple(t ** (k + 1) + k * 7 + 1 for k in range(fan.rank))
        p = tuple(x if k % 2 == 0 else -x for k, x in enumerate(p))
        if all(all(x != 0 for x in frames.coords(c, p)) for c in fan.cones_sorted):
            return p
    raise FanError("could not find a generic point")  # pragma: no cover


def _pair_overlaps(fan: Fan, a: Cone, b: Cone) -> bool:
    """Exact test that the two cones meet in more than their common face."""
    common = set(a) & set(b)
    cols = [fan.rays[i] for i in a] + [tuple(-x for x in fan.rays[i]) for i in b]
    rows = [[v[k] for v in cols] for k in range(fan.rank)]
    norm = [0 if i in common else 1 for i in a] + [0 if i in common else 1 for i in b]
    if not any(norm):
        return False
    return _lp_feasible(rows + [norm], [0] * fan.rank + [1])


def validate_fan(fan: Fan) -> list[str]:
    """List every violation of the fan axioms; an empty list means valid."""
    report = []
    seen: dict[LatticeVector, int] = {}
    for i, r in enumerate(fan.rays):
        if not any(r):
            report.append(f"ray {i} is the zero vector")
        elif not is_primitive(r):
            report.append(f"ray {i} {r} is not primitive")
        if r in seen:
            report.append(f"ray {i} duplicates ray {seen[r]}")
        seen.setdefault(r, i)
    used = set()
    for c in fan.cones_sorted:
        used.update(c)
    for i in range(len(fan.rays)):
        if i not in used:
            report.append(f"ray {i} lies in no maximal cone")
    simplicial = True
    for c in fan.cones_sorted:
        if _rank([fan.rays[i] for i in c]) < len(c):
            report.append(f"cone {c} is not simplicial")
            simplicial = False
    maximal = fan.cones_sorted
    for a, b in itertools.combinations(maximal, 2):
        if set(a) <= set(b) or set(b) <= set(a):
            report.append(f"cone {a} and cone {b} are nested")
    if report or not simplicial:
        return report

    if is_complete(fan):
        # pseudomanifold with walls separating their two cones, and one generic
        # point covered exactly once, is a complete fan
        frames = _ConeFrames(fan)
        for wall, (c1, c2) in _walls(fan).items():
            (x,) = set(c1) - set(wall)
            (y,) = set(c2) - set(wall)
            k = c1.index(x)
            if frames.coords(c1, fan.rays[y])[k] >= 0:
                report.append(f"cones {c1} and {c2} lie on the same side of wall {wall}")
        if not report:
            p = _generic_point(fan, frames)
            hits = sum(all(x > 0 for x in frames.coords(c, p)) for c in maximal)
            if hits != 1:
                report.append(f"generic point {p} lies in {hits} maximal cones")
        return report

    for a, b in itertools.combinations(maximal, 2):
        if _pair_overlaps(fan, a, b):
            report.append(f"cones {a} and {b} intersect outside a common face")
    return report


def _contained_cones(inner: Fan, outer: Fan) -> dict[Cone, Cone] | None:
    """Map each maximal cone of ``inner`` to a maximal cone of ``outer`` containing it."""
    frames = _ConeFrames(outer) if _is_pure_full(outer) else None
    ray_homes: list[set[Cone]] = []
    for v in inner.rays:
        homes = set()
        for c in outer.cones_sorted:
            if frames is not None:
                if all(x >= 0 for x in frames.coords(c, v)):
                    homes.add(c)
            else:
                coeffs = _solve_in_span([outer.rays[i] for i in c], v)
                if coeffs is not None and all(x >= 0 for x in coeffs):
                    homes.add(c)
        ray_homes.append(homes)
    out = {}
    for c in inner.cones_sorted:
        homes = set(outer.cones_sorted) if not c else set.intersection(*(ray_homes[i] for i in c))
        if not homes:
            return None
        out[c] = min(homes)
    return out


def refines(f: Fan, g: Fan) -> bool:
    """True iff every maximal cone of ``f`` lies in a cone of ``g`` and the supports agree."""
    if f.rank != g.rank:
        raise FanError("rank mismatch")
    homes = _contained_cones(f, g)
    if homes is None:
        return False
    if is_complete(f) and is_complete(g):
        return True
    if not (_is_pure_full(f) and _is_pure_full(g)):
        # lower-dimensional supports: fall back to mutual containment of cones
        return _contained_cones(g, f) is not None and all(
            len(c) == len(homes[c]) for c in homes
        )
    # each cone of g must be covered: the f-cones inside it form a
    # pseudomanifold whose free walls lie on the boundary of the g-cone
    frames = _ConeFrames(g)
    by_home: dict[Cone, list[Cone]] = {}
    for c, h in homes.items():
        by_home.setdefault(h, []).append(c)
    for h in g.cones_sorted:
        inside = by_home.get(h)
        if not inside:
            return False
        count: dict[Cone, int] = {}
        for c in inside:
            for k in range(len(c)):
                w = c[:k] + c[k + 1:]
                count[w] = count.get(w, 0) + 1
        for w, n in count.items():
            if n == 2:
                continue
            if n > 2:
                return False
            coords = [frames.coords(h, f.rays[i]) for i in w]
            on_boundary = any(all(v[j] == 0 for v in coords) for j in range(len(h)))
            if not on_boundary:
                return False
    return True


def canonical(fan: Fan) -> tuple[tuple[LatticeVector, ...], tuple[Cone, ...], tuple]:
    """Rays sorted lexicographically, cones remapped and sorted, labels carried along."""
    order = sorted(range(len(fan.rays)), key=lambda i: fan.rays[i])
    new = {old: k for k, old in enumerate(order)}
    rays = tuple(fan.rays[i] for i in order)
    cones = tuple(sorted(tuple(sorted(new[i] for i in c)) for c in fan.max_cones))
    labels = () if fan.labels is None else tuple(fan.labels[i] for i in order)
    return rays, cones, labels


def fan_equal(f: Fan, g: Fan) -> bool:
    """Same rays and same maximal cones after canonical normalization (labels ignored)."""
    if f.rank != g.rank:
        raise FanError("rank mismatch")
    if len(f.rays) != len(g.rays) or len(f.max_cones) != len(g.max_cones):
        return False
    return canonical(f)[:2] == canonical(g)[:2]


def relabel(fan: Fan, labels: Sequence[Label | None] | None) -> Fan:
    return Fan(fan.rank, fan.rays, fan.max_cones, None if labels is None else tuple(labels))


# ---------------------------------------------------------------------------
# symmetries


def apply_matrix(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> LatticeVector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in matrix)


def ray_permutation(fan: Fan, matrix: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """The ray permutation induced by a linear map, if the map is a fan automorphism."""
    perm = []
    for r in fan.rays:
        j = fan.ray_index.get(apply_matrix(matrix, r))
        if j is None:
            return None
        perm.append(j)
    if len(set(perm)) != len(perm):
        return None
    for c in fan.max_cones:
        if tuple(sorted(perm[i] for i in c)) not in fan.max_cones:
            return None
    return tuple(perm)


def simplex_power_symmetries(m: int, d: int) -> list[list[list[int]]]:
    """Generators of label and factor permutations of the d-th power of the m-label simplex fan.

    Returned as integer matrices on Z^{d(m-1)}: every transposition of labels
    acting diagonally on all factors, and every transposition of factors.
    """
    r = m - 1

    def label_image(j: int) -> list[int]:
        return [int(i == j) for i in range(r)] if j < r else [-1] * r

    def block(perm: Sequence[int]) -> list[list[int]]:
        cols = [label_image(perm[j]) for j in range(r)]
        return [[cols[j][i] for j in range(r)] for i in range(r)]

    gens = []
    for a, b in itertools.combinations(range(m), 2):
        perm = list(range(m))
        perm[a], perm[b] = b, a
        blk = block(perm)
        mat = [[0] * (r * d) for _ in range(r * d)]
        for k in range(d):
            for i in range(r):
                for j in range(r):
                    mat[k * r + i][k * r + j] = blk[i][j]
        gens.append(mat)
    for a, b in itertools.combinations(range(d), 2):
        perm = list(range(d))
        perm[a], perm[b] = b, a
        mat = [[0] * (r * d) for _ in range(r * d)]
        for k in range(d):
            for i in range(r):
                mat[perm[k] * r + i][k * r + i] = 1
        gens.append(mat)
    return gens
