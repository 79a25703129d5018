"""Exact geometric predicates: strict betweenness, the scaled-middle triple
classification, sign-normalization of directions, slope tests, and the
classification of point sets and canonical surfaces as convex / flat /
concave in the scaled-middle sense.

A triple (p, q, r) is classified by the unique scale mu > 0, when one exists,
at which mu*q lies strictly between p and r.  mu > 1 is "Conv", mu = 1 "Flat",
0 < mu < 1 "Conc".  A set is convex (flat, concave) when every witnessed
triple drawn from it classifies that way; sets with no witnessed triple are
trivial, disagreeing triples make it mixed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .efield import (
    ONE,
    ZERO,
    CoordPoint,
    FieldElem,
    as_field,
    field_sqrt,
)
from .errors import (
    DegenerateSegment,
    DimensionMismatch,
    MalformedSurface,
    ZeroDirection,
)


class TripleTag(Enum):
    CONV = "Conv"
    FLAT = "Flat"
    CONC = "Conc"
    NO_WITNESS = "NoWitness"


@dataclass(frozen=True)
class TripleClass:
    tag: TripleTag
    mu: Optional[FieldElem] = None

    def __post_init__(self):
        if self.tag is TripleTag.NO_WITNESS:
            assert self.mu is None
        else:
            assert self.mu is not None


class SetClass(Enum):
    CONVEX = "Convex"
    FLAT = "Flat"
    CONCAVE = "Concave"
    TRIVIAL = "Trivial"
    MIXED = "Mixed"


_TAG_TO_SET = {
    TripleTag.CONV: SetClass.CONVEX,
    TripleTag.FLAT: SetClass.FLAT,
    TripleTag.CONC: SetClass.CONCAVE,
}


def between(p: CoordPoint, q: CoordPoint, r: CoordPoint) -> bool:
    """Strict betweenness: q = lam*p + (1-lam)*r for some 0 < lam < 1."""
    if p.dim != q.dim or q.dim != r.dim:
        raise DimensionMismatch("between() needs three points of equal dimension")
    direction = p - r
    target = q - r
    if direction.is_zero():
        return target.is_zero()
    lam = None
    for d_i, t_i in zip(direction.coords, target.coords):
        if not d_i.is_zero():
            lam = t_i / d_i
            break
    if target != direction.scale(lam):
        return False
    return lam.sign() > 0 and (ONE - lam).sign() > 0


def ddag(p: CoordPoint) -> CoordPoint:
    """Sign-normalize: flip p when its time component is negative."""
    return -p if p.time_part.sign() < 0 else p


def classify_triple(p: CoordPoint, q: CoordPoint, r: CoordPoint) -> TripleClass:
    """Solve for mu > 0 with mu*q strictly between p and r.

    The witness equation r + lam*(p - r) = mu*q is an exact 2x2 linear solve
    in the plane spanned by p - r and q; configurations where that plane
    degenerates (p = r, or p - r parallel to q) yield NO_WITNESS.
    """
    if p.dim != q.dim or q.dim != r.dim:
        raise DimensionMismatch("classify_triple() needs equal dimensions")
    if q.is_zero():
        raise ZeroDirection("middle direction q must be nonzero")
    u = p - r
    # Find two coordinates where the 2x2 system lam*u - mu*q = -r is regular.
    rows = None
    n = p.dim
    for i in range(n):
        for j in range(i + 1, n):
            det = u.coords[i] * (-q.coords[j]) - u.coords[j] * (-q.coords[i])
            if not det.is_zero():
                rows = (i, j, det)
                break
        if rows:
            break
    if rows is None:
        return TripleClass(TripleTag.NO_WITNESS)
    i, j, det = rows
    rhs_i, rhs_j = -r.coords[i], -r.coords[j]
    lam = (rhs_i * (-q.coords[j]) - rhs_j * (-q.coords[i])) / det
    mu = (u.coords[i] * rhs_j - u.coords[j] * rhs_i) / det
    # Verify the remaining coordinates exactly.
    for k in range(n):
        if lam * u.coords[k] - mu * q.coords[k] != -r.coords[k]:
            return TripleClass(TripleTag.NO_WITNESS)
    if mu.sign() <= 0 or lam.sign() <= 0 or (ONE - lam).sign() <= 0:
        return TripleClass(TripleTag.NO_WITNESS)
    gap = (mu - ONE).sign()
    if gap > 0:
        return TripleClass(TripleTag.CONV, mu)
    if gap == 0:
        return TripleClass(TripleTag.FLAT, mu)
    return TripleClass(TripleTag.CONC, mu)


def slope_is_one(p: CoordPoint, q: CoordPoint) -> bool:
    """True iff |p_sigma - q_sigma| equals |p_tau - q_tau|, compared squared."""
    if p == q:
        raise DegenerateSegment("slope of a degenerate segment")
    delta = p - q
    tau = delta.time_part
    return delta.space_norm_sq() == tau * tau


@dataclass(frozen=True)
class SetClassification:
    label: SetClass
    # one witnessed triple per tag present, as ((p, q, r), TripleClass)
    witnesses: tuple = ()

    def witness_for(self, tag: TripleTag):
        for triple, verdict in self.witnesses:
            if verdict.tag is tag:
                return triple, verdict
        return None


def classify_point_set(points) -> SetClassification:
    """Classify a finite point set by exhaustive triple enumeration."""
    points = list(points)
    if not points:
        raise ValueError("classify_point_set() needs at least one point")
    d = points[0].dim
    for pt in points:
        if pt.dim != d:
            raise DimensionMismatch("points of mixed dimension")
    found = {}
    for a, b, c in combinations(range(len(points)), 3):
        for mid, lo, hi in ((a, b, c), (b, a, c), (c, a, b)):
            verdict = classify_triple(points[lo], points[mid], points[hi])
            if verdict.tag is TripleTag.NO_WITNESS:
                continue
            if verdict.tag not in found:
                found[verdict.tag] = (
                    (points[lo], points[mid], points[hi]),
                    verdict,
                )
    if not found:
        return SetClassification(SetClass.TRIVIAL)
    if len(found) == 1:
        tag = next(iter(found))
        return SetClassification(_TAG_TO_SET[tag], tuple(found.values()))
    return SetClassification(SetClass.MIXED, tuple(found.values()))


# -- direction domains ----------------------------------------------------------


class DomainKind(Enum):
    ALL = "all"
    NONHORIZONTAL = "nonhorizontal"
    SPEED_LT_1 = "speed_lt_1"


@dataclass(frozen=True)
class DirectionDomain:
    kind: DomainKind

    def contains(self, v: CoordPoint) -> bool:
        if self.kind is DomainKind.ALL:
            return not v.is_zero()
        tau = v.time_part
        if self.kind is DomainKind.NONHORIZONTAL:
            return not tau.is_zero()
        return (tau * tau - v.space_norm_sq()).sign() > 0

    @property
    def name(self) -> str:
        return self.kind.value


DOMAIN_ALL = DirectionDomain(DomainKind.ALL)
DOMAIN_NONHORIZONTAL = DirectionDomain(DomainKind.NONHORIZONTAL)
DOMAIN_SPEED_LT_1 = DirectionDomain(DomainKind.SPEED_LT_1)

_DOMAINS = {d.name: d for d in (DOMAIN_ALL, DOMAIN_NONHORIZONTAL, DOMAIN_SPEED_LT_1)}


def domain_by_name(name: str) -> DirectionDomain:
    try:
        return _DOMAINS[name]
    except KeyError:
        raise MalformedSurface(f"unknown direction domain {name!r}") from None


# -- surfaces ---------------------------------------------------------------------


@dataclass(frozen=True)
class HyperplanePatch:
    """{x : normal . x = offset} over sign-normalized rays in the domain."""

    normal: CoordPoint
    offset: FieldElem
    domain: DirectionDomain = DOMAIN_NONHORIZONTAL

    def __post_init__(self):
        if self.normal.is_zero():
            raise MalformedSurface("hyperplane needs a nonzero normal")

    @property
    def dim(self) -> int:
        return self.normal.dim

    def contains(self, x: CoordPoint) -> bool:
        return self.normal.dot(x) == self.offset

    def ray_point(self, v: CoordPoint) -> Optional[CoordPoint]:
        """The unique point on the ray of ddag(v), or None when the ray misses."""
        w = ddag(v)
        if w.is_zero() or not self.domain.contains(w):
            return None
        denom = self.normal.dot(w)
        if denom.is_zero():
            return None
        t = self.offset / denom
        if t.sign() <= 0:
            return None
        return w.scale(t)


@dataclass(frozen=True)
class QuadricRadialGraph:
    """{x : x^T M x = 1} over sign-normalized rays in the domain.

    matrix is symmetric with exact entries; the well-formedness obligation
    (each domain ray meets the surface exactly once, on a single sheet) is on
    whoever constructs the surface and is spot-checkable with sample_refute.
    """

    matrix: tuple
    domain: DirectionDomain = DOMAIN_SPEED_LT_1

    def __post_init__(self):
        n = len(self.matrix)
        for row in self.matrix:
            if len(row) != n:
                raise MalformedSurface("quadric matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise MalformedSurface("quadric matrix must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def form(self, x: CoordPoint) -> FieldElem:
        total = ZERO
        for i, row in enumerate(self.matrix):
            for j, entry in enumerate(row):
                total = total + x.coords[i] * entry * x.coords[j]
        return total

    def contains(self, x: CoordPoint) -> bool:
        return self.form(x) == ONE

    def ray_point(self, v: CoordPoint) -> Optional[CoordPoint]:
        w = ddag(v)
        if w.is_zero() or not self.domain.contains(w):
            return None
        q = self.form(w)
        if q.sign() <= 0:
            return None
        return w.scale(field_sqrt(q).inverse())


@dataclass(frozen=True)
class FinitePointSet:
    points: tuple

    @property
    def dim(self) -> int:
        return self.points[0].dim


SurfaceSpec = Union[HyperplanePatch, QuadricRadialGraph, FinitePointSet]


@dataclass(frozen=True)
class SurfaceVerdict:
    label: SetClass
    certificate: str
    witnesses: tuple = ()


def quadratic_form_inertia(matrix) -> tuple:
    """(n_plus, n_minus, n_zero) of a symmetric matrix, by exact congruence."""
    n = len(matrix)
    a = [[as_field(matrix[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    for step in range(n):
        pivot = None
        for i in range(step, n):
            if not a[i][i].is_zero():
                pivot = i
                break
        if pivot is None:
            off = None
            for i in range(step, n):
                for j in range(i + 1, n):
                    if not a[i][j].is_zero():
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += n - step
                break
            i, j = off
            # congruence x_i -> x_i + x_j makes the (i, i) entry nonzero
            for k in range(n):
                a[i][k] = a[i][k] + a[j][k]
            for k in range(n):
                a[k][i] = a[k][i] + a[k][j]
            pivot = i
        if pivot != step:
            a[step], a[pivot] = a[pivot], a[step]
            for row in a:
                row[step], row[pivot] = row[pivot], row[step]
        diag = a[step][step]
        if diag.sign() > 0:
            pos += 1
        else:
            neg += 1
        # Row elimination keeps the trailing block symmetric; the matching
        # column elimination then only clears the pivot row.
        for i in range(step + 1, n):
            if a[i][step].is_zero():
                continue
            factor = a[i][step] / diag
            for j in range(step, n):
                a[i][j] = a[i][j] - factor * a[step][j]
        for j in range(step + 1, n):
            a[step][j] = ZERO
    return pos, neg, zero


def classify_surface(surface: SurfaceSpec) -> SurfaceVerdict:
    """Exact classification of a canonical surface, with a certificate.

    Hyperplane patches not through the origin are flat: any witnessed middle
    point mu*q must itself satisfy the plane equation, which pins mu = 1.
    Quadric radial graphs classify by the inertia of their form: a definite
    form is a linear image of the unit sphere (concave), a (1, d-1) form is a
    linear image of the unit hyperboloid sheet (convex); triple classification
    is invariant under invertible linear maps, so the canonical class carries
    over.  Finite point sets are enumerated directly.
    """
    if isinstance(surface, FinitePointSet):
        result = classify_point_set(list(surface.points))
        return SurfaceVerdict(result.label, "finite-set-enumeration", result.witnesses)
    if isinstance(surface, HyperplanePatch):
        if surface.offset.is_zero():
            raise MalformedSurface(
                "hyperplane through the origin admits witnesses at every scale"
            )
        return SurfaceVerdict(
            SetClass.FLAT,
            "affine-hyperplane-off-origin: plane equation forces witness scale 1",
        )
    if isinstance(surface, QuadricRadialGraph):
        n = surface.dim
        pos, negv, zero = quadratic_form_inertia(surface.matrix)
        if pos == n and negv == 0:
            return SurfaceVerdict(
                SetClass.CONCAVE,
                "definite-quadric: linear image of the unit sphere",
            )
        if pos == 1 and negv == n - 1 and zero == 0:
            return SurfaceVerdict(
                SetClass.CONVEX,
                "lorentzian-quadric: linear image of the unit hyperboloid sheet",
            )
        if pos == 1 and negv == 0:
            return SurfaceVerdict(
                SetClass.FLAT,
                "rank-one-quadric: a hyperplane pair, each sheet flat",
            )
        raise MalformedSurface(
            f"quadric of inertia (+{pos}, -{negv}, 0x{zero}) is not a radial graph"
        )
    raise MalformedSurface(f"unsupported surface {surface!r}")


# -- seeded sampling ---------------------------------------------------------------


def random_fraction(rng: random.Random, spread: int = 8, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.randint(1, den))


def sample_direction(domain: DirectionDomain, d: int, rng: random.Random) -> CoordPoint:
    """A random rational direction inside the domain, sign-normalized."""
    while True:
        if domain.kind is DomainKind.SPEED_LT_1:
            spatial = [Fraction(rng.randint(-7, 7), 8) for _ in range(d - 1)]
            if sum(x * x for x in spatial) >= 1:
                continue
            coords = [Fraction(1)] + spatial
        else:
            coords = [random_fraction(rng) for _ in range(d)]
        v = CoordPoint.from_iter(coords)
        if v.is_zero():
            continue
        v = ddag(v)
        if domain.contains(v):
            return v


def surface_sample_point(surface: SurfaceSpec, rng: random.Random) -> CoordPoint:
    if isinstance(surface, FinitePointSet):
        return surface.points[rng.randrange(len(surface.points))]
    while True:
        v = sample_direction(surface.domain, surface.dim, rng)
        pt = surface.ray_point(v)
        if pt is not None:
            return pt


@dataclass(frozen=True)
class RefutationReport:
    surface_class: SetClass
    checked: int
    seed: int
    conflicts: tuple  # ((p, q, r), TripleClass) disagreeing with surface_class

    @property
    def refuted(self) -> bool:
        return bool(self.conflicts)


def sample_refute(surface: SurfaceSpec, n: int, seed: int) -> RefutationReport:
    """Classify n random exact triples from the surface; can only refute.

    Any conflict it reports is replayable from the seed, never a certificate.
    """
    verdict = classify_surface(surface)
    rng = random.Random(seed)
    conflicts = []
    expected_tag = {v: k for k, v in _TAG_TO_SET.items()}.get(verdict.label)
    for _ in range(n):
        p = surface_sample_point(surface, rng)
        q = surface_sample_point(surface, rng)
        r = surface_sample_point(surface, rng)
        if p == q or q == r or p == r:
            continue
        result = classify_triple(p, q, r)
        if result.tag is TripleTag.NO_WITNESS:
            continue
        if expected_tag is not None and result.tag is not expected_tag:
            conflicts.append(((p, q, r), result))
    return RefutationReport(verdict.label, n, seed, tuple(conflicts))
