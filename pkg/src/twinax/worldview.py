"""Model core: bodies, intensionally presented observer families, worldview
charts, events, coordinate functions, time-unit vectors, worldlines, elapsed
time and spatial distance.

A model fixes a reference chart.  Every body is a line in that chart:
observers are parameter pairs (p, q) whose worldline passes through both
points, photons (when enabled) are the slope-1 lines, extra bodies are listed
lines.  An observer family admits a pair through a membership predicate over
v = p - q (conjunctions drawn from a closed vocabulary of linear conditions
and a squared speed comparison) and equips each admitted pair with an exact
invertible affine chart mapping the pair's own coordinates to reference
coordinates.

Two chart constructors cover every model in the library.  Both send the
origin to p and the unit time tick to the point s where the sign-normalized
ray of v meets the family's unit-vector locus (a surface in the reference
chart):

* shear charts fix all spatial basis vectors, so their linear part is
  [s | e_2 | ... | e_d];
* conformal charts compose a pure Lorentz boost with the dilation
  sqrt(s_tau^2 - |s_sigma|^2), which also sends 1_t to s while scaling the
  Minkowski form.

Because s always has positive time component, chart orientation never leaves
a sign free.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
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
    BadShape,
    DimensionMismatch,
    NotAnObserver,
    UnknownBody,
)
from .geom import (
    DirectionDomain,
    HyperplanePatch,
    QuadricRadialGraph,
    ddag,
    slope_is_one,
)
from .xforms import AffineMap, lorentz_boost, mat_scale, matrix_of


# -- lines and bodies -------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """A line in canonical form: equality means equality as point sets."""

    anchor: CoordPoint
    direction: CoordPoint

    @staticmethod
    def through(p: CoordPoint, q: CoordPoint) -> "Line":
        if p == q:
            raise ValueError("a line needs two distinct points")
        return Line._canonical(p, q - p)

    @staticmethod
    def from_direction(p: CoordPoint, direction: CoordPoint) -> "Line":
        if direction.is_zero():
            raise ValueError("a line needs a nonzero direction")
        return Line._canonical(p, direction)

    @staticmethod
    def _canonical(p: CoordPoint, direction: CoordPoint) -> "Line":
        pivot = None
        for i, c in enumerate(direction.coords):
            if not c.is_zero():
                pivot = i
                break
        unit = direction.scale(direction.coords[pivot].inverse())
        anchor = p - unit.scale(p.coords[pivot])
        return Line(anchor, unit)

    def contains(self, x: CoordPoint) -> bool:
        delta = x - self.anchor
        pivot = None
        for i, c in enumerate(self.direction.coords):
            if not c.is_zero():
                pivot = i
                break
        t = delta.coords[pivot]
        return delta == self.direction.scale(t)

    def point_at(self, t) -> CoordPoint:
        return self.anchor + self.direction.scale(as_field(t))

    def is_slope_one(self) -> bool:
        return slope_is_one(self.anchor, self.anchor + self.direction)


@dataclass(frozen=True)
class ObserverBody:
    """An observer parameter: the pair of reference points its worldline joins."""

    p: CoordPoint
    q: CoordPoint

    @property
    def direction(self) -> CoordPoint:
        return self.p - self.q

    def ref_worldline(self) -> Line:
        return Line.through(self.p, self.q)

    def json_dict(self):
        return {"p": self.p.literals(), "q": self.q.literals()}


@dataclass(frozen=True)
class PhotonBody:
    line: Line


@dataclass(frozen=True)
class ExtraBody:
    line: Line


Body = Union[ObserverBody, PhotonBody, ExtraBody]


# -- membership predicate vocabulary ------------------------------------------------


class Rel(Enum):
    EQ = "="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="


def _rel_holds(rel: Rel, sign: int) -> bool:
    if rel is Rel.EQ:
        return sign == 0
    if rel is Rel.NE:
        return sign != 0
    if rel is Rel.LT:
        return sign < 0
    if rel is Rel.LE:
        return sign <= 0
    if rel is Rel.GT:
        return sign > 0
    return sign >= 0


@dataclass(frozen=True)
class LinearAtom:
    """coeffs . v  rel  0, a linear condition on the direction v = p - q."""

    coeffs: CoordPoint
    rel: Rel

    def holds(self, v: CoordPoint) -> bool:
        return _rel_holds(self.rel, self.coeffs.dot(v).sign())

    def describe(self) -> str:
        return f"linear({[c.literal() for c in self.coeffs.coords]} {self.rel.value} 0)"


@dataclass(frozen=True)
class SpeedAtom:
    """|v_sigma|^2 rel v_tau^2, the squared speed comparison."""

    rel: Rel

    def holds(self, v: CoordPoint) -> bool:
        tau = v.time_part
        gap = v.space_norm_sq() - tau * tau
        return _rel_holds(self.rel, gap.sign())

    def describe(self) -> str:
        return f"speed({self.rel.value} 1)"


Atom = Union[LinearAtom, SpeedAtom]


class ChartKind(Enum):
    SHEAR = "shear"
    CONFORMAL = "conformal"


SurfaceKind = Union[HyperplanePatch, QuadricRadialGraph]


@dataclass(frozen=True)
class ObserverFamily:
    """Intensional observer family: predicate atoms, chart kind, unit locus.

    ``atoms`` is the declared membership predicate over v = p - q.  A pair is
    admitted when the atoms hold and the chart construction succeeds, i.e. the
    sign-normalized ray of v meets the surface.  ``cone_validated`` records an
    exact build-time proof that the surface meets every ray the atoms admit
    (used by the theoretical-existence reductions).
    """

    d: int
    atoms: tuple
    kind: ChartKind
    surface: SurfaceKind
    cone_validated: bool = False

    def atoms_admit(self, v: CoordPoint) -> bool:
        return not v.is_zero() and all(atom.holds(v) for atom in self.atoms)

    def unit_point(self, v: CoordPoint) -> Optional[CoordPoint]:
        """Where the sign-normalized ray of v meets the unit locus."""
        return self.surface.ray_point(v)

    def admits_direction(self, v: CoordPoint) -> bool:
        if not self.atoms_admit(v):
            return False
        s = self.unit_point(v)
        if s is None:
            return False
        if self.kind is ChartKind.CONFORMAL:
            tau = s.time_part
            if (tau * tau - s.space_norm_sq()).sign() <= 0:
                return False
        return True

    def admits(self, observer: ObserverBody) -> bool:
        if observer.p == observer.q:
            return False
        if observer.p.dim != self.d:
            return False
        return self.admits_direction(observer.direction)

    def chart(self, observer: ObserverBody) -> AffineMap:
        """The affine map from the observer's coordinates to reference ones."""
        if not self.admits(observer):
            raise NotAnObserver(f"{observer} is not admitted by the family")
        s = self.unit_point(observer.direction)
        if self.kind is ChartKind.SHEAR:
            d = self.d
            columns = [s.coords] + [
                tuple(ONE if i == j else ZERO for i in range(d))
                for j in range(1, d)
            ]
            linear = tuple(
                tuple(columns[j][i] for j in range(d)) for i in range(d)
            )
            return AffineMap(linear, observer.p)
        tau = s.time_part
        velocity = [c / tau for c in s.space_part.coords]
        scale = field_sqrt(tau * tau - s.space_norm_sq())
        boost = lorentz_boost(self.d, velocity)
        return AffineMap(mat_scale(boost.linear, scale), observer.p)

    def reference(self) -> ObserverBody:
        """The admitted pair whose chart is the identity."""
        d = self.d
        return ObserverBody(CoordPoint.zero(d), -CoordPoint.unit_time(d))

    def describe(self) -> dict:
        return {
            "kind": self.kind.value,
            "atoms": [atom.describe() for atom in self.atoms],
            "surface": type(self.surface).__name__,
        }


# -- models ------------------------------------------------------------------------


class Model:
    """An immutable kinematics model over the exact field backend."""

    def __init__(self, d, family, photons, extra_bodies=(), name="custom"):
        if d < 2:
            raise BadShape("spacetime dimension must be at least 2")
        if family.d != d:
            raise DimensionMismatch("family dimension disagrees with model")
        self.d = d
        self.family = family
        self.photons = photons
        self.extra_bodies = tuple(extra_bodies)
        self.name = name
        self._chart_cache = {}
        self._cache_lock = threading.Lock()
        self._validate()

    def _validate(self):
        family = self.family
        one_t = CoordPoint.unit_time(self.d)
        if family.unit_point(one_t) != one_t:
            raise BadShape("the unit locus must contain the unit time vector")
        ref = family.reference()
        if not family.admits(ref):
            raise BadShape("the reference pair is not admitted by the family")
        if not self.chart(ref).is_identity():
            raise BadShape("the reference chart must be the identity")
        if family.kind is ChartKind.SHEAR:
            # horizontal directions would make the chart singular
            if not any(
                isinstance(a, LinearAtom)
                and a.rel is Rel.NE
                and _is_time_axis_multiple(a.coeffs)
                or isinstance(a, SpeedAtom) and a.rel in (Rel.LT, Rel.LE)
                for a in family.atoms
            ):
                raise BadShape(
                    "shear families must exclude horizontal directions"
                )
        else:
            if not any(
                isinstance(a, SpeedAtom) and a.rel is Rel.LT for a in family.atoms
            ):
                raise BadShape(
                    "conformal families must restrict to speed < 1 directions"
                )
        for line in self.extra_bodies:
            if line.anchor.dim != self.d:
                raise DimensionMismatch("extra body dimension mismatch")

    def chart(self, observer: ObserverBody) -> AffineMap:
        with self._cache_lock:
            cached = self._chart_cache.get(observer)
        if cached is not None:
            return cached
        built = self.family.chart(observer)
        with self._cache_lock:
            self._chart_cache[observer] = built
        return built

    def reference(self) -> ObserverBody:
        return self.family.reference()

    def is_observer(self, body: Body) -> bool:
        return isinstance(body, ObserverBody) and self.family.admits(body)

    def body_ref_worldline(self, body: Body) -> Line:
        if isinstance(body, ObserverBody):
            if not self.family.admits(body):
                raise NotAnObserver(f"{body} is not an observer of this model")
            return body.ref_worldline()
        if isinstance(body, PhotonBody):
            if not self.photons:
                raise UnknownBody("this model has no photons")
            if not body.line.is_slope_one():
                raise UnknownBody("photon worldlines must have slope 1")
            return body.line
        if isinstance(body, ExtraBody):
            if body.line not in self.extra_bodies:
                raise UnknownBody("unlisted extra body")
            return body.line
        raise UnknownBody(f"unsupported body {body!r}")

    def describe(self) -> dict:
        return {
            "name": self.name,
            "d": self.d,
            "photons": self.photons,
            "family": self.family.describe(),
            "extra_bodies": len(self.extra_bodies),
        }

    def __repr__(self):
        return f"Model({self.name}, d={self.d})"


def _is_time_axis_multiple(coeffs: CoordPoint) -> bool:
    if coeffs.time_part.is_zero():
        return False
    return all(c.is_zero() for c in coeffs.space_part.coords)


# -- events ------------------------------------------------------------------------


class Event:
    """An event, identified by its reference-chart coordinates.

    The event-function of the reference observer is injective in every model
    this workbench builds (charts are total affine bijections), which licenses
    the identification; membership of a body is decided by exact incidence of
    its reference worldline.
    """

    __slots__ = ("model", "point")

    def __init__(self, model: Model, point: CoordPoint):
        self.model = model
        self.point = point

    def __eq__(self, other):
        if not isinstance(other, Event):
            return NotImplemented
        return self.model is other.model and self.point == other.point

    def __hash__(self):
        return hash((id(self.model), self.point))

    def contains(self, body: Body) -> bool:
        return self.model.body_ref_worldline(body).contains(self.point)

    def __contains__(self, body: Body) -> bool:
        return self.contains(body)

    def __repr__(self):
        return f"Event({self.point!r})"


# -- worldview operations -------------------------------------------------------------


def worldview_map(model: Model, k: ObserverBody, m: ObserverBody) -> AffineMap:
    """The chart change w^k_m taking k-coordinates to m-coordinates."""
    return model.chart(m).inverse().compose(model.chart(k))


def event_at(model: Model, m: ObserverBody, p: CoordPoint) -> Event:
    if p.dim != model.d:
        raise DimensionMismatch("coordinate point has wrong dimension")
    return Event(model, model.chart(m).apply(p))


def coordinates_of(model: Model, m: ObserverBody, e: Event) -> CoordPoint:
    """The unique p with event_at(m, p) = e."""
    return model.chart(m).inverse().apply(e.point)


def time_of(model: Model, m: ObserverBody, e: Event) -> FieldElem:
    return coordinates_of(model, m, e).time_part


def elapsed_time(model: Model, m: ObserverBody, e1: Event, e2: Event) -> FieldElem:
    """|time_m(e1) - time_m(e2)|; the proper time when m belongs to both."""
    return abs(time_of(model, m, e1) - time_of(model, m, e2))


def spatial_distance(model: Model, m: ObserverBody, e1: Event, e2: Event) -> FieldElem:
    delta = coordinates_of(model, m, e1) - coordinates_of(model, m, e2)
    return field_sqrt(delta.space_norm_sq())


def time_unit_vector(model: Model, k: ObserverBody, m: ObserverBody) -> CoordPoint:
    """w^k_m(1_t) - w^k_m(o): one tick of k's clock in m's chart."""
    return worldview_map(model, k, m).linear_apply(CoordPoint.unit_time(model.d))


def worldline(model: Model, m: ObserverBody, body: Body) -> Line:
    """The exact line where m observes the body."""
    ref_line = model.body_ref_worldline(body)
    inv = model.chart(m).inverse()
    return Line.from_direction(
        inv.apply(ref_line.anchor), inv.linear_apply(ref_line.direction)
    )


def body_in_event(model: Model, body: Body, e: Event) -> bool:
    return e.contains(body)
