"""The library of concrete models.

Every model is an observer family over a unit-vector locus:

* ``minkowski``   - speed<1 pairs, conformal charts over the unit hyperboloid
                    sheet; photons on.  The standard special-relativity model.
* ``newtonian``   - nonhorizontal pairs, shear charts over the horizontal
                    plane tau = 1; photons off.  The classical model with
                    absolute time.
* ``thm41``       - nonhorizontal pairs off one extra direction hyperplane,
                    shear charts over the tilted plane tau - x2 = 1; photons
                    off.  Flat unit locus without absolute time.
* ``thm55``       - speed<1 pairs, conformal charts over a skewed hyperboloid
                    (tau - b*x2)^2 - c*|sigma|^2 = 1; photons on.  Convex unit
                    locus with a clock that does not slow down.
* ``hemisphere``  - speed<1 pairs, conformal charts over the unit sphere;
                    photons on.  Concave unit locus: travelling twins age
                    more.

A note on ``thm41``: its declared membership predicate excludes only the two
direction hyperplanes tau = 0 and tau = x2, but the chart construction also
needs the sign-normalized ray to meet the plane patch at positive time, which
silently rejects the open cone tau*(tau - x2) < 0.  Admission is predicate
AND constructibility, which keeps every unit vector on the single plane patch
(the flatness the model exists for).  The density-style existence checks read
the declared exclusions only; see the axioms module docstring.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .axioms import Axiom, Outcome
from .efield import ONE, ZERO, CoordPoint, FieldElem, as_field
from .errors import BadShape, DimensionTooLow, UnknownModel
from .geom import (
    DOMAIN_NONHORIZONTAL,
    DOMAIN_SPEED_LT_1,
    HyperplanePatch,
    QuadricRadialGraph,
    SetClass,
    classify_surface,
)
from .twin import probe_directions
from .worldview import (
    ChartKind,
    LinearAtom,
    Model,
    ObserverFamily,
    Rel,
    SpeedAtom,
)
from .xforms import minkowski_matrix


@dataclass(frozen=True)
class NamedModel:
    name: str
    d: int
    params: dict
    model: Model
    expected_verdicts: dict        # Axiom -> Outcome, reproduced by the harness
    expected_ms_class: SetClass

    def describe(self) -> dict:
        out = self.model.describe()
        out["params"] = {k: str(v) for k, v in self.params.items()}
        return out


def _axis_covector(d, index) -> CoordPoint:
    return CoordPoint.from_iter([1 if i == index else 0 for i in range(d)])


def _tau_ne_zero(d) -> LinearAtom:
    return LinearAtom(_axis_covector(d, 0), Rel.NE)


def std_minkowski(d: int = 3) -> Model:
    """Standard special-relativity model; requires d >= 3."""
    if d < 3:
        raise DimensionTooLow("the Minkowski model needs dimension >= 3")
    family = ObserverFamily(
        d,
        (SpeedAtom(Rel.LT),),
        ChartKind.CONFORMAL,
        QuadricRadialGraph(minkowski_matrix(d), DOMAIN_SPEED_LT_1),
        cone_validated=True,
    )
    return Model(d, family, photons=True, name="minkowski")


def std_newtonian(d: int = 3) -> Model:
    """Classical kinematics with absolute time; d >= 2."""
    if d < 2:
        raise BadShape("dimension must be at least 2")
    surface = HyperplanePatch(
        CoordPoint.unit_time(d), ONE, DOMAIN_NONHORIZONTAL
    )
    family = ObserverFamily(
        d, (_tau_ne_zero(d),), ChartKind.SHEAR, surface, cone_validated=True
    )
    return Model(d, family, photons=False, name="newtonian")


def thm41_model(d: int = 3) -> Model:
    """Flat tilted unit locus: no differential aging, no absolute time."""
    if d < 2:
        raise BadShape("dimension must be at least 2")
    tilt = CoordPoint.from_iter([1, -1] + [0] * (d - 2))
    surface = HyperplanePatch(tilt, ONE, DOMAIN_NONHORIZONTAL)
    family = ObserverFamily(
        d,
        (_tau_ne_zero(d), LinearAtom(tilt, Rel.NE)),
        ChartKind.SHEAR,
        surface,
    )
    return Model(d, family, photons=False, name="thm41")


def thm55_model(d: int = 3, b="1/2", c="1/8") -> Model:
    """Convex skewed-hyperboloid unit locus with a fast clock.

    Shape obligations, all validated exactly at build time: c > 0 and
    (1 - |b|)^2 > c so every speed<1 ray meets the surface once on one sheet;
    the surface classifies Convex; and some unit vector has |tau| < 1.
    """
    if d < 3:
        raise DimensionTooLow("the skewed-hyperboloid model needs dimension >= 3")
    b = as_field(b)
    c = as_field(c)
    if c.sign() <= 0:
        raise BadShape("shape parameter c must be positive")
    gap = (ONE - abs(b)) * (ONE - abs(b)) - c
    if gap.sign() <= 0:
        raise BadShape("shape parameters must satisfy (1 - |b|)^2 > c")
    rows = [[ZERO for _ in range(d)] for _ in range(d)]
    rows[0][0] = ONE
    rows[0][1] = -b
    rows[1][0] = -b
    rows[1][1] = b * b - c
    for j in range(2, d):
        rows[j][j] = -c
    surface = QuadricRadialGraph(
        tuple(tuple(row) for row in rows), DOMAIN_SPEED_LT_1
    )
    family = ObserverFamily(
        d, (SpeedAtom(Rel.LT),), ChartKind.CONFORMAL, surface, cone_validated=True
    )
    model = Model(d, family, photons=True, name="thm55")
    verdict = classify_surface(surface)
    if verdict.label is not SetClass.CONVEX:
        raise BadShape(f"unit locus classified {verdict.label}, expected Convex")
    if _slow_clock_point(model) is None:
        raise BadShape("no unit vector with |tau| < 1; shape is not a counterexample")
    return model


def _slow_clock_point(model):
    one_t = CoordPoint.unit_time(model.d)
    for v in probe_directions(model):
        s = model.family.unit_point(v)
        if s is None or s == one_t:
            continue
        if (s.time_part * s.time_part - ONE).sign() < 0:
            return s
    return None


def hemisphere_model(d: int = 3) -> Model:
    """Concave unit locus (upper unit hemisphere over speed<1 rays)."""
    if d < 2:
        raise BadShape("dimension must be at least 2")
    identity_rows = tuple(
        tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d)
    )
    surface = QuadricRadialGraph(identity_rows, DOMAIN_SPEED_LT_1)
    family = ObserverFamily(
        d, (SpeedAtom(Rel.LT),), ChartKind.CONFORMAL, surface, cone_validated=True
    )
    return Model(d, family, photons=True, name="hemisphere")


H, F, S = Outcome.HOLDS, Outcome.FAILS, Outcome.SAMPLED_PASS


def _expected_minkowski(d):
    return {
        Axiom.AX_EOF: H, Axiom.AX_SELF: H, Axiom.AX_EV: H, Axiom.AX_LIN_TIME: H,
        Axiom.AX_PH: H, Axiom.AX_SYM_DIST: H, Axiom.AX_SHIFT: H,
        Axiom.AX_TH_EXP_PLUS: F, Axiom.AX_TH_EXP_STAR: F, Axiom.AX_TH_EXP: H,
        Axiom.ABS_TIME: F, Axiom.SLOW_TIME: H,
        Axiom.TWP: H, Axiom.NO_TWP: F, Axiom.ANTI_TWP: F,
    }


def _expected_newtonian(d):
    return {
        Axiom.AX_EOF: H, Axiom.AX_SELF: H, Axiom.AX_EV: H, Axiom.AX_LIN_TIME: H,
        Axiom.AX_PH: F, Axiom.AX_SYM_DIST: H, Axiom.AX_SHIFT: H,
        Axiom.AX_TH_EXP_PLUS: H, Axiom.AX_TH_EXP_STAR: H, Axiom.AX_TH_EXP: H,
        Axiom.ABS_TIME: H, Axiom.SLOW_TIME: F,
        Axiom.TWP: F, Axiom.NO_TWP: H, Axiom.ANTI_TWP: F,
    }


def _expected_thm41(d):
    return {
        Axiom.AX_EOF: H, Axiom.AX_SELF: H, Axiom.AX_EV: H, Axiom.AX_LIN_TIME: H,
        Axiom.AX_PH: F, Axiom.AX_SYM_DIST: H, Axiom.AX_SHIFT: H,
        Axiom.AX_TH_EXP_PLUS: F, Axiom.AX_TH_EXP_STAR: H, Axiom.AX_TH_EXP: H,
        Axiom.ABS_TIME: F, Axiom.SLOW_TIME: F,
        Axiom.TWP: F, Axiom.NO_TWP: H, Axiom.ANTI_TWP: F,
    }


def _expected_thm55(d):
    return {
        Axiom.AX_EOF: H, Axiom.AX_SELF: H, Axiom.AX_EV: H, Axiom.AX_LIN_TIME: H,
        Axiom.AX_PH: H, Axiom.AX_SYM_DIST: F, Axiom.AX_SHIFT: H,
        Axiom.AX_TH_EXP_PLUS: F, Axiom.AX_TH_EXP_STAR: F, Axiom.AX_TH_EXP: H,
        Axiom.ABS_TIME: F, Axiom.SLOW_TIME: F,
        Axiom.TWP: H, Axiom.NO_TWP: F, Axiom.ANTI_TWP: F,
    }


def _expected_hemisphere(d):
    out = {
        Axiom.AX_EOF: H, Axiom.AX_SELF: H, Axiom.AX_EV: H, Axiom.AX_LIN_TIME: H,
        Axiom.AX_PH: H, Axiom.AX_SYM_DIST: F, Axiom.AX_SHIFT: H,
        Axiom.AX_TH_EXP_PLUS: F, Axiom.AX_TH_EXP_STAR: F, Axiom.AX_TH_EXP: H,
        Axiom.ABS_TIME: F, Axiom.SLOW_TIME: F,
        Axiom.TWP: F, Axiom.NO_TWP: F, Axiom.ANTI_TWP: H,
    }
    if d == 2:
        out[Axiom.AX_SYM_DIST] = H  # no common simultaneity slice to break
    return out


_BUILDERS = {
    "minkowski": (std_minkowski, _expected_minkowski, SetClass.CONVEX),
    "newtonian": (std_newtonian, _expected_newtonian, SetClass.FLAT),
    "thm41": (thm41_model, _expected_thm41, SetClass.FLAT),
    "thm55": (thm55_model, _expected_thm55, SetClass.CONVEX),
    "hemisphere": (hemisphere_model, _expected_hemisphere, SetClass.CONCAVE),
}

MODEL_NAMES = tuple(sorted(_BUILDERS))


def build_named(name: str, d: int = 3, **params) -> NamedModel:
    """Build one of the library models with its expected verdict table."""
    try:
        builder, expected, ms_class = _BUILDERS[name]
    except KeyError:
        raise UnknownModel(
            f"unknown model {name!r}; choose from {', '.join(MODEL_NAMES)}"
        ) from None
    model = builder(d, **params)
    return NamedModel(name, d, params, model, expected(d), ms_class)
