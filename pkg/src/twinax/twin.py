"""Twin-paradox engine: situation detection, exact proper-time comparison,
Minkowski-sphere construction and classification, and the TwP / noTwP /
antiTwP verdicts through the geometric characterization.

The load-bearing fact: in a twin situation watched by m, the ordering of the
travelling legs' proper time against the inertial twin's proper time agrees
with the scaled-middle classification of the sign-normalized time-unit
vectors of the three observers.  Convex unit locus means every situation
favours the inertial twin, flat means no differential aging, concave the
reverse.  When the kinematics core and the shift axiom hold, each verdict is
exactly equivalent to the corresponding unit-locus class for every observer,
so the verdicts below are decided by exact surface classification; without
that gate only the sufficient direction applies and refutation falls back to
seeded situation search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .efield import ONE, ZERO, CoordPoint, FieldElem, as_field
from .errors import NotATwinSituation, NotAnObserver
from .geom import (
    FinitePointSet,
    HyperplanePatch,
    QuadricRadialGraph,
    SetClass,
    TripleClass,
    TripleTag,
    classify_surface,
    classify_triple,
    ddag,
    random_fraction,
)
from .worldview import (
    ChartKind,
    Event,
    Model,
    ObserverBody,
    coordinates_of,
    elapsed_time,
    event_at,
    time_of,
    time_unit_vector,
)
from .xforms import mat_mul, mat_vec, transpose


@dataclass(frozen=True)
class TwinSituation:
    watcher: ObserverBody
    a: ObserverBody
    b: ObserverBody
    c: ObserverBody
    e_a: Event
    e: Event
    e_c: Event

    def json_dict(self):
        return {
            "watcher": self.watcher.json_dict(),
            "a": self.a.json_dict(),
            "b": self.b.json_dict(),
            "c": self.c.json_dict(),
            "e_a": self.e_a.point.literals(),
            "e": self.e.point.literals(),
            "e_c": self.e_c.point.literals(),
        }


def is_twin_situation(model, m, a, b, c, e_a, e, e_c) -> bool:
    """Exact evaluation of the membership and time-ordering clauses."""
    for obs in (m, a, b, c):
        if not model.is_observer(obs):
            raise NotAnObserver(f"{obs} is not admitted by this model")
    if not (e_a.contains(a) and e.contains(a)):
        return False
    if not (e_a.contains(b) and e_c.contains(b)):
        return False
    if not (e.contains(c) and e_c.contains(c)):
        return False
    if e.contains(b):
        return False
    t_a = time_of(model, m, e_a)
    t_mid = time_of(model, m, e)
    t_c = time_of(model, m, e_c)
    increasing = t_a < t_mid and t_mid < t_c
    decreasing = t_a > t_mid and t_mid > t_c
    return increasing or decreasing


def situation_from_points(model, p, q, r, watcher=None) -> TwinSituation:
    """The situation with b inertial from p to r and the a/c legs via q."""
    watcher = watcher or model.reference()
    a = ObserverBody(p, q)
    b = ObserverBody(p, r)
    c = ObserverBody(q, r)
    return TwinSituation(
        watcher,
        a,
        b,
        c,
        Event(model, p),
        Event(model, q),
        Event(model, r),
    )


def leg_times(model, situation):
    """(time_a(e_a, e), time_c(e, e_c), time_b(e_a, e_c)), all exact."""
    s = situation
    return (
        elapsed_time(model, s.a, s.e_a, s.e),
        elapsed_time(model, s.c, s.e, s.e_c),
        elapsed_time(model, s.b, s.e_a, s.e_c),
    )


def compare_elapsed(model, situation, check=False) -> int:
    """Sign of (time_a + time_c) - time_b: -1 is LT, 0 EQ, +1 GT."""
    if check and not is_twin_situation(
        model,
        situation.watcher,
        situation.a,
        situation.b,
        situation.c,
        situation.e_a,
        situation.e,
        situation.e_c,
    ):
        raise NotATwinSituation("the given configuration is not a twin situation")
    t_a, t_c, t_b = leg_times(model, situation)
    return (t_a + t_c - t_b).sign()


_ORDERING_TO_TAG = {-1: TripleTag.CONV, 0: TripleTag.FLAT, 1: TripleTag.CONC}
_TAG_TO_ORDERING = {v: k for k, v in _ORDERING_TO_TAG.items()}


def situation_unit_triple(model, situation):
    """Sign-normalized time-unit vectors of (a, b, c) in the watcher's chart."""
    s = situation
    return (
        ddag(time_unit_vector(model, s.a, s.watcher)),
        ddag(time_unit_vector(model, s.b, s.watcher)),
        ddag(time_unit_vector(model, s.c, s.watcher)),
    )


# -- Minkowski sphere -----------------------------------------------------------------


@dataclass(frozen=True)
class MinkowskiSphere:
    owner: ObserverBody
    surface: object  # SurfaceSpec


def minkowski_sphere(model, m) -> MinkowskiSphere:
    """The set of sign-normalized time-unit vectors of all observers, in m's
    chart, as a canonical surface.

    For the reference observer this is the family's unit locus itself.  For
    any other observer it is the exact linear pullback: both chart kinds send
    the locus to the locus side with positive time component (conformal
    charts are orthochronous up to positive scale, shear charts scale the
    time coordinate by the positive pivot s_tau), so sign-normalization never
    folds the image and the pullback surface is the sphere on the nose.
    """
    if not model.is_observer(m):
        raise NotAnObserver(f"{m} is not admitted by this model")
    base = model.family.surface
    linear = model.chart(m).linear
    if m == model.reference():
        return MinkowskiSphere(m, base)
    if isinstance(base, HyperplanePatch):
        normal = mat_vec(transpose(linear), base.normal)
        return MinkowskiSphere(
            m, HyperplanePatch(normal, base.offset, base.domain)
        )
    matrix = mat_mul(transpose(linear), mat_mul(base.matrix, linear))
    return MinkowskiSphere(m, QuadricRadialGraph(matrix, base.domain))


def minkowski_sphere_points(model, m, n, seed) -> FinitePointSet:
    """A literal sample of the sphere: n sign-normalized unit vectors."""
    rng = random.Random(seed)
    points = []
    seen = set()
    guard = 0
    while len(points) < n and guard < 50 * n:
        guard += 1
        v = _sample_admitted_direction(model, rng)
        k = ObserverBody(CoordPoint.zero(model.d), -v)
        u = ddag(time_unit_vector(model, k, m))
        if u not in seen:
            seen.add(u)
            points.append(u)
    return FinitePointSet(tuple(points))


def classify_ms(model, m) -> SetClass:
    """Convex / Flat / Concave / Trivial / Mixed for the sphere of m."""
    return classify_surface(minkowski_sphere(model, m).surface).label


def ms_certificate(model, m) -> str:
    verdict = classify_surface(minkowski_sphere(model, m).surface)
    if model.family.kind is ChartKind.CONFORMAL:
        invariance = "orthochronous-conformal charts keep every observer's sphere a linear image"
    else:
        invariance = "shear charts preserve the locus functional and its positive side"
    return f"{verdict.certificate}; {invariance}"


# -- seeded situation sampling ----------------------------------------------------------


def _sample_admitted_direction(model, rng) -> CoordPoint:
    family = model.family
    for _ in range(4000):
        if family.kind is ChartKind.CONFORMAL:
            spatial = [Fraction(rng.randint(-7, 7), 8) for _ in range(model.d - 1)]
            coords = [Fraction(1)] + spatial
        else:
            coords = [Fraction(1)] + [random_fraction(rng, 6, 4) for _ in range(model.d - 1)]
        v = CoordPoint.from_iter(coords)
        if family.admits_direction(v):
            return v
    raise RuntimeError("could not sample an admitted direction")


def _random_ref_point(model, rng) -> CoordPoint:
    return CoordPoint.from_iter(
        [random_fraction(rng, 6, 4) for _ in range(model.d)]
    )


def sample_twin_situation(model, rng, watcher=None) -> TwinSituation:
    """Seeded rejection sampler for twin situations in the reference chart.

    b's worldline joins two sampled meeting points with distinct times; the
    intermediate event is slid between them and jittered off b's line, and
    everything is rejected until all membership, admission and ordering
    clauses hold exactly.
    """
    watcher = watcher or model.reference()
    d = model.d
    for _ in range(2000):
        v_b = _sample_admitted_direction(model, rng)
        p = _random_ref_point(model, rng)
        stretch = Fraction(rng.randint(1, 4))
        r = p + v_b.scale(stretch)
        t_mid = Fraction(rng.randint(1, 7), 8)
        jitter = [Fraction(0)] + [
            Fraction(rng.randint(-2, 2), 16) for _ in range(d - 1)
        ]
        w = CoordPoint.from_iter(jitter)
        if w.is_zero():
            continue
        q = p + (r - p).scale(t_mid) + w
        family = model.family
        if not family.admits_direction(q - p):
            continue
        if not family.admits_direction(r - q):
            continue
        situation = situation_from_points(model, p, q, r, watcher)
        if is_twin_situation(
            model, watcher, situation.a, situation.b, situation.c,
            situation.e_a, situation.e, situation.e_c,
        ):
            return situation
    raise RuntimeError("twin-situation sampling failed to converge")


# -- witness construction ----------------------------------------------------------------


_PROBE_SPATIALS = (
    (Fraction(-4, 5),),
    (Fraction(1, 2),),
    (Fraction(-1, 2),),
    (Fraction(1, 2), Fraction(1, 4)),
    (Fraction(3, 5),),
    (Fraction(-3, 5), Fraction(1, 5)),
    (Fraction(2, 3),),
    (Fraction(-1, 4),),
    (Fraction(1, 5), Fraction(-2, 5)),
    (Fraction(7, 8),),
)


def probe_directions(model):
    """A deterministic stream of admitted directions, widest spread first."""
    d = model.d
    out = []
    candidates = [(Fraction(1),) + s + (Fraction(0),) * (d - 1 - len(s))
                  for s in _PROBE_SPATIALS if len(s) <= d - 1]
    candidates += [
        (Fraction(2), Fraction(1)) + (Fraction(0),) * (d - 2),
        (Fraction(1), Fraction(-1)) + (Fraction(0),) * (d - 2),
        (Fraction(3), Fraction(2)) + (Fraction(0),) * (d - 2),
        (Fraction(1),) + (Fraction(0),) * (d - 1),
    ]
    for coords in candidates:
        v = CoordPoint.from_iter(coords)
        if model.family.admits_direction(v):
            out.append(v)
    return out


def find_witnessed_triple(model, want_tag, seed=0):
    """A triple of sphere points classifying as want_tag, or None.

    Tries a deterministic probe battery first, then seeded sampling; any hit
    is an exact witness.
    """
    ref = model.reference()
    points = []
    seen = set()
    for v in probe_directions(model):
        s = model.family.unit_point(v)
        if s is not None and s not in seen:
            seen.add(s)
            points.append(s)
    rng = random.Random(seed)
    for _ in range(12):
        v = _sample_admitted_direction(model, rng)
        s = model.family.unit_point(v)
        if s is not None and s not in seen:
            seen.add(s)
            points.append(s)
    for i in range(len(points)):
        for j in range(len(points)):
            for k in range(i + 1, len(points)):
                if j == i or j == k:
                    continue
                verdict = classify_triple(points[i], points[j], points[k])
                if verdict.tag is want_tag:
                    return (points[i], points[j], points[k]), verdict
    return None


def situation_from_triple(model, triple, watcher=None) -> TwinSituation:
    """Realize a witnessed sphere triple as a concrete twin situation.

    With sphere points (pa, pb, pc) and the witness mu*pb = lam*pa +
    (1-lam)*pc, the meeting points o, lam*pa and mu*pb support observers
    with exactly those unit vectors, and the time ordering comes for free
    since sphere points have positive time component.
    """
    pa, pb, pc = triple
    verdict = classify_triple(pa, pb, pc)
    if verdict.tag is TripleTag.NO_WITNESS:
        raise NotATwinSituation("triple carries no scale witness")
    mid = pb.scale(verdict.mu)
    span = pa - pc
    lam = None
    for s_i, delta_i in zip(span.coords, (mid - pc).coords):
        if not s_i.is_zero():
            lam = delta_i / s_i
            break
    p = CoordPoint.zero(model.d)
    q = pa.scale(lam)
    r = mid
    return situation_from_points(model, p, q, r, watcher or model.reference())


# -- verdicts -------------------------------------------------------------------------------


_TARGET_CLASS = {
    "TwP": SetClass.CONVEX,
    "noTwP": SetClass.FLAT,
    "antiTwP": SetClass.CONCAVE,
}

_CLASS_TO_TAG = {
    SetClass.CONVEX: TripleTag.CONV,
    SetClass.FLAT: TripleTag.FLAT,
    SetClass.CONCAVE: TripleTag.CONC,
}


def twp_verdict(model, which, mode="exact", samples=400, seed=0):
    """Verdict for TwP / noTwP / antiTwP (pass the token, e.g. "TwP").

    Exact mode first checks the kinematics core and the shift axiom; when they
    hold the verdict is decided by the sphere classification in both
    directions, otherwise only the sufficient direction is used and refutation
    falls back to seeded situation search.  The certificate names which route
    licensed the verdict.
    """
    from . import axioms as _axioms

    token = which if isinstance(which, str) else which.token
    target = _TARGET_CLASS[token]
    axiom_id = _axioms.Axiom.from_token(token)
    if mode == "sample":
        return _sampled_situation_search(
            model, axiom_id, target, samples, seed, _axioms
        )
    gate_ids = list(_axioms.SYSTEMS["Kinem0"]) + [_axioms.Axiom.AX_SHIFT]
    gate = all(
        _axioms.check_axiom(model, g, mode="exact").outcome
        is _axioms.Outcome.HOLDS
        for g in gate_ids
    )
    actual = classify_ms(model, model.reference())
    certificate_base = ms_certificate(model, model.reference())
    if actual is target:
        route = (
            "two-way unit-locus characterization (kinematics core and shift hold)"
            if gate
            else "one-way unit-locus sufficiency"
        )
        return _axioms.Verdict(
            axiom_id,
            _axioms.Outcome.HOLDS,
            "exact",
            certificate=f"{route}; {certificate_base}",
        )
    if actual is SetClass.TRIVIAL:
        return _axioms.Verdict(
            axiom_id,
            _axioms.Outcome.HOLDS,
            "exact",
            certificate="vacuous: the unit locus admits no witnessed triples",
        )
    if gate:
        want = _CLASS_TO_TAG.get(actual)
        hit = find_witnessed_triple(model, want, seed=seed) if want else None
        if hit is None:
            # mixed sphere: take any witnessed tag that contradicts the target
            for tag in (TripleTag.CONV, TripleTag.FLAT, TripleTag.CONC):
                if tag is _CLASS_TO_TAG.get(target):
                    continue
                hit = find_witnessed_triple(model, tag, seed=seed)
                if hit:
                    break
        if hit is None:
            raise RuntimeError("failed to realize a counterexample triple")
        situation = situation_from_triple(model, hit[0])
        ordering = compare_elapsed(model, situation)
        witness = situation.json_dict()
        witness["kind"] = "twin-situation"
        witness["ordering"] = ordering
        witness["target"] = token
        return _axioms.Verdict(
            axiom_id,
            _axioms.Outcome.FAILS,
            "exact",
            certificate=None,
            witness=witness,
        )
    return _sampled_situation_search(model, axiom_id, target, samples, seed, _axioms)


def _sampled_situation_search(model, axiom_id, target, samples, seed, _axioms):
    rng = random.Random(seed)
    want = _TAG_TO_ORDERING[_CLASS_TO_TAG[target]]
    for _ in range(samples):
        situation = sample_twin_situation(model, rng)
        ordering = compare_elapsed(model, situation)
        if ordering != want:
            witness = situation.json_dict()
            witness["kind"] = "twin-situation"
            witness["ordering"] = ordering
            witness["target"] = axiom_id.token
            return _axioms.Verdict(
                axiom_id,
                _axioms.Outcome.FAILS,
                "sample",
                witness=witness,
                samples=samples,
                seed=seed,
            )
    return _axioms.Verdict(
        axiom_id,
        _axioms.Outcome.SAMPLED_PASS,
        "sample",
        samples=samples,
        seed=seed,
    )


def replay_situation_witness(model, witness) -> bool:
    """Re-evaluate a twin-situation witness; True when it still violates."""
    point_of = lambda lits: CoordPoint.from_iter(lits)
    pair = lambda d: ObserverBody(point_of(d["p"]), point_of(d["q"]))
    situation = TwinSituation(
        pair(witness["watcher"]),
        pair(witness["a"]),
        pair(witness["b"]),
        pair(witness["c"]),
        Event(model, point_of(witness["e_a"])),
        Event(model, point_of(witness["e"])),
        Event(model, point_of(witness["e_c"])),
    )
    ok = is_twin_situation(
        model, situation.watcher, situation.a, situation.b, situation.c,
        situation.e_a, situation.e, situation.e_c,
    )
    if not ok:
        return False
    from . import axioms as _axioms

    want = _TAG_TO_ORDERING[_CLASS_TO_TAG[_TARGET_CLASS[witness["target"]]]]
    return compare_elapsed(model, situation) != want


# -- characterization crosscheck ----------------------------------------------------------


@dataclass(frozen=True)
class CrosscheckRecord:
    index: int
    ordering: int
    tag: str
    agree: bool
    situation: dict

    def json_dict(self):
        return {
            "index": self.index,
            "ordering": self.ordering,
            "tag": self.tag,
            "agree": self.agree,
            "situation": self.situation,
        }


@dataclass(frozen=True)
class CrosscheckReport:
    model_name: str
    n: int
    seed: int
    agreements: int
    records: tuple

    @property
    def all_agree(self) -> bool:
        return self.agreements == self.n

    def json_dict(self):
        return {
            "model": self.model_name,
            "n": self.n,
            "seed": self.seed,
            "agreements": self.agreements,
            "records": [r.json_dict() for r in self.records],
        }


def crosscheck_characterization(model, n, seed, keep_records=True) -> CrosscheckReport:
    """Sample n situations; per sample, assert the proper-time ordering equals
    the scaled-middle classification of the sign-normalized unit vectors."""
    rng = random.Random(seed)
    agreements = 0
    records = []
    for index in range(n):
        situation = sample_twin_situation(model, rng)
        ordering = compare_elapsed(model, situation)
        ua, ub, uc = situation_unit_triple(model, situation)
        verdict = classify_triple(ua, ub, uc)
        agree = _TAG_TO_ORDERING.get(verdict.tag) == ordering
        if agree:
            agreements += 1
        if keep_records or not agree:
            records.append(
                CrosscheckRecord(
                    index,
                    ordering,
                    verdict.tag.value,
                    agree,
                    situation.json_dict(),
                )
            )
    return CrosscheckReport(model.name, n, seed, agreements, tuple(records))
