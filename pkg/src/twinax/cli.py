"""Command-line front end: model ingestion, axiom and system checks,
Minkowski-sphere classification, twin scenarios and the characterization
crosscheck, with human-readable and deterministic JSON reports.

All randomness funnels through the single --seed flag recorded in the report;
an identical invocation reproduces a byte-identical JSON report.  Wall-clock
timing is printed to stdout only, never into the JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .axioms import SYSTEMS, Axiom, check_axiom
from .efield import CoordPoint, as_field
from .errors import (
    NotATwinSituation,
    ScenarioParseError,
    SpecParseError,
    UnknownAxiom,
    WorkbenchError,
)
from .geom import HyperplanePatch, QuadricRadialGraph, domain_by_name
from .constructions import MODEL_NAMES, build_named
from .twin import (
    classify_ms,
    compare_elapsed,
    crosscheck_characterization,
    is_twin_situation,
    leg_times,
    minkowski_sphere,
)
from .worldview import (
    ChartKind,
    Line,
    LinearAtom,
    Model,
    ObserverBody,
    ObserverFamily,
    Rel,
    SpeedAtom,
)


def _fmt(value) -> str:
    return f"{value.literal()} (~ {value.approx()})"


# -- model ingestion -----------------------------------------------------------------


_REL_TOKENS = {r.value: r for r in Rel}


def _parse_points(items):
    return CoordPoint.from_iter(items)


def _parse_atom(data):
    kind = data.get("kind")
    rel = _REL_TOKENS.get(data.get("rel"))
    if rel is None:
        raise SpecParseError(f"unknown relation {data.get('rel')!r}")
    if kind == "speed":
        return SpeedAtom(rel)
    if kind == "linear":
        return LinearAtom(_parse_points(data["coeffs"]), rel)
    raise SpecParseError(f"unknown predicate atom kind {kind!r}")


def _parse_surface(data, d):
    kind = data.get("kind")
    domain = domain_by_name(data.get("domain", "nonhorizontal"))
    if kind == "hyperplane":
        return HyperplanePatch(
            _parse_points(data["normal"]), as_field(data["offset"]), domain
        )
    if kind == "quadric":
        matrix = tuple(
            tuple(as_field(entry) for entry in row) for row in data["matrix"]
        )
        return QuadricRadialGraph(matrix, domain)
    raise SpecParseError(f"unknown surface kind {kind!r}")


def parse_model_spec(data: dict) -> Model:
    """Build a Model from the documented JSON spec-file structure."""
    try:
        d = int(data["d"])
        fam = data["family"]
        kind = ChartKind(fam["constructor"])
        atoms = tuple(_parse_atom(a) for a in fam["predicate"])
        surface = _parse_surface(fam["surface"], d)
        cone_validated = bool(fam.get("cone_validated", False))
        family = ObserverFamily(d, atoms, kind, surface, cone_validated)
        extra = tuple(
            Line.from_direction(
                _parse_points(b["anchor"]), _parse_points(b["direction"])
            )
            for b in data.get("extra_bodies", [])
        )
        return Model(
            d,
            family,
            photons=bool(data.get("photons", False)),
            extra_bodies=extra,
            name=str(data.get("name", "spec-file")),
        )
    except SpecParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"bad model spec: {exc}") from exc


def load_model_spec(path: str) -> Model:
    try:
        with open(path) as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise SpecParseError("invalid JSON", line=exc.lineno, column=exc.colno) from exc
    except OSError as exc:
        raise SpecParseError(f"cannot read spec file: {exc}") from exc
    return parse_model_spec(data)


def _resolve_model(args):
    if getattr(args, "spec", None):
        model = load_model_spec(args.spec)
        return model, {"source": "spec-file", **model.describe()}
    name = args.model or "minkowski"
    params = {}
    if name == "thm55":
        if getattr(args, "b", None) is not None:
            params["b"] = args.b
        if getattr(args, "c", None) is not None:
            params["c"] = args.c
    named = build_named(name, args.d, **params)
    return named.model, named.describe()


# -- scenarios ------------------------------------------------------------------------


def load_scenario(model: Model, path: str):
    try:
        with open(path) as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"invalid scenario JSON (line {exc.lineno}, column {exc.colno})"
        ) from exc
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file: {exc}") from exc
    try:
        observers = {
            label: ObserverBody(
                _parse_points(entry["p"]), _parse_points(entry["q"])
            )
            for label, entry in data["observers"].items()
        }
        events = {
            label: _parse_points(entry) for label, entry in data["events"].items()
        }
        watcher_spec = data.get("watcher", "reference")
        if watcher_spec == "reference":
            watcher = model.reference()
        else:
            watcher = ObserverBody(
                _parse_points(watcher_spec["p"]), _parse_points(watcher_spec["q"])
            )
        from .twin import TwinSituation
        from .worldview import Event

        return TwinSituation(
            watcher,
            observers["a"],
            observers["b"],
            observers["c"],
            Event(model, events["e_a"]),
            Event(model, events["e"]),
            Event(model, events["e_c"]),
        )
    except (KeyError, TypeError) as exc:
        raise ScenarioParseError(f"bad scenario structure: {exc}") from exc


# -- subcommands -----------------------------------------------------------------------


def _expand_axiom_tokens(csv: str):
    requested = []
    for token in csv.split(","):
        token = token.strip()
        if not token:
            continue
        matched_system = None
        for name in SYSTEMS:
            if name.lower() == token.lower():
                matched_system = name
                break
        if matched_system:
            for axiom in SYSTEMS[matched_system]:
                if axiom not in requested:
                    requested.append(axiom)
            continue
        axiom = Axiom.from_token(token)
        if axiom not in requested:
            requested.append(axiom)
    if not requested:
        raise UnknownAxiom("no axioms requested")
    return requested


def cmd_check(args) -> int:
    started = time.monotonic()
    model, descriptor = _resolve_model(args)
    axioms = _expand_axiom_tokens(args.axioms)
    verdicts = [
        check_axiom(model, axiom, mode=args.mode, samples=args.samples, seed=args.seed)
        for axiom in axioms
    ]
    verdicts.sort(key=lambda v: v.axiom.token)
    report = {
        "version": __version__,
        "model": descriptor,
        "mode": args.mode,
        "samples": args.samples if args.mode == "sample" else None,
        "seed": args.seed,
        "checks": [v.json_dict() for v in verdicts],
    }
    for verdict in verdicts:
        line = f"{verdict.axiom.token}: {verdict.outcome.value}"
        if verdict.certificate:
            line += f"  [{verdict.certificate}]"
        if verdict.witness:
            line += f"  witness: {json.dumps(verdict.witness, sort_keys=True)}"
        print(line)
    elapsed = time.monotonic() - started
    print(f"checked {len(verdicts)} axioms in {elapsed:.2f} s")
    _maybe_write_json(args, report)
    return 0 if all(v.holds for v in verdicts) else 1


def cmd_scenario(args) -> int:
    model, descriptor = _resolve_model(args)
    situation = load_scenario(model, args.file)
    valid = is_twin_situation(
        model,
        situation.watcher,
        situation.a,
        situation.b,
        situation.c,
        situation.e_a,
        situation.e,
        situation.e_c,
    )
    if not valid:
        print("not a twin-paradox situation")
        raise NotATwinSituation("scenario clauses do not hold in this model")
    t_a, t_c, t_b = leg_times(model, situation)
    ordering = compare_elapsed(model, situation)
    label = {-1: "LT", 0: "EQ", 1: "GT"}[ordering]
    print("twin-paradox situation: yes")
    print(f"proper time, first leg:   {_fmt(t_a)}")
    print(f"proper time, second leg:  {_fmt(t_c)}")
    print(f"proper time, inertial:    {_fmt(t_b)}")
    print(f"legs total:               {_fmt(t_a + t_c)}")
    print(f"outcome: {label} (travelling legs versus inertial twin)")
    report = {
        "version": __version__,
        "model": descriptor,
        "situation": situation.json_dict(),
        "proper_times": {
            "leg_a": t_a.literal(),
            "leg_c": t_c.literal(),
            "inertial_b": t_b.literal(),
        },
        "outcome": label,
    }
    _maybe_write_json(args, report)
    return 0


def cmd_crosscheck(args) -> int:
    started = time.monotonic()
    model, descriptor = _resolve_model(args)
    report = crosscheck_characterization(
        model, args.n, args.seed, keep_records=args.records
    )
    elapsed = time.monotonic() - started
    print(
        f"{report.agreements}/{report.n} sampled situations agree with the "
        f"unit-vector triple classification ({elapsed:.2f} s)"
    )
    payload = {
        "version": __version__,
        "model": descriptor,
        "crosscheck": report.json_dict(),
    }
    _maybe_write_json(args, payload)
    return 0 if report.all_agree else 1


def cmd_classify(args) -> int:
    model, descriptor = _resolve_model(args)
    sphere = minkowski_sphere(model, model.reference())
    label = classify_ms(model, model.reference())
    print(f"Minkowski sphere of the reference observer: {label.value}")
    print(f"surface: {type(sphere.surface).__name__}")
    report = {
        "version": __version__,
        "model": descriptor,
        "ms_class": label.value,
    }
    _maybe_write_json(args, report)
    return 0


def cmd_models(args) -> int:
    for name in MODEL_NAMES:
        print(name)
    return 0


def _maybe_write_json(args, payload) -> None:
    path = getattr(args, "json", None)
    if not path:
        return
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    with open(path, "w") as handle:
        handle.write(text)


def _add_model_args(parser):
    parser.add_argument("--model", choices=MODEL_NAMES, help="named model")
    parser.add_argument("--spec", help="model spec file (JSON)")
    parser.add_argument("--d", type=int, default=3, help="spacetime dimension")
    parser.add_argument("--b", help="thm55 shape parameter b (field literal)")
    parser.add_argument("--c", help="thm55 shape parameter c (field literal)")
    parser.add_argument("--json", help="write a JSON report to this path")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinax",
        description="exact axiom checks and twin-paradox verdicts for "
        "first-order kinematics models",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check axioms against a model")
    _add_model_args(check)
    check.add_argument("--axioms", required=True,
                       help="comma-separated axiom or system names")
    check.add_argument("--mode", choices=("exact", "sample"), default="exact")
    check.add_argument("--samples", type=int, default=1000)
    check.set_defaults(func=cmd_check)

    scenario = sub.add_parser("scenario", help="evaluate an explicit twin scenario")
    _add_model_args(scenario)
    scenario.add_argument("--file", required=True, help="scenario file (JSON)")
    scenario.set_defaults(func=cmd_scenario)

    crosscheck = sub.add_parser(
        "crosscheck",
        help="sampled agreement of proper-time ordering with triple class",
    )
    _add_model_args(crosscheck)
    crosscheck.add_argument("--n", type=int, default=1000)
    crosscheck.add_argument("--records", action="store_true",
                            help="keep per-sample records in the JSON report")
    crosscheck.set_defaults(func=cmd_crosscheck)

    classify = sub.add_parser("classify", help="classify the Minkowski sphere")
    _add_model_args(classify)
    classify.set_defaults(func=cmd_classify)

    models = sub.add_parser("models", help="list named models")
    models.set_defaults(func=cmd_models)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
