"""Command-line front end.

Subcommands:

  classify   read a motion description, print its canonical class as JSON
  compose    read a motion description, print its affine form as JSON
  triples    build both mirror sequences carrying one triple onto another
  iterate    tabulate an orbit of a motion as CSV or JSON
  example    print the worked composite-motion report as JSON

Motion descriptions are JSON documents with a "kind" field: rotation
(point, dir, angle), translation (v), reflection (normal, offset),
inversion (center), or sequence (steps, applied in listed order).  Angles
may be numbers or the tokens "pi", "-pi", "pi/6" and so on.  Exit status is
0 on success, 2 for malformed input, 3 for violated geometric preconditions.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from .classify import (
    GlideReflection,
    Identity,
    Inversion,
    MotionClass,
    Reflection,
    Rotation,
    RotaryReflection,
    Screw,
    Translation,
    classify,
)
from .construct import TriplePair, second_motion, three_reflections
from .errors import (
    CollinearPoints,
    DegenerateSource,
    GeometryError,
    NotCongruent,
)
from .example import DEFAULT_ITERATES, analyze, iterate
from .geom import DEFAULT_TOL, Line3, Plane, PointTriple, Tolerance, as_vec3
from .motion import (
    AffineIsometry,
    apply,
    identity,
    plane_reflection,
    rotation_about_axis,
    seq_to_affine,
    then,
    translation,
)

_ANGLE_TOKEN = re.compile(r"([+-]?)pi(?:/([0-9]+))?\Z")


class SpecError(ValueError):
    """Malformed or inconsistent input document."""


def parse_angle(value) -> float:
    """Angle from a JSON number or a pi-token string like "pi/6" or "-pi"."""
    if isinstance(value, bool):
        raise SpecError("angle must be a number or a pi token")
    if isinstance(value, (int, float)):
        angle = float(value)
        if not np.isfinite(angle):
            raise SpecError("angle must be finite")
        return angle
    if isinstance(value, str):
        match = _ANGLE_TOKEN.match(value.strip())
        if match:
            sign = -1.0 if match.group(1) == "-" else 1.0
            denom = int(match.group(2)) if match.group(2) else 1
            if denom == 0:
                raise SpecError("pi token denominator must be nonzero")
            return sign * np.pi / denom
    raise SpecError(f"cannot parse angle {value!r}")


def _vec_field(doc: dict, key: str):
    if key not in doc:
        raise SpecError(f"missing field {key!r}")
    try:
        return as_vec3(doc[key])
    except ValueError as exc:
        raise SpecError(f"field {key!r}: {exc}") from exc


def _num_field(doc: dict, key: str) -> float:
    if key not in doc or isinstance(doc[key], bool) or not isinstance(doc[key], (int, float)):
        raise SpecError(f"field {key!r} must be a number")
    return float(doc[key])


def motion_from_spec(doc) -> AffineIsometry:
    """Affine motion described by a MotionSpec document."""
    if not isinstance(doc, dict):
        raise SpecError("motion description must be a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "rotation":
            return rotation_about_axis(
                _vec_field(doc, "point"),
                _vec_field(doc, "dir"),
                parse_angle(doc.get("angle", None)),
            )
        if kind == "translation":
            return translation(_vec_field(doc, "v"))
        if kind == "reflection":
            return plane_reflection(Plane(_vec_field(doc, "normal"), _num_field(doc, "offset")))
        if kind == "inversion":
            return AffineIsometry(-np.eye(3), 2.0 * _vec_field(doc, "center"))
        if kind == "sequence":
            steps = doc.get("steps")
            if not isinstance(steps, list) or not steps:
                raise SpecError("sequence needs a nonempty list under 'steps'")
            out = identity()
            for entry in steps:
                out = then(out, motion_from_spec(entry))
            return out
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown motion kind {kind!r}")


def triple_from_spec(doc, tol: Tolerance) -> PointTriple:
    """PointTriple from a TripleSpec document {"A": ..., "B": ..., "C": ...}."""
    if not isinstance(doc, dict):
        raise SpecError("triple description must be a JSON object")
    a = _vec_field(doc, "A")
    b = _vec_field(doc, "B")
    c = _vec_field(doc, "C")
    try:
        return PointTriple(a, b, c, tol)
    except CollinearPoints as exc:
        raise SpecError("triple points are collinear") from exc


def _load_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON in {path}: {exc}") from exc


def _floats(v) -> list[float]:
    return [float(x) for x in v]


def _plane_json(p: Plane) -> dict:
    return {"normal": _floats(p.normal), "offset": float(p.offset)}


def _line_json(line: Line3) -> dict:
    return {"point": _floats(line.point), "dir": _floats(line.direction)}


def class_to_json(record: MotionClass) -> dict:
    if isinstance(record, Identity):
        return {"class": "identity"}
    if isinstance(record, Translation):
        return {"class": "translation", "v": _floats(record.v)}
    if isinstance(record, Rotation):
        return {"class": "rotation", "axis": _line_json(record.axis), "angle": float(record.angle)}
    if isinstance(record, Screw):
        return {
            "class": "screw",
            "axis": _line_json(record.axis),
            "angle": float(record.angle),
            "slide": _floats(record.slide),
        }
    if isinstance(record, Reflection):
        return {"class": "reflection", "mirror": _plane_json(record.mirror)}
    if isinstance(record, GlideReflection):
        return {
            "class": "glide_reflection",
            "mirror": _plane_json(record.mirror),
            "slide": _floats(record.slide),
        }
    if isinstance(record, Inversion):
        return {"class": "inversion", "center": _floats(record.center)}
    if isinstance(record, RotaryReflection):
        return {
            "class": "rotary_reflection",
            "mirror": _plane_json(record.mirror),
            "center": _floats(record.center),
            "angle": float(record.angle),
        }
    raise SpecError(f"unknown class record {record!r}")


def motion_class_from_json(doc: dict) -> MotionClass:
    """Inverse of class_to_json, so emitted classifications can be reloaded."""
    if not isinstance(doc, dict):
        raise SpecError("class document must be a JSON object")
    name = doc.get("class")
    try:
        if name == "identity":
            return Identity()
        if name == "translation":
            return Translation(v=_vec_field(doc, "v"))
        if name == "rotation":
            return Rotation(axis=_line_from_json(doc.get("axis")), angle=_num_field(doc, "angle"))
        if name == "screw":
            return Screw(
                axis=_line_from_json(doc.get("axis")),
                angle=_num_field(doc, "angle"),
                slide=_vec_field(doc, "slide"),
            )
        if name == "reflection":
            return Reflection(mirror=_plane_from_json(doc.get("mirror")))
        if name == "glide_reflection":
            return GlideReflection(
                mirror=_plane_from_json(doc.get("mirror")), slide=_vec_field(doc, "slide")
            )
        if name == "inversion":
            return Inversion(center=_vec_field(doc, "center"))
        if name == "rotary_reflection":
            return RotaryReflection(
                mirror=_plane_from_json(doc.get("mirror")),
                center=_vec_field(doc, "center"),
                angle=_num_field(doc, "angle"),
            )
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown class name {name!r}")


def _plane_from_json(doc) -> Plane:
    if not isinstance(doc, dict):
        raise SpecError("plane document must be a JSON object")
    return Plane(_vec_field(doc, "normal"), _num_field(doc, "offset"))


def _line_from_json(doc) -> Line3:
    if not isinstance(doc, dict):
        raise SpecError("line document must be a JSON object")
    return Line3(_vec_field(doc, "point"), _vec_field(doc, "dir"))


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _tolerance(args) -> Tolerance:
    if args.tol is None:
        return DEFAULT_TOL
    try:
        return Tolerance(eps_len=args.tol)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def cmd_classify(args) -> int:
    tol = _tolerance(args)
    motion = motion_from_spec(_load_json(args.input))
    _emit(class_to_json(classify(motion, tol)))
    return 0


def cmd_compose(args) -> int:
    _tolerance(args)
    motion = motion_from_spec(_load_json(args.input))
    _emit(
        {
            "linear": _floats(np.asarray(motion.linear).reshape(9)),
            "translation": _floats(motion.translation),
        }
    )
    return 0


def cmd_triples(args) -> int:
    tol = _tolerance(args)
    src = triple_from_spec(_load_json(args.src), tol)
    dst = triple_from_spec(_load_json(args.dst), tol)
    pair = TriplePair(src, (dst.a, dst.b, dst.c))
    first = three_reflections(pair, tol)
    second = second_motion(first, dst, tol)
    first_motion = seq_to_affine(first)
    partner = seq_to_affine(second)
    residuals = []
    for source_point, target in zip(src.points(), pair.dst):
        residuals.append(float(np.linalg.norm(apply(first_motion, source_point) - target)))
        residuals.append(float(np.linalg.norm(apply(partner, source_point) - target)))
    _emit(
        {
            "mirrors": [_plane_json(p) for p in first.planes],
            "fourth_mirror": _plane_json(second.planes[3]),
            "first_class": class_to_json(classify(first_motion, tol)),
            "second_class": class_to_json(classify(partner, tol)),
            "self_check": bool(max(residuals) <= tol.eps_len),
        }
    )
    return 0


def _parse_start(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise SpecError("start point must be 'x,y,z'")
    try:
        return as_vec3([float(part) for part in parts])
    except ValueError as exc:
        raise SpecError(f"start point: {exc}") from exc


def cmd_iterate(args) -> int:
    _tolerance(args)
    motion = motion_from_spec(_load_json(args.input))
    start = _parse_start(args.start)
    if args.count < 0:
        raise SpecError("count must be nonnegative")
    points = iterate(motion, start, args.count)
    if args.format == "json":
        _emit({"points": [_floats(p) for p in points]})
        return 0
    lines = ["i,x,y,z"]
    for i, p in enumerate(points):
        lines.append(f"{i},{float(p[0])!r},{float(p[1])!r},{float(p[2])!r}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_example(args) -> int:
    tol = _tolerance(args)
    report = analyze(tol)
    _emit(
        {
            "b": _floats(report.b),
            "b_prime": _floats(report.b_prime),
            "axis_k": _line_json(report.axis_k),
            "n_direction": _floats(report.n_direction),
            "theta": float(report.theta),
            "m": _floats(report.m),
            "residual": _floats(report.residual),
            "p": _floats(report.p),
            "screw_axis_h": _line_json(report.screw_axis_h),
            "bisector_normal_ab": _floats(report.bisector_normal_ab),
            "bisector_normal_bb_prime": _floats(report.bisector_normal_bb_prime),
            "residual_dot_n": float(report.residual_dot_n()),
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trimirror", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--tol",
        type=float,
        default=None,
        help="override the length tolerance eps_len (default 1e-9)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="canonical class of a motion")
    p.add_argument("--input", default="-", help="motion JSON file, or - for stdin")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compose", help="affine form of a motion")
    p.add_argument("--input", default="-", help="motion JSON file, or - for stdin")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("triples", help="mirror sequences carrying one triple onto another")
    p.add_argument("--src", required=True, help="source triple JSON file")
    p.add_argument("--dst", required=True, help="destination triple JSON file")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("iterate", help="tabulate an orbit of a motion")
    p.add_argument("--input", default="-", help="motion JSON file, or - for stdin")
    p.add_argument("--start", required=True, help="start point as 'x,y,z'")
    p.add_argument("--count", type=int, default=DEFAULT_ITERATES, help="number of applications")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("example", help="worked composite-motion report")
    p.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotCongruent, DegenerateSource) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
