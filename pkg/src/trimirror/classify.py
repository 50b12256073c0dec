"""Canonical-form classification of rigid motions.

Every motion of 3-space is exactly one of: the identity, a translation, a
rotation, a screw, a reflection, a glide reflection, a point inversion, or a
rotary reflection.  `classify_fixed_point` sorts out the fixed-point cases by
probing how the motion moves a small frame of points near the fixed one;
`classify` handles arbitrary motions by splitting off the translation part
and relocating the fixed-point answer.  `reconstruct` rebuilds a motion from
its record, closing the loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    InvalidClassParameters,
    NotAFixedPoint,
    ParallelDistinctMirrors,
    ParallelPlanes,
    ProbeExhausted,
)
from .geom import (
    DEFAULT_TOL,
    Line3,
    Plane,
    Tolerance,
    Vec3,
    as_vec3,
    collinear,
    intersect_planes,
    perpendicular_bisector_plane,
    planes_equal,
    points_coincide,
    _frozen,
)
from .motion import (
    AffineIsometry,
    Motion,
    OrientationParity,
    apply,
    identity,
    iso_equal,
    orientation,
    plane_reflection,
    rotation_about_axis,
    then,
    translation,
    _as_affine,
)

# Validation slack for reconstruct(): parameter records are expected to come
# from the classifiers, so only outright inconsistencies are rejected.
_PARAM_EPS = 1e-9


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True, eq=False)
class Translation:
    v: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", _frozen(as_vec3(self.v)))


@dataclass(frozen=True, eq=False)
class Rotation:
    """Rotation by `angle` about `axis`, right-handed about the canonical direction."""

    axis: Line3
    angle: float


@dataclass(frozen=True, eq=False)
class Screw:
    """Rotation about `axis` combined with the parallel translation `slide`."""

    axis: Line3
    angle: float
    slide: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "slide", _frozen(as_vec3(self.slide)))


@dataclass(frozen=True, eq=False)
class Reflection:
    mirror: Plane


@dataclass(frozen=True, eq=False)
class GlideReflection:
    """Reflection in `mirror` combined with the in-plane translation `slide`."""

    mirror: Plane
    slide: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "slide", _frozen(as_vec3(self.slide)))


@dataclass(frozen=True, eq=False)
class Inversion:
    center: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _frozen(as_vec3(self.center)))


@dataclass(frozen=True, eq=False)
class RotaryReflection:
    """Reflection in `mirror` combined with rotation by `angle` about the
    axis through `center` perpendicular to the mirror; the sign of `angle`
    is right-handed about the mirror's canonical normal."""

    mirror: Plane
    center: Vec3
    angle: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _frozen(as_vec3(self.center)))


MotionClass = Union[
    Identity,
    Translation,
    Rotation,
    Screw,
    Reflection,
    GlideReflection,
    Inversion,
    RotaryReflection,
]


@dataclass(frozen=True, eq=False)
class ProbeWitness:
    """A probe A with images B = m(A), B' = m(B), and which degeneracy it hit."""

    a: Vec3
    b: Vec3
    b_prime: Vec3
    case_tag: str

    def __post_init__(self) -> None:
        for name in ("a", "b", "b_prime"):
            object.__setattr__(self, name, _frozen(as_vec3(getattr(self, name))))


_PROBE_DIRECTIONS = tuple(
    np.array(w, dtype=float)
    for w in (
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (0.0, 0.0, 1.0),
        (1.0, 1.0, 0.0),
        (0.0, 1.0, 1.0),
        (1.0, 0.0, 1.0),
    )
)


def _canonical_angle(angle: float) -> float:
    """Wrap into (-pi, pi], sending the seam to +pi."""
    wrapped = float(np.arctan2(np.sin(angle), np.cos(angle)))
    if wrapped <= -np.pi:
        wrapped = np.pi
    return wrapped


def _angle_about(linear: np.ndarray, direction: Vec3) -> float:
    """Signed rotation angle of an orthogonal `linear` about the unit `direction`."""
    cos = float(np.clip((np.trace(linear) - 1.0) / 2.0, -1.0, 1.0))
    skew = 0.5 * np.array(
        [
            linear[2, 1] - linear[1, 2],
            linear[0, 2] - linear[2, 0],
            linear[1, 0] - linear[0, 1],
        ]
    )
    return _canonical_angle(float(np.arctan2(float(skew @ direction), cos)))


def find_probe(m: Motion, c, tol: Tolerance = DEFAULT_TOL) -> ProbeWitness:
    """A probe near the fixed point c that the motion visibly moves.

    Candidates are c + s*w for the six directions e1, e2, e3, e1+e2, e2+e3,
    e1+e3 with s = max(1, |c|); the first candidate that is moved by at least
    eps_len and stays noncollinear with its image and c is returned.  For any
    actual isometry other than the identity at least one candidate works, so
    ProbeExhausted signals inputs far outside the supported scale.
    """
    c = as_vec3(c)
    s = max(1.0, float(np.linalg.norm(c)))
    for w in _PROBE_DIRECTIONS:
        a = c + s * w
        b = apply(m, a)
        if points_coincide(a, b, tol) or collinear(a, b, c, tol):
            continue
        b_prime = apply(m, b)
        tag = "half-turn" if points_coincide(b_prime, a, tol) else "generic"
        return ProbeWitness(a, b, b_prime, tag)
    raise ProbeExhausted("no probe witness near the fixed point")


def rotation_from_plane_pair(
    alpha: Plane, beta: Plane, tol: Tolerance = DEFAULT_TOL
) -> Union[Identity, Rotation]:
    """The composite reflect-in-alpha-then-beta, classified.

    Coincident mirrors cancel to the identity.  Otherwise the mirrors must
    meet, and the product is the rotation about their intersection line by
    twice the dihedral angle, signed right-handed about the line's canonical
    direction.  Parallel distinct mirrors compose to a translation instead
    and are rejected with ParallelDistinctMirrors.
    """
    if planes_equal(alpha, beta, tol):
        return Identity()
    try:
        axis = intersect_planes(alpha, beta, tol)
    except ParallelPlanes as exc:
        raise ParallelDistinctMirrors(
            "parallel distinct mirrors compose to a translation, not a rotation"
        ) from exc
    composite = then(plane_reflection(alpha), plane_reflection(beta))
    angle = _angle_about(composite.linear, axis.direction)
    return Rotation(axis=axis, angle=angle)


def _widest_cross(directions: list) -> Union[Vec3, None]:
    """Unit cross product of the best-separated pair among unit `directions`.

    Returns None when no pair is usefully independent.  Working with unit
    vectors keeps the selection scale-free: near a degenerate boundary the
    candidate vectors are all short, but their directions stay accurate, and
    normalizing first stops the cross products from underflowing the
    conditioning contest.
    """
    best = None
    best_norm = 0.0
    for i in range(len(directions)):
        for j in range(i + 1, len(directions)):
            n = np.cross(directions[i], directions[j])
            size = float(np.linalg.norm(n))
            if size > best_norm:
                best, best_norm = n, size
    if best is None or best_norm <= 1e-12:
        return None
    return best / best_norm


def _mirror_through_midpoints(m: Motion, c: Vec3, s: float, tol: Tolerance) -> Plane:
    """Canonical mirror of an orientation-reversing motion fixing c.

    For such a motion the midpoint of X and m(X) always lands on the mirror
    of its reflection factor, so the offsets of those midpoints from c span
    the mirror plane.
    """
    directions = []
    for w in _PROBE_DIRECTIONS:
        x = c + s * w
        offset = 0.5 * (x + apply(m, x)) - c
        length = float(np.linalg.norm(offset))
        if length > 1e-10 * s:
            directions.append(offset / length)
    normal = _widest_cross(directions)
    if normal is None:
        raise ProbeExhausted("midpoint offsets do not span a mirror plane")
    return Plane(normal, float(normal @ c))


def _axis_direction_from_displacements(m: Motion, c: Vec3, s: float) -> Vec3:
    """Unit axis direction of an orientation-preserving motion fixing c.

    Every displacement X to m(X) lies in the plane perpendicular to the
    rotation axis, whatever the angle, so crossing the two best-separated
    displacement directions recovers the axis even when the angle is far too
    small for bisector planes to intersect reliably.
    """
    directions = []
    for w in _PROBE_DIRECTIONS:
        x = c + s * w
        d = apply(m, x) - x
        length = float(np.linalg.norm(d))
        if length > 1e-10 * s:
            directions.append(d / length)
    axis = _widest_cross(directions)
    if axis is None:
        raise ProbeExhausted("probe displacements do not isolate a rotation axis")
    return axis


def classify_fixed_point(m: Motion, c, tol: Tolerance = DEFAULT_TOL) -> MotionClass:
    """Canonical form of a motion known to fix the point c.

    The possible answers are Identity, Rotation (axis through c), Reflection
    (mirror through c), Inversion (center c), and RotaryReflection (center c).
    Raises NotAFixedPoint when m moves c by more than eps_len.

    Near-degenerate parameters collapse to the simpler class: rotation angles
    within eps_angle of zero give Identity, rotary angles within eps_angle of
    zero or pi give Reflection or Inversion.
    """
    c = as_vec3(c)
    if not points_coincide(apply(m, c), c, tol):
        raise NotAFixedPoint("the supplied point is moved by the motion")
    if iso_equal(m, identity(), tol):
        return Identity()

    s = max(1.0, float(np.linalg.norm(c)))
    if all(
        points_coincide(apply(m, c + s * e), c - s * e, tol) for e in np.eye(3)
    ):
        return Inversion(center=c)

    if orientation(m) is OrientationParity.PROPER:
        # The axis runs through the fixed point; its direction comes from the
        # probe displacements, which sweep the plane perpendicular to it.
        axis = Line3(c, _axis_direction_from_displacements(m, c, s))
        angle = _angle_about(_as_affine(m).linear, axis.direction)
        if abs(angle) <= tol.eps_angle:
            return Identity()
        return Rotation(axis=axis, angle=angle)

    witness = find_probe(m, c, tol)
    a, b = witness.a, witness.b

    if witness.case_tag == "half-turn":
        # B' = A: swapping a single pair while fixing c is a pure reflection.
        return Reflection(mirror=perpendicular_bisector_plane(a, b, tol))

    mirror = _mirror_through_midpoints(m, c, s, tol)
    # Dividing out the mirror leaves the rotation factor, which shares axis c.
    residue = classify_fixed_point(then(m, plane_reflection(mirror)), c, tol)
    if isinstance(residue, Identity):
        return Reflection(mirror=mirror)
    sign = 1.0 if float(residue.axis.direction @ mirror.normal) >= 0.0 else -1.0
    angle = _canonical_angle(sign * residue.angle)
    if abs(angle) <= tol.eps_angle:
        return Reflection(mirror=mirror)
    if abs(abs(angle) - np.pi) <= tol.eps_angle:
        return Inversion(center=c)
    return RotaryReflection(mirror=mirror, center=c, angle=angle)


def split_translation(u, splitter) -> tuple[Vec3, Vec3]:
    """Decompose u = n + v with n along the splitter and v across it.

    The splitter may be a Line3 (n parallel to it), a Plane (n along the
    normal), or a bare direction vector.
    """
    u = as_vec3(u)
    if isinstance(splitter, Line3):
        d = splitter.direction
    elif isinstance(splitter, Plane):
        d = splitter.normal
    else:
        d = as_vec3(splitter)
        length = float(np.linalg.norm(d))
        if length <= 1e-12:
            raise ValueError("splitter direction must be nonzero")
        d = d / length
    n = (u @ d) * d
    return n, u - n


def _relocate_axis(linear: np.ndarray, v: Vec3, d: Vec3) -> Vec3:
    """Point x with (I - linear) x = v, for v perpendicular to the axis d.

    Restricted to the plane perpendicular to d the map I - linear is
    invertible whenever the rotation angle is nonzero, so a 2x2 solve in an
    orthonormal basis of that plane pins the relocated axis.
    """
    seed = np.eye(3)[int(np.argmin(np.abs(d)))]
    p = np.cross(d, seed)
    p = p / float(np.linalg.norm(p))
    q = np.cross(d, p)
    shifted = np.eye(3) - linear
    system = np.array([[p @ shifted @ p, p @ shifted @ q], [q @ shifted @ p, q @ shifted @ q]])
    rhs = np.array([p @ v, q @ v])
    coeffs = np.linalg.solve(system, rhs)
    return coeffs[0] * p + coeffs[1] * q


def classify(m: Motion, tol: Tolerance = DEFAULT_TOL) -> MotionClass:
    """Canonical form of an arbitrary motion.

    Splits m into its linear part (which fixes the origin) plus the
    translation u = m(0), classifies the linear part, then recombines: the
    component of u along the fixed axis or mirror survives as slide, while
    the perpendicular component relocates the axis, mirror, or center.
    """
    m = _as_affine(m)
    u = m.translation
    linear_motion = AffineIsometry(m.linear, np.zeros(3))
    at_origin = classify_fixed_point(linear_motion, np.zeros(3), tol)

    if isinstance(at_origin, Identity):
        if float(np.linalg.norm(u)) <= tol.eps_len:
            return Identity()
        return Translation(v=u)

    if isinstance(at_origin, Rotation):
        n, v = split_translation(u, at_origin.axis)
        foot = _relocate_axis(m.linear, v, at_origin.axis.direction)
        axis = Line3(foot, at_origin.axis.direction)
        if float(np.linalg.norm(n)) <= tol.eps_len:
            return Rotation(axis=axis, angle=at_origin.angle)
        return Screw(axis=axis, angle=at_origin.angle, slide=n)

    if isinstance(at_origin, Reflection):
        base = at_origin.mirror
        n, v = split_translation(u, base)
        mirror = Plane(base.normal, base.offset + 0.5 * float(base.normal @ n))
        if float(np.linalg.norm(v)) <= tol.eps_len:
            return Reflection(mirror=mirror)
        return GlideReflection(mirror=mirror, slide=v)

    if isinstance(at_origin, Inversion):
        return Inversion(center=at_origin.center + 0.5 * u)

    # Rotary reflection: the full motion still has exactly one fixed point,
    # and I - linear is invertible, so solve for it directly.
    center = np.linalg.solve(m.linear - np.eye(3), -u)
    base = at_origin.mirror
    return RotaryReflection(
        mirror=Plane(base.normal, float(base.normal @ center)),
        center=center,
        angle=at_origin.angle,
    )


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidClassParameters(message)


def reconstruct(record: MotionClass) -> AffineIsometry:
    """The affine motion described by a canonical-form record.

    Raises InvalidClassParameters when the record's fields contradict its
    class invariants (zero translation vector, slide not parallel to the
    axis, center off the mirror, and so on).
    """
    if isinstance(record, Identity):
        return identity()

    if isinstance(record, Translation):
        _require(float(np.linalg.norm(record.v)) > 0.0, "translation vector must be nonzero")
        return translation(record.v)

    if isinstance(record, Rotation):
        _require(np.isfinite(record.angle), "rotation angle must be finite")
        _require(
            1e-12 < abs(record.angle) <= np.pi + 1e-12,
            "rotation angle must be nonzero and in (-pi, pi]",
        )
        return rotation_about_axis(record.axis.point, record.axis.direction, record.angle)

    if isinstance(record, Screw):
        _require(np.isfinite(record.angle), "screw angle must be finite")
        _require(
            1e-12 < abs(record.angle) <= np.pi + 1e-12,
            "screw angle must be nonzero and in (-pi, pi]",
        )
        slide_len = float(np.linalg.norm(record.slide))
        _require(slide_len > 0.0, "screw slide must be nonzero")
        drift = float(np.linalg.norm(np.cross(record.slide, record.axis.direction)))
        _require(drift <= _PARAM_EPS * slide_len, "screw slide must be parallel to the axis")
        turn = rotation_about_axis(record.axis.point, record.axis.direction, record.angle)
        return then(turn, translation(record.slide))

    if isinstance(record, Reflection):
        return plane_reflection(record.mirror)

    if isinstance(record, GlideReflection):
        slide_len = float(np.linalg.norm(record.slide))
        _require(slide_len > 0.0, "glide slide must be nonzero")
        drift = abs(float(record.slide @ record.mirror.normal))
        _require(drift <= _PARAM_EPS * slide_len, "glide slide must be parallel to the mirror")
        return then(plane_reflection(record.mirror), translation(record.slide))

    if isinstance(record, Inversion):
        return AffineIsometry(-np.eye(3), 2.0 * record.center)

    if isinstance(record, RotaryReflection):
        _require(np.isfinite(record.angle), "rotary angle must be finite")
        _require(
            1e-12 < abs(record.angle) < np.pi - 1e-12,
            "rotary angle must avoid 0 and pi",
        )
        _require(
            abs(record.mirror.signed_distance(record.center)) <= _PARAM_EPS,
            "rotary center must lie on the mirror",
        )
        turn = rotation_about_axis(record.center, record.mirror.normal, record.angle)
        return then(plane_reflection(record.mirror), turn)

    raise InvalidClassParameters(f"unrecognized class record {record!r}")
