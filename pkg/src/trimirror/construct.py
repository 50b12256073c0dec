"""Realizing a triple correspondence by at most three plane reflections.

Given congruent noncollinear triples (A, B, C) and (A', B', C'), exactly one
motion of each orientation maps the first onto the second.  `three_reflections`
builds the orientation-reversing one as a sequence of three mirrors, moving
one point into place per stage; `second_motion` appends the destination
triple's own plane to obtain the orientation-preserving partner.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSource, NotCongruent
from .geom import (
    DEFAULT_TOL,
    PointTriple,
    Tolerance,
    Vec3,
    as_vec3,
    collinear,
    perpendicular_bisector_plane,
    plane_through_points,
    points_coincide,
    reflect_point,
    _frozen,
)
from .motion import ReflectionSequence


@dataclass(frozen=True, eq=False)
class TriplePair:
    """A source PointTriple and the three points it should be carried onto."""

    src: PointTriple
    dst: tuple[Vec3, Vec3, Vec3]

    def __post_init__(self) -> None:
        if not isinstance(self.src, PointTriple):
            raise ValueError("src must be a PointTriple")
        dst = tuple(self.dst)
        if len(dst) != 3:
            raise ValueError("dst must hold exactly three points")
        object.__setattr__(self, "dst", tuple(_frozen(as_vec3(p)) for p in dst))


def _points_of(triple) -> tuple[Vec3, Vec3, Vec3]:
    if isinstance(triple, PointTriple):
        return triple.points()
    a, b, c = triple
    return as_vec3(a), as_vec3(b), as_vec3(c)


def congruent_triples(src, dst, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether corresponding pairwise distances agree within tol.eps_len.

    Either argument may be a PointTriple or a plain sequence of three points.
    """
    a, b, c = _points_of(src)
    a2, b2, c2 = _points_of(dst)
    for p, q, p2, q2 in ((a, b, a2, b2), (a, c, a2, c2), (b, c, b2, c2)):
        d = float(np.linalg.norm(q - p))
        d2 = float(np.linalg.norm(q2 - p2))
        if abs(d - d2) > tol.eps_len:
            return False
    return True


def three_reflections(pair: TriplePair, tol: Tolerance = DEFAULT_TOL) -> ReflectionSequence:
    """Mirror planes (alpha, beta, gamma) whose composite carries src onto dst.

    The walk fixes one point per stage.  alpha moves A onto A'; beta then
    moves the image of B onto B' without disturbing A'; gamma finishes C.
    Whenever a point is already in place the corresponding mirror degenerates
    to a plane through the points it must not move, so the sequence always
    has exactly three entries and the composite motion is always
    orientation-reversing.

    Raises DegenerateSource if the source triple fails the collinearity check
    at this tolerance, NotCongruent if the distance pattern does not match.
    """
    a, b, c = pair.src.points()
    a2, b2, c2 = pair.dst
    if collinear(a, b, c, tol):
        raise DegenerateSource("source triple is collinear at this tolerance")
    if not congruent_triples(pair.src, pair.dst, tol):
        raise NotCongruent("triples are not congruent at this tolerance")

    if points_coincide(a, a2, tol):
        alpha = plane_through_points(a, b, c, tol)
    else:
        alpha = perpendicular_bisector_plane(a, a2, tol)

    b_stage = reflect_point(alpha, b)
    if points_coincide(b_stage, b2, tol):
        # B is already in place; reflect in a plane through A' and B'.  When C
        # happens to lie on line(A', B') that plane would be underdetermined,
        # but in that case the source plane itself contains both images.
        if collinear(a2, b2, c, tol):
            beta = plane_through_points(a, b, c, tol)
        else:
            beta = plane_through_points(a2, b2, c, tol)
    else:
        beta = perpendicular_bisector_plane(b_stage, b2, tol)

    c_stage = reflect_point(beta, reflect_point(alpha, c))
    if points_coincide(c_stage, c2, tol):
        gamma = plane_through_points(a2, b2, c2, tol)
    else:
        gamma = perpendicular_bisector_plane(c_stage, c2, tol)

    return ReflectionSequence((alpha, beta, gamma))


def second_motion(
    seq: ReflectionSequence, dst, tol: Tolerance = DEFAULT_TOL
) -> ReflectionSequence:
    """Orientation-preserving partner of `seq` for the given destination triple.

    Appends the plane of the destination triple, which fixes all three target
    points, so the four-mirror sequence agrees with `seq` on the triple while
    reversing the handedness of everything off that plane.  `dst` may be a
    PointTriple or any three noncollinear points.
    """
    if not isinstance(dst, PointTriple):
        p, q, r = dst
        dst = PointTriple(p, q, r, tol)
    closing = plane_through_points(dst.a, dst.b, dst.c, tol)
    return ReflectionSequence(seq.planes + (closing,))
