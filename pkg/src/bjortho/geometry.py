"""Origin-in-convex-hull tests for finite planar point sets.

Two independent routes decide whether 0 lies in (an eps-fattened copy of)
the convex hull of finitely many scalars:

* ``contains_origin`` -- the production route: interval test on the real
  line, a 1-d projection test for collinear sets, and an angular-gap test
  otherwise (the origin is outside the hull iff all points fit in an open
  half-plane).
* ``contains_origin_bruteforce`` -- the oracle route: enumerate singletons,
  pairs and triples and solve each small barycentric system; by
  Caratheodory three points suffice in the plane.

The fattening is applied after normalizing by the max modulus, so both
tests are scale-free: a point within ``eps * max|z|`` of the hull counts as
inside.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations

from .core import DomainError, SizeError

_BRUTE_MAX_POINTS = 25
_COEFF_SLACK = 1e-14  # absorbs Cramer rounding when eps = 0


@dataclass(frozen=True)
class HullQuery:
    points: tuple[complex, ...]
    eps: float = 0.0

    def __post_init__(self):
        pts = tuple(complex(z) for z in self.points)
        if len(pts) == 0:
            raise DomainError("hull query needs at least one point")
        for z in pts:
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise DomainError("hull points must be finite")
        if not (math.isfinite(self.eps) and self.eps >= 0.0):
            raise DomainError("eps must be finite and >= 0")
        object.__setattr__(self, "points", pts)


def contains_origin(q: HullQuery) -> bool:
    """True iff 0 lies within eps*max|z| of conv(points)."""
    pts = q.points
    scale = max(abs(z) for z in pts)
    if scale == 0.0:
        return True
    eps_abs = q.eps * scale
    if any(abs(z) <= eps_abs for z in pts):
        # a hull vertex already sits at the origin (to tolerance)
        return True

    if all(z.imag == 0.0 for z in pts):
        res = [z.real for z in pts]
        return min(res) <= eps_abs and max(res) >= -eps_abs

    # collinear sets fall through to a 1-d projection test: the angular-gap
    # test is ill-conditioned when the hull is a segment through the origin
    anchor = max(pts, key=abs)
    u = anchor / abs(anchor)
    perp = [abs((u.conjugate() * z).imag) for z in pts]
    if max(perp) <= eps_abs:
        proj = [(u.conjugate() * z).real for z in pts]
        return min(proj) <= eps_abs and max(proj) >= -eps_abs

    angles = sorted(cmath.phase(z) for z in pts)
    gaps = [b - a for a, b in zip(angles, angles[1:])]
    gaps.append(angles[0] + 2.0 * math.pi - angles[-1])
    # an angular gap of pi + delta leaves the origin outside by roughly
    # delta * max|z|, so reusing eps as the angular guard keeps the verdict
    # consistent with the distance-eps fattening
    return max(gaps) <= math.pi + q.eps


def contains_origin_bruteforce(q: HullQuery) -> bool:
    """Independent oracle: barycentric solves over all subsets of size <= 3."""
    pts = q.points
    if len(pts) > _BRUTE_MAX_POINTS:
        raise SizeError(
            f"brute-force hull test capped at {_BRUTE_MAX_POINTS} points, got {len(pts)}"
        )
    scale = max(abs(z) for z in pts)
    if scale == 0.0:
        return True
    eps_abs = q.eps * scale
    coeff_slack = max(q.eps, _COEFF_SLACK)

    if any(abs(z) <= eps_abs for z in pts):
        return True
    for z1, z2 in combinations(pts, 2):
        if _segment_distance(z1, z2) <= eps_abs:
            return True
    for z1, z2, z3 in combinations(pts, 3):
        if _triangle_hit(z1, z2, z3, coeff_slack):
            return True
    return False


def _segment_distance(z1: complex, z2: complex) -> float:
    """Distance from the origin to the segment [z1, z2]."""
    d = z2 - z1
    dd = (d.conjugate() * d).real
    if dd == 0.0:
        return abs(z1)
    t = -(d.conjugate() * z1).real / dd
    t = min(1.0, max(0.0, t))
    return abs(z1 + t * d)


def _triangle_hit(z1: complex, z2: complex, z3: complex, coeff_slack: float) -> bool:
    """Solve l1*(z1-z3) + l2*(z2-z3) = -z3 and accept nonnegative coefficients.

    Degenerate triangles are skipped: their hull is a segment and the pair
    enumeration already covers it.
    """
    a, b = z1 - z3, z2 - z3
    det = a.real * b.imag - a.imag * b.real
    limit = max(abs(a), abs(b))
    if abs(det) <= 1e-15 * limit * limit:
        return False
    rhs = -z3
    l1 = (rhs.real * b.imag - rhs.imag * b.real) / det
    l2 = (a.real * rhs.imag - a.imag * rhs.real) / det
    l3 = 1.0 - l1 - l2
    return min(l1, l2, l3) >= -coeff_slack
