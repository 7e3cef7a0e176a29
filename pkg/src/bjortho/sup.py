"""Sup-norm criteria on atomic spaces: orthogonality, smoothness, symmetry.

On a finite atomic space with strictly positive weights the essential sup is
the max over atoms, and the continuous-function criteria reduce to statements
about the norm-attaining set

    M_f = { atoms a : |f(a)| = ||f||_inf },

computed here with a configurable relative band.  The rules:

* f perp g  iff  0 is in conv{ conj(f(a)) * g(a) : a in M_f }  (f != 0);
* f is smooth iff M_f is a single atom;
* f is left-symmetric iff f = 0, or M_f is a single atom and f vanishes
  on every other atom;
* f is right-symmetric iff M_f is every atom.

The zero function is orthogonal to everything, everything is orthogonal to
it, and it is both left- and right-symmetric; the nonzero criteria come from
the characterizations, the f = 0 conventions directly from the definition
||f + lambda*g|| >= ||f||.

Witness constructions follow the characterization proofs and are re-verified
by the oracle before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    FunctionVec,
    MeasureSpace,
    Side,
    SpaceKind,
    SymmetryVerdict,
    Tolerances,
    Verdict,
    Witness,
    WitnessLogicError,
    norm,
    sgn,
)
from .geometry import HullQuery, contains_origin
from .oracle import OracleVerdict, oracle_orthogonal

_KIND = "sup"


@dataclass(frozen=True)
class AttainSet:
    """Atoms within the relative attainment band of the sup norm."""

    indices: tuple[int, ...]
    threshold: float
    zero_function: bool = False


def attain_set(space: MeasureSpace, f: FunctionVec, tol: Tolerances = DEFAULT_TOL) -> AttainSet:
    space.check_aligned(f)
    mod = np.abs(f.values)
    top = float(np.max(mod))
    if top == 0.0:
        return AttainSet((), 0.0, True)
    threshold = top * (1.0 - tol.rel_attain)
    idx = tuple(int(i) for i in np.flatnonzero(mod >= threshold))
    return AttainSet(idx, threshold)


def _hull_points(f: FunctionVec, g: FunctionVec, indices) -> list[complex]:
    return [complex(np.conj(f.values[i]) * g.values[i]) for i in indices]


def bj_orthogonal_sup(
    space: MeasureSpace,
    f: FunctionVec,
    g: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
) -> Verdict:
    space.check_aligned(f, g)
    if f.is_zero:
        return Verdict(True, _KIND, {"zero_function": True})
    att = attain_set(space, f, tol)
    pts = _hull_points(f, g, att.indices)
    ortho = contains_origin(HullQuery(tuple(pts), tol.hull_eps))
    return Verdict(
        ortho,
        _KIND,
        {
            "attain_indices": list(att.indices),
            "attain_ids": [space.atom_ids[i] for i in att.indices],
            "threshold": att.threshold,
            "hull_points": [[z.real, z.imag] for z in pts],
        },
    )


def classify_sup(
    space: MeasureSpace, f: FunctionVec, tol: Tolerances = DEFAULT_TOL
) -> SymmetryVerdict:
    space.check_aligned(f)
    if f.is_zero:
        return SymmetryVerdict(False, True, True, _KIND, {"zero_function": True})
    att = attain_set(space, f, tol)
    mod = np.abs(f.values)
    top = float(np.max(mod))
    others = [i for i in range(space.dim) if i not in att.indices]
    vanishes_outside = all(mod[i] <= tol.rel_attain * top for i in others)
    smooth = len(att.indices) == 1
    left = smooth and vanishes_outside
    right = len(att.indices) == space.dim
    return SymmetryVerdict(
        smooth,
        left,
        right,
        _KIND,
        {
            "attain_indices": list(att.indices),
            "attain_ids": [space.atom_ids[i] for i in att.indices],
            "threshold": att.threshold,
            "vanishes_outside_attain": vanishes_outside,
        },
    )


def sup_asymmetry_witness(
    space: MeasureSpace,
    f: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
    side: Side = Side.LEFT,
) -> Witness:
    """Counterexample to the requested symmetry, from the proof recipes.

    Left: g = sgn(f(x2)) * indicator(x2) for an atom x2 with f(x2) != 0 away
    from (or secondary in) the attaining set; then f perp g but not g perp f.
    Right: extend f by ||f|| on a zero atom (case 1) or by -||f||*sgn(f(a))
    on a non-attaining atom (case 2); then g perp f but not f perp g.
    """
    side = Side(side)
    verdict = classify_sup(space, f, tol)
    kind = SpaceKind.sup()
    sup_f = norm(space, kind, f)
    att = attain_set(space, f, tol)
    mod = np.abs(f.values)

    if side is Side.LEFT:
        if verdict.is_left_symmetric:
            raise WitnessLogicError("f is left-symmetric; no witness exists")
        outside = [
            i
            for i in range(space.dim)
            if i not in att.indices and mod[i] > tol.rel_attain * sup_f
        ]
        if outside:
            x2 = max(outside, key=lambda i: mod[i])
            case = "nonzero-outside-attain"
        else:
            # f vanishes off M_f, so |M_f| >= 2: use a second attaining atom
            # (the two-support-functional configuration)
            x2 = att.indices[1]
            case = "second-attaining-atom"
        g = np.zeros(space.dim, dtype=np.complex128)
        g[x2] = sgn(f.values[x2])
        gvec = space.function(g)
        return _checked_witness(
            space, f, gvec, tol, "left_asymmetry", case, forward_holds=True
        )

    if verdict.is_right_symmetric:
        raise WitnessLogicError("f is right-symmetric; no witness exists")
    g = np.zeros(space.dim, dtype=np.complex128)
    for i in att.indices:
        g[i] = f.values[i]
    zero_atoms = np.flatnonzero(f.values == 0.0)
    if zero_atoms.size:
        a = int(zero_atoms[0])
        g[a] = sup_f
        case = "zero-atom-extension"
    else:
        non_attaining = [i for i in range(space.dim) if i not in att.indices]
        a = min(non_attaining, key=lambda i: mod[i])
        g[a] = -sup_f * sgn(f.values[a])
        case = "non-attaining-extension"
    gvec = space.function(g)
    return _checked_witness(
        space, f, gvec, tol, "right_asymmetry", case, forward_holds=False
    )


def _checked_witness(
    space: MeasureSpace,
    f: FunctionVec,
    g: FunctionVec,
    tol: Tolerances,
    kind_label: str,
    case: str,
    forward_holds: bool,
) -> Witness:
    """Verify both directions analytically and by the oracle before returning."""
    skind = SpaceKind.sup()
    forward = bj_orthogonal_sup(space, f, g, tol)
    reverse = bj_orthogonal_sup(space, g, f, tol)
    held, failed = (forward, reverse) if forward_holds else (reverse, forward)
    if not held.orthogonal or failed.orthogonal:
        raise WitnessLogicError(f"witness construction inconsistent ({case})")
    if forward_holds:
        o_hold = oracle_orthogonal(space, skind, f, g, tol)
        o_fail = oracle_orthogonal(space, skind, g, f, tol)
        holds, fails = "f_perp_g", "g_perp_f"
    else:
        o_hold = oracle_orthogonal(space, skind, g, f, tol)
        o_fail = oracle_orthogonal(space, skind, f, g, tol)
        holds, fails = "g_perp_f", "f_perp_g"
    if o_hold.verdict is OracleVerdict.NOT_ORTHOGONAL:
        raise WitnessLogicError(f"oracle rejected the orthogonal direction ({case})")
    if o_fail.verdict is OracleVerdict.ORTHOGONAL:
        raise WitnessLogicError(f"oracle rejected the failing direction ({case})")
    return Witness(kind_label, case, g, holds, fails, o_hold.min_norm, o_fail.min_norm)


def sup_nonsmooth_pair(
    space: MeasureSpace, f: FunctionVec, tol: Tolerances = DEFAULT_TOL
) -> tuple[FunctionVec, FunctionVec]:
    """Right-additivity violation at a non-smooth f: f perp g and f perp h
    but not f perp (g + h).

    Built from two support functionals at distinct attaining atoms: on the
    attaining set, g and h carry sign patterns (2, -1, 1, ...) and
    (-1, 2, 1, ...) times sgn(f), so each pairing set straddles 0 while the
    sum's pairing set is strictly positive.
    """
    att = attain_set(space, f, tol)
    if att.zero_function or len(att.indices) < 2:
        raise WitnessLogicError("additivity violations need at least two attaining atoms")
    g = np.zeros(space.dim, dtype=np.complex128)
    h = np.zeros(space.dim, dtype=np.complex128)
    a1, a2 = att.indices[0], att.indices[1]
    for i in att.indices:
        s = sgn(f.values[i])
        if i == a1:
            g[i], h[i] = 2.0 * s, -1.0 * s
        elif i == a2:
            g[i], h[i] = -1.0 * s, 2.0 * s
        else:
            g[i], h[i] = s, s
    return space.function(g), space.function(h)
