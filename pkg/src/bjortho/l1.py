"""L1 criteria: support functionals, the orthogonality inequality, symmetry.

For f != 0 in the weighted l1 space, a bounded h is a support functional of
f iff h = conj(sgn(f)) wherever f is nonzero and |h| <= 1 elsewhere, and

    f perp g   iff   | sum_a w_a conj(sgn(f(a))) g(a) |
                        <=  sum_{f(a)=0} w_a |g(a)|.

"Zero" means exactly zero throughout this module: the deliberate zeros of
the instance generator and of parsed inputs are exact, and keeping the zero
set exact preserves the independence of this criterion from the tolerance
machinery of the sup route.

Classification (nonzero f): smooth iff f is nonzero on every atom;
left-symmetric iff the space is a single atom, or it has exactly two atoms
carrying f with w_a|f(a)| = w_b|f(b)|; right-symmetric iff the support of f
is a single atom.  The zero function is left- and right-symmetric by the
orthogonality conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    DEFAULT_TOL,
    DomainError,
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
    sgn_vec,
)
from .oracle import OracleVerdict, oracle_orthogonal

_KIND = "l1"
_SUPPORT_TOL = 1e-12
_MASS_TIE_REL = 1e-12
_SUBSET_CAP = 12


@dataclass(frozen=True)
class L1Evidence:
    """Both sides of the l1 orthogonality inequality."""

    pairing: complex
    zero_mass: float
    zero_set: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "pairing": [self.pairing.real, self.pairing.imag],
            "zero_mass": self.zero_mass,
            "zero_set": list(self.zero_set),
        }


def l1_evidence(space: MeasureSpace, f: FunctionVec, g: FunctionVec) -> L1Evidence:
    space.check_aligned(f, g)
    w = space.weights
    pairing = complex(np.sum(w * np.conj(sgn_vec(f.values)) * g.values))
    zero = np.flatnonzero(f.values == 0.0)
    zero_mass = float(np.sum(w[zero] * np.abs(g.values[zero])))
    return L1Evidence(pairing, zero_mass, tuple(int(i) for i in zero))


def is_support_functional_l1(
    space: MeasureSpace,
    f: FunctionVec,
    h: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
) -> bool:
    """Membership test for J(f): h = conj(sgn f) on the support, |h| <= 1 off it."""
    space.check_aligned(f, h)
    if f.is_zero:
        raise DomainError("J(f) is defined for nonzero f only")
    support = f.values != 0.0
    target = np.conj(sgn_vec(f.values[support]))
    if np.any(np.abs(h.values[support] - target) > _SUPPORT_TOL):
        return False
    return not np.any(np.abs(h.values[~support]) > 1.0 + _SUPPORT_TOL)


def l1_smoothness_functionals(
    space: MeasureSpace, f: FunctionVec
) -> tuple[FunctionVec, FunctionVec]:
    """The two support functionals h0, h1 (0 resp. 1 on the zero set) whose
    disagreement certifies non-smoothness when f has a zero atom."""
    space.check_aligned(f)
    if f.is_zero:
        raise DomainError("J(f) is defined for nonzero f only")
    base = np.conj(sgn_vec(f.values))
    h0 = base.copy()
    h1 = base.copy()
    h1[f.values == 0.0] = 1.0
    return space.function(h0), space.function(h1)


def bj_orthogonal_l1(
    space: MeasureSpace,
    f: FunctionVec,
    g: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
) -> Verdict:
    space.check_aligned(f, g)
    if f.is_zero:
        return Verdict(True, _KIND, {"zero_function": True})
    ev = l1_evidence(space, f, g)
    scale = norm(space, SpaceKind.l1(), g)
    slack = tol.hull_eps * (scale if scale > 0.0 else 1.0)
    ortho = abs(ev.pairing) <= ev.zero_mass + slack
    return Verdict(ortho, _KIND, ev.to_dict())


def classify_l1(
    space: MeasureSpace, f: FunctionVec, tol: Tolerances = DEFAULT_TOL
) -> SymmetryVerdict:
    space.check_aligned(f)
    support = tuple(int(i) for i in np.flatnonzero(f.values != 0.0))
    evidence = {
        "support_indices": list(support),
        "support_ids": [space.atom_ids[i] for i in support],
        "zero_indices": [i for i in range(space.dim) if i not in support],
    }
    if f.is_zero:
        evidence["zero_function"] = True
        return SymmetryVerdict(False, True, True, _KIND, evidence)

    smooth = len(support) == space.dim
    right = len(support) == 1

    if space.dim == 1:
        left = True
        evidence["left_clause"] = "trivial-sigma-algebra"
    elif space.dim == 2 and len(support) == 2:
        masses = space.weights * np.abs(f.values)
        tie = abs(masses[0] - masses[1]) <= _MASS_TIE_REL * max(masses[0], masses[1])
        left = bool(tie)
        evidence["left_clause"] = "two-atom-balance"
        evidence["atom_masses"] = [float(m) for m in masses]
    else:
        left = False
    return SymmetryVerdict(smooth, left, right, _KIND, evidence)


def _split_support(masses: np.ndarray, support: tuple[int, ...]) -> tuple[int, ...] | None:
    """Subset A of the support with 0 < mass(A) < mass(support \\ A).

    The minimum-mass atom works whenever one exists (with three or more
    support atoms its mass is below half the total; with two it works unless
    the masses tie); subset enumeration is kept as a fallback, capped at
    2**12 subsets.
    """
    total = float(np.sum(masses[list(support)]))
    best = min(support, key=lambda i: masses[i])
    if 0.0 < masses[best] < total - masses[best]:
        return (best,)
    n = min(len(support), _SUBSET_CAP)
    for size in range(1, n):
        for subset in combinations(support[:n], size):
            m = float(np.sum(masses[list(subset)]))
            if 0.0 < m < total - m:
                return subset
    return None


def l1_asymmetry_witness(
    space: MeasureSpace,
    f: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
    side: Side = Side.LEFT,
) -> Witness:
    """Counterexample to the requested symmetry, from the proof recipes.

    Left, case I (f has a zero atom a): g = f off the zero set and
    ||f||_1/w_a at a.  Left, case II (f nonzero everywhere): g = beta*f on a
    low-mass subset A and -alpha*f elsewhere, alpha/beta the two partial
    masses.  Right: g = sgn(f) on a low-mass support subset, 0 elsewhere.
    """
    side = Side(side)
    verdict = classify_l1(space, f, tol)
    if f.is_zero:
        raise WitnessLogicError("the zero function is symmetric; no witness exists")
    w = space.weights
    support = tuple(int(i) for i in np.flatnonzero(f.values != 0.0))

    if side is Side.LEFT:
        if verdict.is_left_symmetric:
            raise WitnessLogicError("f is left-symmetric; no witness exists")
        zero_atoms = np.flatnonzero(f.values == 0.0)
        if zero_atoms.size:
            a = int(zero_atoms[0])
            g = f.values.copy()
            g[a] = norm(space, SpaceKind.l1(), f) / w[a]
            case = "zero-atom-fill"
        else:
            masses = w * np.abs(f.values)
            subset = _split_support(masses, support)
            if subset is None:
                raise WitnessLogicError("no strict mass split exists")
            alpha = float(np.sum(masses[list(subset)]))
            beta = float(np.sum(masses)) - alpha
            g = -alpha * f.values
            g[list(subset)] = beta * f.values[list(subset)]
            case = "mass-split"
        return _checked_witness(
            space, f, space.function(g), tol, "left_asymmetry", case, forward_holds=True
        )

    if verdict.is_right_symmetric:
        raise WitnessLogicError("f is right-symmetric; no witness exists")
    # two disjoint pieces of the support with mass(A) <= mass(B): A is the
    # minimum-mass atom, B the rest of the support
    masses = w * np.abs(f.values)
    a = min(support, key=lambda i: masses[i])
    g = np.zeros(space.dim, dtype=np.complex128)
    g[a] = sgn_vec(f.values)[a]
    return _checked_witness(
        space, f, space.function(g), tol, "right_asymmetry", "support-sign-patch",
        forward_holds=False,
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
    skind = SpaceKind.l1()
    forward = bj_orthogonal_l1(space, f, g, tol)
    reverse = bj_orthogonal_l1(space, g, f, tol)
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


def l1_nonsmooth_pair(
    space: MeasureSpace, f: FunctionVec, tol: Tolerances = DEFAULT_TOL
) -> tuple[FunctionVec, FunctionVec]:
    """Right-additivity violation at a non-smooth f (one with a zero atom):
    both g and h meet the inequality with equality, their zero-set halves
    cancel in the sum, and the surviving pairing breaks it."""
    space.check_aligned(f)
    if f.is_zero:
        raise WitnessLogicError("additivity violations need a nonzero f")
    zero_atoms = np.flatnonzero(f.values == 0.0)
    if zero_atoms.size == 0:
        raise WitnessLogicError("f is smooth in l1; no additivity violation exists")
    a0 = int(zero_atoms[0])
    support = np.flatnonzero(f.values != 0.0)
    a1 = int(support[np.argmax(np.abs(f.values[support]))])
    w = space.weights
    s = sgn_vec(f.values)[a1]
    g = np.zeros(space.dim, dtype=np.complex128)
    h = np.zeros(space.dim, dtype=np.complex128)
    g[a1] = s * w[a0]
    h[a1] = s * w[a0]
    g[a0] = w[a1]
    h[a0] = -w[a1]
    return space.function(g), space.function(h)
