"""Weighted lp criteria for 1 < p < inf: the unique support functional, the
integral orthogonality criterion, and the symmetry trichotomy.

The space is smooth, its unique support functional at f != 0 is

    h(a) = conj(sgn(f(a))) |f(a)|^(p-1) / ||f||_p^(p-1),

and f perp g iff the pairing sum_a w_a conj(sgn(f(a))) |f(a)|^(p-1) g(a)
vanishes.  For p != 2, f is left-symmetric iff it is right-symmetric iff
f = 0, or its support is a single atom, or its support is exactly two atoms
a, b with w_a|f(a)|^p = w_b|f(b)|^p.  p = 2 is supported rather than
excluded: every nonzero vector is then symmetric (Hilbert case) and the
verdict carries a hilbert flag.

The pairing for p = 2 is computed directly as sum w conj(f) g, which makes
the p = 2 verdict exactly symmetric under swapping f and g.
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

_KIND = "lp"
_MASS_TIE_REL = 1e-12
_SUBSET_CAP = 12


def _check_p(p: float) -> float:
    kind = SpaceKind.lp(p)  # validates 1 < p < inf
    return kind.p


@dataclass(frozen=True)
class LpEvidence:
    pairing: complex
    p: float
    support_atoms: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "pairing": [self.pairing.real, self.pairing.imag],
            "p": self.p,
            "support_atoms": list(self.support_atoms),
        }


def lp_pairing(
    space: MeasureSpace, f: FunctionVec, g: FunctionVec, p: float
) -> complex:
    """sum_a w_a conj(sgn(f(a))) |f(a)|^(p-1) g(a)."""
    space.check_aligned(f, g)
    p = _check_p(p)
    w = space.weights
    if p == 2.0:
        return complex(np.sum(w * np.conj(f.values) * g.values))
    dual = np.conj(sgn_vec(f.values)) * np.abs(f.values) ** (p - 1.0)
    return complex(np.sum(w * dual * g.values))


def support_functional_lp(
    space: MeasureSpace, f: FunctionVec, p: float
) -> FunctionVec:
    """The unique norm-one functional attaining ||f||_p at f."""
    space.check_aligned(f)
    p = _check_p(p)
    if f.is_zero:
        raise DomainError("J(f) is defined for nonzero f only")
    fnorm = norm(space, SpaceKind.lp(p), f)
    h = np.conj(sgn_vec(f.values)) * np.abs(f.values) ** (p - 1.0) / fnorm ** (p - 1.0)
    return space.function(h)


def bj_orthogonal_lp(
    space: MeasureSpace,
    f: FunctionVec,
    g: FunctionVec,
    p: float,
    tol: Tolerances = DEFAULT_TOL,
) -> Verdict:
    space.check_aligned(f, g)
    p = _check_p(p)
    if f.is_zero:
        return Verdict(True, _KIND, {"zero_function": True, "p": p})
    pairing = lp_pairing(space, f, g, p)
    support = tuple(int(i) for i in np.flatnonzero(f.values != 0.0))
    kind = SpaceKind.lp(p)
    # both sides of the criterion are (p-1)-homogeneous in f and 1-homogeneous
    # in g, so the tolerance is Hoelder-scaled
    scale = norm(space, kind, f) ** (p - 1.0) * norm(space, kind, g)
    ortho = abs(pairing) <= tol.hull_eps * (scale if scale > 0.0 else 1.0)
    return Verdict(ortho, _KIND, LpEvidence(pairing, p, support).to_dict())


def classify_lp(
    space: MeasureSpace, f: FunctionVec, p: float, tol: Tolerances = DEFAULT_TOL
) -> SymmetryVerdict:
    """Left- and right-symmetry coincide in lp; the space is smooth throughout."""
    space.check_aligned(f)
    p = _check_p(p)
    support = tuple(int(i) for i in np.flatnonzero(f.values != 0.0))
    evidence: dict = {
        "p": p,
        "support_indices": list(support),
        "support_ids": [space.atom_ids[i] for i in support],
    }
    if f.is_zero:
        evidence["zero_function"] = True
        return SymmetryVerdict(True, True, True, _KIND, evidence)
    if p == 2.0:
        evidence["hilbert"] = True
        return SymmetryVerdict(True, True, True, _KIND, evidence)
    if len(support) == 1:
        symmetric = True
        evidence["clause"] = "single-support-atom"
    elif len(support) == 2:
        masses = space.weights[list(support)] * np.abs(f.values[list(support)]) ** p
        tie = abs(masses[0] - masses[1]) <= _MASS_TIE_REL * float(np.max(masses))
        symmetric = bool(tie)
        evidence["clause"] = "two-atom-balance"
        evidence["atom_masses"] = [float(m) for m in masses]
    else:
        symmetric = False
    return SymmetryVerdict(True, symmetric, symmetric, _KIND, evidence)


def _split_support(masses: np.ndarray, support: tuple[int, ...]) -> tuple[int, ...] | None:
    """Subset A of supp f with 0 < mass(A) < mass(supp \\ A); see l1 twin."""
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


def lp_asymmetry_witness(
    space: MeasureSpace,
    f: FunctionVec,
    p: float,
    tol: Tolerances = DEFAULT_TOL,
    side: Side = Side.LEFT,
) -> Witness:
    """Asymmetric pair at a non-symmetric f, from the scaled-restriction
    construction: g = a*f on a low-mass subset A of the support and b*f on
    the rest of the support, with

        side LEFT :  a = mass(rest),            b = -mass(A)
        side RIGHT:  a = mass(rest)^(1/(p-1)),  b = -mass(A)^(1/(p-1)).

    LEFT gives f perp g with g not perp f; RIGHT gives the reverse failure.
    """
    side = Side(side)
    p = _check_p(p)
    verdict = classify_lp(space, f, p, tol)
    if verdict.is_left_symmetric:
        raise WitnessLogicError("f is symmetric in lp; no witness exists")
    support = tuple(int(i) for i in np.flatnonzero(f.values != 0.0))
    masses = space.weights * np.abs(f.values) ** p
    subset = _split_support(masses, support)
    if subset is None:
        raise WitnessLogicError("no strict mass split exists")
    m_a = float(np.sum(masses[list(subset)]))
    m_rest = float(np.sum(masses[list(support)])) - m_a
    if side is Side.LEFT:
        a, b = m_rest, -m_a
        forward_holds = True
        case = "mass-split"
    else:
        e = 1.0 / (p - 1.0)
        a, b = m_rest ** e, -(m_a ** e)
        forward_holds = False
        case = "mass-split-dual"
    g = np.zeros(space.dim, dtype=np.complex128)
    g[list(support)] = b * f.values[list(support)]
    g[list(subset)] = a * f.values[list(subset)]

    skind = SpaceKind.lp(p)
    gvec = space.function(g)
    forward = bj_orthogonal_lp(space, f, gvec, p, tol)
    reverse = bj_orthogonal_lp(space, gvec, f, p, tol)
    held, failed = (forward, reverse) if forward_holds else (reverse, forward)
    if not held.orthogonal or failed.orthogonal:
        raise WitnessLogicError(f"witness construction inconsistent ({case})")
    if forward_holds:
        o_hold = oracle_orthogonal(space, skind, f, gvec, tol)
        o_fail = oracle_orthogonal(space, skind, gvec, f, tol)
        holds, fails = "f_perp_g", "g_perp_f"
    else:
        o_hold = oracle_orthogonal(space, skind, gvec, f, tol)
        o_fail = oracle_orthogonal(space, skind, f, gvec, tol)
        holds, fails = "g_perp_f", "f_perp_g"
    if o_hold.verdict is OracleVerdict.NOT_ORTHOGONAL:
        raise WitnessLogicError(f"oracle rejected the orthogonal direction ({case})")
    if o_fail.verdict is OracleVerdict.ORTHOGONAL:
        raise WitnessLogicError(f"oracle rejected the failing direction ({case})")
    return Witness(
        "left_asymmetry" if side is Side.LEFT else "right_asymmetry",
        case, gvec, holds, fails, o_hold.min_norm, o_fail.min_norm,
    )


def lp_derivative_at_zero(
    space: MeasureSpace, f: FunctionVec, g: FunctionVec, p: float
) -> float:
    """d/dt ||f + t g||_p at t = 0 (real t): Re(pairing) / ||f||_p^(p-1)."""
    p = _check_p(p)
    if f.is_zero:
        raise DomainError("the norm is not differentiable at 0")
    pairing = lp_pairing(space, f, g, p)
    return pairing.real / norm(space, SpaceKind.lp(p), f) ** (p - 1.0)
