"""Family dispatch: route a SpaceKind to the matching criterion module."""

from __future__ import annotations

from .core import (
    DEFAULT_TOL,
    DomainError,
    FunctionVec,
    MeasureSpace,
    Side,
    SpaceFamily,
    SpaceKind,
    SymmetryVerdict,
    Tolerances,
    Verdict,
    Witness,
)
from .l1 import bj_orthogonal_l1, classify_l1, l1_asymmetry_witness, l1_nonsmooth_pair
from .lp import bj_orthogonal_lp, classify_lp, lp_asymmetry_witness
from .sup import bj_orthogonal_sup, classify_sup, sup_asymmetry_witness, sup_nonsmooth_pair


def bj_orthogonal(
    space: MeasureSpace,
    kind: SpaceKind,
    f: FunctionVec,
    g: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
) -> Verdict:
    if kind.family is SpaceFamily.SUP:
        return bj_orthogonal_sup(space, f, g, tol)
    if kind.family is SpaceFamily.L1:
        return bj_orthogonal_l1(space, f, g, tol)
    return bj_orthogonal_lp(space, f, g, kind.p, tol)


def classify(
    space: MeasureSpace,
    kind: SpaceKind,
    f: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
) -> SymmetryVerdict:
    if kind.family is SpaceFamily.SUP:
        return classify_sup(space, f, tol)
    if kind.family is SpaceFamily.L1:
        return classify_l1(space, f, tol)
    return classify_lp(space, f, kind.p, tol)


def asymmetry_witness(
    space: MeasureSpace,
    kind: SpaceKind,
    f: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
    side: Side = Side.LEFT,
) -> Witness:
    if kind.family is SpaceFamily.SUP:
        return sup_asymmetry_witness(space, f, tol, side)
    if kind.family is SpaceFamily.L1:
        return l1_asymmetry_witness(space, f, tol, side)
    return lp_asymmetry_witness(space, f, kind.p, tol, side)


def nonsmooth_additivity_pair(
    space: MeasureSpace,
    kind: SpaceKind,
    f: FunctionVec,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[FunctionVec, FunctionVec]:
    if kind.family is SpaceFamily.SUP:
        return sup_nonsmooth_pair(space, f, tol)
    if kind.family is SpaceFamily.L1:
        return l1_nonsmooth_pair(space, f, tol)
    raise DomainError("lp spaces are smooth; no additivity violation exists")
