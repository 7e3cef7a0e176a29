"""Data model for finite atomic measure spaces and the three norm families.

Everything downstream (hull tests, per-space orthogonality criteria, the
brute-force oracle, the CLI) works on the three value types defined here:

* ``MeasureSpace`` -- an ordered list of weighted atoms plus a scalar-field
  tag.  An atom of the space plays the role of a sigma-atom of positive
  measure, so "almost everywhere" statements become "on every atom".
* ``FunctionVec`` -- one scalar per atom.  Scalars are stored as complex
  numbers even in real mode (imaginary part pinned to 0), so every criterion
  has a single code path; the field tag only gates validation and which
  lambda values the oracle searches.
* ``SpaceKind`` -- which norm family governs: sup, l1, or lp with 1 < p < inf.

All types are immutable after construction and all operations are pure
functions; they are safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class SpaceError(ValueError):
    """Base class for validation failures in this package."""


class AlignmentError(SpaceError):
    """A function vector does not match the atom count of its space."""


class DomainError(SpaceError):
    """An argument is outside the mathematical domain of an operation."""


class SizeError(SpaceError):
    """An input exceeds a documented size cap."""


class WitnessLogicError(RuntimeError):
    """A witness was requested for a point that does not admit one."""


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _as_finite_complex_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise DomainError(f"expected a 1-d value list, got shape {arr.shape}")
    if arr.size == 0:
        raise DomainError("value list must be nonempty")
    if not (np.all(np.isfinite(arr.real)) and np.all(np.isfinite(arr.imag))):
        raise DomainError("values must be finite (no NaN/inf)")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FunctionVec:
    """Scalar values of a function on each atom, index-aligned with the space."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_finite_complex_array(self.values))

    @property
    def dim(self) -> int:
        return int(self.values.size)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values)

    def __repr__(self) -> str:
        return f"FunctionVec({list(self.values)})"


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """Finite atomic measure space: ordered atoms with positive weights.

    Zero-weight atoms are rejected outright; they would be invisible to every
    criterion, and excluding them keeps one canonical representation per
    space.
    """

    atom_ids: tuple[str, ...]
    weights: np.ndarray
    field: Field = Field.REAL

    def __post_init__(self):
        ids = tuple(str(a) for a in self.atom_ids)
        if len(ids) == 0:
            raise DomainError("a measure space needs at least one atom")
        if len(set(ids)) != len(ids):
            raise DomainError("atom ids must be unique")
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size != len(ids):
            raise AlignmentError("weights must align with atom ids")
        if not np.all(np.isfinite(w)) or not np.all(w > 0.0):
            raise DomainError("every atom weight must be a finite positive real")
        w.setflags(write=False)
        object.__setattr__(self, "atom_ids", ids)
        object.__setattr__(self, "weights", w)
        if not isinstance(self.field, Field):
            object.__setattr__(self, "field", Field(self.field))

    @property
    def dim(self) -> int:
        return len(self.atom_ids)

    def check_aligned(self, *funcs: FunctionVec) -> None:
        for f in funcs:
            if f.dim != self.dim:
                raise AlignmentError(
                    f"function has {f.dim} values but the space has {self.dim} atoms"
                )

    def function(self, values) -> FunctionVec:
        """Build a FunctionVec on this space, enforcing the field tag."""
        vec = FunctionVec(values)
        self.check_aligned(vec)
        if self.field is Field.REAL and np.any(vec.values.imag != 0.0):
            raise DomainError("real-field space cannot hold complex values")
        return vec

    @classmethod
    def of(cls, weights, field: Field = Field.REAL, ids=None) -> "MeasureSpace":
        w = np.asarray(weights, dtype=np.float64)
        if ids is None:
            ids = tuple(f"a{i}" for i in range(w.size))
        return cls(tuple(ids), w, field)


class SpaceFamily(enum.Enum):
    SUP = "sup"
    L1 = "l1"
    LP = "lp"


@dataclass(frozen=True)
class SpaceKind:
    """Norm family selector: Sup, L1, or Lp with exponent 1 < p < inf.

    p = 2 is allowed; it degenerates to the Hilbert case and is the natural
    regression test for the lp criteria.
    """

    family: SpaceFamily
    p: float | None = None

    def __post_init__(self):
        if not isinstance(self.family, SpaceFamily):
            object.__setattr__(self, "family", SpaceFamily(self.family))
        if self.family is SpaceFamily.LP:
            p = self.p
            if p is None or not (isinstance(p, (int, float)) and math.isfinite(p)):
                raise DomainError("lp requires a finite exponent p")
            if not (1.0 < float(p) < math.inf):
                raise DomainError(f"lp exponent must satisfy 1 < p < inf, got {p}")
            object.__setattr__(self, "p", float(p))
        elif self.p is not None:
            raise DomainError(f"{self.family.value} does not take an exponent")

    @classmethod
    def sup(cls) -> "SpaceKind":
        return cls(SpaceFamily.SUP)

    @classmethod
    def l1(cls) -> "SpaceKind":
        return cls(SpaceFamily.L1)

    @classmethod
    def lp(cls, p: float) -> "SpaceKind":
        return cls(SpaceFamily.LP, float(p))

    def label(self) -> str:
        if self.family is SpaceFamily.LP:
            return f"lp(p={self.p})"
        return self.family.value


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack knobs shared by every criterion.

    rel_attain    relative band below the sup norm inside which an atom counts
                  as norm-attaining (and below which a value counts as
                  "vanishing" for the symmetry criteria).
    hull_eps      absolute fattening of the origin-in-hull test after scaling
                  points by 1/max-modulus; also scales the pairing tolerances
                  of the l1/lp criteria.
    oracle_margin relative margin of the brute-force oracle: minima within
                  (1 - margin) of the base norm count as orthogonal, minima
                  below (1 - 10*margin) as not orthogonal, anything between
                  lands in the margin band.
    """

    rel_attain: float = 1e-9
    hull_eps: float = 1e-12
    oracle_margin: float = 1e-7

    def __post_init__(self):
        for name in ("rel_attain", "hull_eps", "oracle_margin"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"tolerance {name} must be a positive finite real")
        if self.rel_attain >= 1.0:
            raise DomainError("rel_attain must be < 1")

    def to_dict(self) -> dict:
        return {
            "rel_attain": self.rel_attain,
            "hull_eps": self.hull_eps,
            "oracle_margin": self.oracle_margin,
        }


DEFAULT_TOL = Tolerances()


def sgn(z: complex) -> complex:
    """Sign of a scalar: z/|z| for z != 0 and exactly 0 for z = 0."""
    z = complex(z)
    if z == 0:
        return 0j
    return z / abs(z)


def sgn_vec(values: np.ndarray) -> np.ndarray:
    """Vectorized sign; zeros map to exactly 0."""
    mod = np.abs(values)
    safe = np.where(mod == 0.0, 1.0, mod)
    return np.where(mod == 0.0, 0.0 + 0.0j, values / safe)


def conjugate_exponent(p: float) -> float:
    """Hoelder conjugate q with 1/p + 1/q = 1, for 1 < p < inf."""
    p = float(p)
    if not (math.isfinite(p) and 1.0 < p):
        raise DomainError(f"conjugate exponent needs 1 < p < inf, got {p}")
    return p / (p - 1.0)


def norm(space: MeasureSpace, kind: SpaceKind, f: FunctionVec) -> float:
    """Norm of f in the chosen family.

    Sup ignores the weights beyond their positivity: on an atomic space the
    essential sup equals the max over atoms.  The lp branch is evaluated in
    scaled form to stay well conditioned for large exponents.
    """
    space.check_aligned(f)
    mod = np.abs(f.values)
    if kind.family is SpaceFamily.SUP:
        return float(np.max(mod))
    if kind.family is SpaceFamily.L1:
        return float(np.dot(space.weights, mod))
    p = kind.p
    m = float(np.max(mod))
    if m == 0.0:
        return 0.0
    return m * float(np.dot(space.weights, (mod / m) ** p)) ** (1.0 / p)


def dual_norm(space: MeasureSpace, kind: SpaceKind, h: FunctionVec) -> float:
    """Norm of h in the dual family (sup <-> l1, lp <-> lq)."""
    if kind.family is SpaceFamily.SUP:
        return norm(space, SpaceKind.l1(), h)
    if kind.family is SpaceFamily.L1:
        return norm(space, SpaceKind.sup(), h)
    return norm(space, SpaceKind.lp(conjugate_exponent(kind.p)), h)


def pairing_action(space: MeasureSpace, h: FunctionVec, f: FunctionVec) -> complex:
    """Bilinear measure pairing sum_a w_a h(a) f(a) (no conjugation)."""
    space.check_aligned(h, f)
    return complex(np.sum(space.weights * h.values * f.values))


@dataclass(frozen=True)
class Verdict:
    """Orthogonality decision plus the analytic evidence that produced it."""

    orthogonal: bool
    kind: str
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "orthogonal": self.orthogonal,
            "kind": self.kind,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class SymmetryVerdict:
    """Smoothness and pointwise-symmetry classification of a single vector."""

    is_smooth: bool
    is_left_symmetric: bool
    is_right_symmetric: bool
    kind: str
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "is_smooth": self.is_smooth,
            "is_left_symmetric": self.is_left_symmetric,
            "is_right_symmetric": self.is_right_symmetric,
            "kind": self.kind,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class Witness:
    """Constructed counterexample certifying an asymmetry.

    ``holds`` names the orthogonality direction that is guaranteed to hold,
    ``fails`` the one guaranteed to fail; e.g. a left-asymmetry witness has
    holds="f_perp_g" and fails="g_perp_f".
    """

    kind: str
    case: str
    g: FunctionVec
    holds: str
    fails: str
    oracle_min_holds: float
    oracle_min_fails: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "case": self.case,
            "g": [[float(z.real), float(z.imag)] for z in self.g.values],
            "holds": self.holds,
            "fails": self.fails,
            "oracle_min_holds": self.oracle_min_holds,
            "oracle_min_fails": self.oracle_min_fails,
        }
