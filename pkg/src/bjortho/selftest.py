"""Randomized self-test suites: oracle agreement, homogeneity of the
orthogonality relation, right-additivity at smooth points, witness validity,
and the p = 2 degeneration.

Every suite is a pure function of its arguments (all randomness flows from
the seed), returns a JSON-able tally, and serializes any failing instance so
it can be replayed.  The CLI selftest subcommand simply aggregates these.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_TOL,
    Field,
    FunctionVec,
    MeasureSpace,
    Side,
    SpaceFamily,
    SpaceKind,
    Tolerances,
    WitnessLogicError,
)
from .dispatch import asymmetry_witness, bj_orthogonal, classify, nonsmooth_additivity_pair
from .oracle import (
    OracleVerdict,
    oracle_orthogonal,
    orthogonal_direction,
    random_instance,
)

DEFAULT_P_LIST = (1.2, 1.5, 3.0, 4.0, 7.0)
_MAX_RECORDED_FAILURES = 5


def serialize_instance(
    space: MeasureSpace, kind: SpaceKind, fs: dict[str, FunctionVec]
) -> dict:
    doc = {
        "kind": kind.label(),
        "field": space.field.value,
        "atoms": [
            {"id": a, "weight": float(w)} for a, w in zip(space.atom_ids, space.weights)
        ],
        "functions": {
            name: [[float(z.real), float(z.imag)] for z in vec.values]
            for name, vec in fs.items()
        },
    }
    return doc


def _choices(trials: int, seed: int, spaces, p_list):
    rng = np.random.default_rng(seed)
    fields = rng.integers(0, 2, trials)
    mixed = rng.integers(0, 2, trials)
    space_idx = rng.integers(0, len(spaces), trials)
    p_idx = rng.integers(0, len(p_list), trials)
    inst_seeds = rng.integers(0, 2**62, trials)
    for i in range(trials):
        field = Field.REAL if fields[i] == 0 else Field.COMPLEX
        weight_range = (1.0, 1.0) if mixed[i] == 0 else (0.1, 10.0)
        family = spaces[int(space_idx[i])]
        if family == "lp":
            kind = SpaceKind.lp(p_list[int(p_idx[i])])
        elif family == "l1":
            kind = SpaceKind.l1()
        else:
            kind = SpaceKind.sup()
        yield i, int(inst_seeds[i]), kind, field, weight_range


def suite_oracle_agreement(
    trials: int,
    seed: int,
    dim_max: int = 6,
    spaces=("sup", "l1", "lp"),
    p_list=DEFAULT_P_LIST,
    tol: Tolerances = DEFAULT_TOL,
) -> dict:
    """Analytic verdict must match the oracle whenever the oracle is decisive.

    Excluded (and budgeted against the band rate) are instances where the
    oracle is inconclusive: its verdict lands in the margin band, or the
    analytic side reports a violation while the oracle minimum stays above
    the certification threshold -- a violation mathematically present but
    smaller than the margin can resolve.  The remaining comparisons must
    agree exactly; in particular an oracle-certified violation against an
    analytic "orthogonal" is always a hard failure.
    """
    band = 0
    subresolution = 0
    failures = []
    for i, iseed, kind, field, wr in _choices(trials, seed, spaces, p_list):
        space, f, g = random_instance(iseed, (1, dim_max), field, wr)
        analytic = bj_orthogonal(space, kind, f, g, tol).orthogonal
        res = oracle_orthogonal(space, kind, f, g, tol)
        if res.verdict is OracleVerdict.MARGIN_BAND:
            band += 1
            continue
        oracle_says = res.verdict is OracleVerdict.ORTHOGONAL
        if analytic == oracle_says:
            continue
        if not analytic and res.verdict is OracleVerdict.ORTHOGONAL:
            subresolution += 1
            continue
        if len(failures) < _MAX_RECORDED_FAILURES:
            inst = serialize_instance(space, kind, {"f": f, "g": g})
            inst.update(
                {
                    "trial": i,
                    "analytic": analytic,
                    "oracle_min": res.min_norm,
                    "oracle_base": res.base_norm,
                }
            )
            failures.append(inst)
        else:
            failures.append({"trial": i})
    excluded = band + subresolution
    return {
        "name": "oracle_agreement",
        "instances": trials,
        "band_hits": band,
        "subresolution_hits": subresolution,
        "band_rate": excluded / trials if trials else 0.0,
        "disagreements": len(failures),
        "failures": failures[:_MAX_RECORDED_FAILURES],
        "pass": not failures,
    }


def suite_homogeneity(
    trials: int,
    seed: int,
    dim_max: int = 6,
    spaces=("sup", "l1", "lp"),
    p_list=DEFAULT_P_LIST,
    tol: Tolerances = DEFAULT_TOL,
) -> dict:
    """f perp g implies (alpha f) perp (beta g) for nonzero scalars."""
    rng = np.random.default_rng(seed ^ 0x5CA1AB1E)
    failures = []
    for i, iseed, kind, field, wr in _choices(trials, seed, spaces, p_list):
        space, f, g = random_instance(iseed, (1, dim_max), field, wr)
        alpha, beta = _nonzero_scalars(rng, field)
        before = bj_orthogonal(space, kind, f, g, tol).orthogonal
        after = bj_orthogonal(
            space,
            kind,
            space.function(alpha * f.values),
            space.function(beta * g.values),
            tol,
        ).orthogonal
        if before != after:
            inst = serialize_instance(space, kind, {"f": f, "g": g})
            inst.update({"trial": i, "alpha": [alpha.real, alpha.imag],
                         "beta": [beta.real, beta.imag]})
            failures.append(inst)
    return {
        "name": "homogeneity",
        "instances": trials,
        "violations": len(failures),
        "failures": failures[:_MAX_RECORDED_FAILURES],
        "pass": not failures,
    }


def _nonzero_scalars(rng, field: Field) -> tuple[complex, complex]:
    def draw() -> complex:
        while True:
            mag = rng.uniform(0.2, 5.0)
            if field is Field.COMPLEX:
                z = mag * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
                return complex(z)
            return complex(mag if rng.random() < 0.5 else -mag)

    return draw(), draw()


def smooth_instance(
    seed: int,
    kind: SpaceKind,
    field: Field,
    dim_max: int,
    weight_range=(0.1, 10.0),
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[MeasureSpace, FunctionVec]:
    """Random f that is smooth for the given family (dim >= 2)."""
    for attempt in range(64):
        space, f, _ = random_instance(
            seed + 7919 * attempt, (2, max(2, dim_max)), field, weight_range
        )
        if f.is_zero:
            continue
        if kind.family is SpaceFamily.L1 and np.any(f.values == 0.0):
            continue
        if classify(space, kind, f, tol).is_smooth:
            return space, f
    raise RuntimeError("could not draw a smooth instance")


def nonsmooth_instance(
    seed: int, kind: SpaceKind, field: Field, dim_max: int, weight_range=(0.1, 10.0)
) -> tuple[MeasureSpace, FunctionVec]:
    """Random f that is non-smooth: a tied max for sup, a zero atom for l1."""
    rng = np.random.default_rng(seed ^ 0xBADC0DE)
    space, f, _ = random_instance(seed, (2, max(2, dim_max)), field, weight_range)
    vals = f.values.copy()
    if kind.family is SpaceFamily.SUP:
        mod = np.abs(vals)
        i = int(np.argmax(mod))
        j = (i + 1) % space.dim
        phase = 1.0 + 0.0j
        if field is Field.COMPLEX:
            phase = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        elif rng.random() < 0.5:
            phase = -1.0 + 0.0j
        vals[j] = vals[i] * phase
    else:
        support = np.flatnonzero(vals != 0.0)
        if support.size == space.dim:
            vals[int(rng.integers(0, space.dim))] = 0.0
        if not np.any(vals):
            vals[0] = 1.0
    return space, space.function(vals)


def suite_right_additivity(
    trials: int,
    seed: int,
    dim_max: int = 6,
    spaces=("sup", "l1", "lp"),
    p_list=DEFAULT_P_LIST,
    pairs_per_instance: int = 2,
    tol: Tolerances = DEFAULT_TOL,
) -> dict:
    """Smooth points admit right-additivity; non-smooth sup/l1 points admit a
    constructed violation."""
    failures = []
    smooth_checks = 0
    violation_checks = 0
    for i, iseed, kind, field, wr in _choices(trials, seed, spaces, p_list):
        try:
            space, f = smooth_instance(iseed, kind, field, dim_max, wr, tol)
            for k in range(pairs_per_instance):
                g = orthogonal_direction(space, kind, f, iseed + 31 * k + 1, tol).vec
                h = orthogonal_direction(space, kind, f, iseed + 31 * k + 2, tol).vec
                total = space.function(g.values + h.values)
                smooth_checks += 1
                ok_analytic = bj_orthogonal(space, kind, f, total, tol).orthogonal
                res = oracle_orthogonal(space, kind, f, total, tol)
                if not ok_analytic or res.verdict is OracleVerdict.NOT_ORTHOGONAL:
                    inst = serialize_instance(space, kind, {"f": f, "g": g, "h": h})
                    inst.update({"trial": i, "stage": "smooth-additivity"})
                    failures.append(inst)
            if kind.family is SpaceFamily.LP:
                continue
            space, f = nonsmooth_instance(iseed, kind, field, dim_max, wr)
            violation_checks += 1
            g, h = nonsmooth_additivity_pair(space, kind, f, tol)
            total = space.function(g.values + h.values)
            ok = (
                bj_orthogonal(space, kind, f, g, tol).orthogonal
                and bj_orthogonal(space, kind, f, h, tol).orthogonal
                and not bj_orthogonal(space, kind, f, total, tol).orthogonal
                and oracle_orthogonal(space, kind, f, g, tol).verdict
                is not OracleVerdict.NOT_ORTHOGONAL
                and oracle_orthogonal(space, kind, f, h, tol).verdict
                is not OracleVerdict.NOT_ORTHOGONAL
                and oracle_orthogonal(space, kind, f, total, tol).verdict
                is not OracleVerdict.ORTHOGONAL
            )
            if not ok:
                inst = serialize_instance(space, kind, {"f": f, "g": g, "h": h})
                inst.update({"trial": i, "stage": "violation-check"})
                failures.append(inst)
        except (RuntimeError, WitnessLogicError) as exc:
            failures.append({"trial": i, "stage": "construction", "error": str(exc)})
    return {
        "name": "right_additivity",
        "instances": trials,
        "smooth_checks": smooth_checks,
        "violation_checks": violation_checks,
        "violations": len(failures),
        "failures": failures[:_MAX_RECORDED_FAILURES],
        "pass": not failures,
    }


def witness_oracle_strict(witness, space, kind, f, tol: Tolerances) -> bool:
    """Both oracle directions decisive: orthogonal within margin one way and
    non-orthogonal by more than ten margins the other."""
    from .core import norm as _norm

    if witness.holds == "f_perp_g":
        base_hold = _norm(space, kind, f)
        base_fail = _norm(space, kind, witness.g)
    else:
        base_hold = _norm(space, kind, witness.g)
        base_fail = _norm(space, kind, f)
    m = tol.oracle_margin
    return (
        witness.oracle_min_holds >= base_hold * (1.0 - m)
        and witness.oracle_min_fails < base_fail * (1.0 - 10.0 * m)
    )


def falsification_search(
    space: MeasureSpace,
    kind: SpaceKind,
    f: FunctionVec,
    tol: Tolerances,
    samples: int,
    seed: int,
) -> dict | None:
    """Randomized hunt for g with f perp g (analytic and oracle) yet
    g not perp f (analytic and oracle).  Returns the find, or None.

    Candidates alternate between constructions that are orthogonal by design
    and raw random draws; the oracle runs only on analytic candidates, so a
    genuinely symmetric point costs no oracle calls.
    """
    if f.is_zero:
        return None
    rng = np.random.default_rng(seed)
    dim = space.dim
    for s in range(samples):
        if s % 2 == 0:
            try:
                direction = orthogonal_direction(space, kind, f, seed + s, tol)
            except RuntimeError:
                continue
            if direction.degenerate:
                continue
            g = direction.vec
        else:
            v = rng.standard_normal(dim)
            if space.field is Field.COMPLEX:
                v = v + 1j * rng.standard_normal(dim)
            if rng.random() < 0.3:
                v[rng.integers(0, dim)] = 0.0
            g = space.function(v.astype(np.complex128))
        if g.is_zero:
            continue
        if not bj_orthogonal(space, kind, f, g, tol).orthogonal:
            continue
        if bj_orthogonal(space, kind, g, f, tol).orthogonal:
            continue
        fwd = oracle_orthogonal(space, kind, f, g, tol)
        rev = oracle_orthogonal(space, kind, g, f, tol)
        if (
            fwd.verdict is OracleVerdict.ORTHOGONAL
            and rev.verdict is OracleVerdict.NOT_ORTHOGONAL
        ):
            found = serialize_instance(space, kind, {"f": f, "g": g})
            found.update({"sample": s, "reverse_min": rev.min_norm})
            return found
    return None


def suite_witness_validity(
    trials: int,
    seed: int,
    dim_max: int = 6,
    spaces=("sup", "l1", "lp"),
    p_list=DEFAULT_P_LIST,
    search_samples: int = 50,
    tol: Tolerances = DEFAULT_TOL,
) -> dict:
    """Classified-asymmetric points must yield oracle-decisive witnesses;
    classified-symmetric points must survive a falsification search."""
    failures = []
    witnesses = 0
    searches = 0
    for i, iseed, kind, field, wr in _choices(trials, seed, spaces, p_list):
        space, f, _ = random_instance(iseed, (1, dim_max), field, wr)
        verdict = classify(space, kind, f, tol)
        sides = []
        if not verdict.is_left_symmetric:
            sides.append(Side.LEFT)
        if not verdict.is_right_symmetric:
            sides.append(Side.RIGHT)
        if not sides:
            searches += 1
            found = falsification_search(space, kind, f, tol, search_samples, iseed + 13)
            if found is not None:
                found["trial"] = i
                failures.append(found)
            continue
        for side in sides:
            witnesses += 1
            try:
                w = asymmetry_witness(space, kind, f, tol, side)
            except WitnessLogicError as exc:
                inst = serialize_instance(space, kind, {"f": f})
                inst.update({"trial": i, "side": side.value, "error": str(exc)})
                failures.append(inst)
                continue
            if not witness_oracle_strict(w, space, kind, f, tol):
                inst = serialize_instance(space, kind, {"f": f, "g": w.g})
                inst.update({"trial": i, "side": side.value, "stage": "oracle-margin"})
                failures.append(inst)
    return {
        "name": "witness_validity",
        "instances": trials,
        "witnesses_checked": witnesses,
        "falsification_searches": searches,
        "violations": len(failures),
        "failures": failures[:_MAX_RECORDED_FAILURES],
        "pass": not failures,
    }


def suite_p2_symmetry(
    trials: int,
    seed: int,
    dim_max: int = 6,
    tol: Tolerances = DEFAULT_TOL,
) -> dict:
    """p = 2 degeneration: the verdict is swap-symmetric and every nonzero
    point is classified symmetric with the hilbert flag."""
    kind = SpaceKind.lp(2.0)
    failures = []
    for i, iseed, _, field, wr in _choices(trials, seed, ("lp",), (2.0,)):
        space, f, g = random_instance(iseed, (1, dim_max), field, wr)
        fwd = bj_orthogonal(space, kind, f, g, tol).orthogonal
        rev = bj_orthogonal(space, kind, g, f, tol).orthogonal
        cls = classify(space, kind, f, tol)
        ok = fwd == rev and cls.is_left_symmetric and cls.is_right_symmetric
        if not f.is_zero:
            ok = ok and cls.evidence.get("hilbert", False)
        if not ok:
            inst = serialize_instance(space, kind, {"f": f, "g": g})
            inst.update({"trial": i, "forward": fwd, "reverse": rev})
            failures.append(inst)
    return {
        "name": "p2_symmetry",
        "instances": trials,
        "violations": len(failures),
        "failures": failures[:_MAX_RECORDED_FAILURES],
        "pass": not failures,
    }


def run_selftest(
    trials: int,
    seed: int,
    dim_max: int = 6,
    spaces=("sup", "l1", "lp"),
    p_list=DEFAULT_P_LIST,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[dict, bool]:
    spaces = tuple(spaces)
    p_list = tuple(float(p) for p in p_list)
    suites = [
        suite_oracle_agreement(trials, seed, dim_max, spaces, p_list, tol),
        suite_homogeneity(trials, seed + 1, dim_max, spaces, p_list, tol),
        suite_right_additivity(
            max(1, trials // 10), seed + 2, dim_max, spaces, p_list, tol=tol
        ),
        suite_witness_validity(
            max(1, trials // 5), seed + 3, dim_max, spaces, p_list, tol=tol
        ),
        suite_p2_symmetry(max(1, trials // 5), seed + 4, dim_max, tol),
    ]
    ok = all(s["pass"] for s in suites)
    report = {
        "suites": {s["name"]: s for s in suites},
        "pass": ok,
        "band_rate": suites[0]["band_rate"],
    }
    return report, ok
