"""Command-line front end: JSON/CSV ingestion, check/classify/selftest
subcommands, machine-readable reports.

The report is a single JSON object on standard output; diagnostics go to
standard error.  Exit codes:

    check     0 orthogonal, 1 not orthogonal, 2 bad input,
              3 the oracle (when requested) landed in the margin band or
              contradicted the analytic verdict
    classify  0 on success, 2 bad input
    selftest  0 all suites pass, 1 any failure, 2 bad input

All randomness enters through --seed (or the BJORTHO_SEED environment
variable when the flag is absent), so reports are byte-identical across
runs with identical inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    DomainError,
    Field,
    FunctionVec,
    MeasureSpace,
    Side,
    SpaceError,
    SpaceFamily,
    SpaceKind,
    Tolerances,
    WitnessLogicError,
)
from .dispatch import asymmetry_witness, bj_orthogonal, classify, nonsmooth_additivity_pair
from .oracle import OracleVerdict, oracle_orthogonal
from .selftest import DEFAULT_P_LIST, run_selftest

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_BAND = 3


@dataclass(frozen=True)
class InputDocument:
    """Parsed problem instance: field tag, weighted atoms, named functions."""

    field: Field
    atoms: tuple[tuple[str, float], ...]
    functions: tuple[tuple[str, tuple[complex, ...]], ...]

    def __post_init__(self):
        # canonical function order: by name (atoms stay positional)
        object.__setattr__(
            self, "functions", tuple(sorted(self.functions, key=lambda kv: kv[0]))
        )
        names = [name for name, _ in self.functions]
        if len(set(names)) != len(names):
            raise DomainError("function names must be unique")
        n = len(self.atoms)
        for name, values in self.functions:
            if len(values) != n:
                raise DomainError(
                    f"function {name!r} has {len(values)} values for {n} atoms"
                )

    def space(self) -> MeasureSpace:
        ids = tuple(a for a, _ in self.atoms)
        weights = [w for _, w in self.atoms]
        return MeasureSpace(ids, weights, self.field)

    def vector(self, name: str) -> FunctionVec:
        for fname, values in self.functions:
            if fname == name:
                return self.space().function(list(values))
        raise DomainError(f"no function named {name!r} in the input")


def _parse_value(raw, field: Field, context: str) -> complex:
    if isinstance(raw, (int, float)):
        return complex(float(raw), 0.0)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        re, im = float(raw[0]), float(raw[1])
        if field is Field.REAL and im != 0.0:
            raise DomainError(f"{context}: nonzero imaginary part in a real document")
        return complex(re, im)
    raise DomainError(f"{context}: values must be numbers or [re, im] pairs")


def parse_document_json(text: str) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DomainError("document must be a JSON object")
    try:
        field = Field(raw["field"])
        atoms = tuple(
            (str(a["id"]), float(a["weight"])) for a in raw["atoms"]
        )
        functions = tuple(
            (
                str(name),
                tuple(
                    _parse_value(v, field, f"function {name!r}") for v in values
                ),
            )
            for name, values in raw["functions"].items()
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed document: {exc}") from exc
    return InputDocument(field, atoms, functions)


def serialize_document(doc: InputDocument) -> str:
    if doc.field is Field.REAL:
        funcs = {name: [z.real for z in values] for name, values in doc.functions}
    else:
        funcs = {
            name: [[z.real, z.imag] for z in values] for name, values in doc.functions
        }
    payload = {
        "field": doc.field.value,
        "atoms": [{"id": a, "weight": w} for a, w in doc.atoms],
        "functions": funcs,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def parse_document_csv(text: str) -> InputDocument:
    """CSV twin of the JSON schema.

    Header: atom_id, weight, then one column NAME per real function or a
    column pair NAME_re, NAME_im per complex function.  The document is
    complex iff any _re/_im pair is present.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise DomainError("empty CSV document")
    header = [h.strip() for h in rows[0]]
    if header[:2] != ["atom_id", "weight"]:
        raise DomainError("CSV header must start with atom_id, weight")
    spec: list[tuple[str, str, int, int]] = []  # (name, kind, col_re, col_im)
    seen: dict[str, int] = {}
    col = 2
    while col < len(header):
        name = header[col]
        if name.endswith("_re"):
            base = name[:-3]
            if col + 1 >= len(header) or header[col + 1] != base + "_im":
                raise DomainError(f"column {name!r} must be followed by {base}_im")
            spec.append((base, "complex", col, col + 1))
            seen[base] = 1
            col += 2
        else:
            spec.append((name, "real", col, -1))
            seen[name] = 1
            col += 1
    if len(seen) != len(spec):
        raise DomainError("duplicate function names in CSV header")
    field = Field.COMPLEX if any(kind == "complex" for _, kind, _, _ in spec) else Field.REAL
    atoms = []
    columns: dict[str, list[complex]] = {name: [] for name, _, _, _ in spec}
    for row in rows[1:]:
        cells = [c.strip() for c in row]
        if len(cells) != len(header):
            raise DomainError("CSV row width does not match the header")
        try:
            atoms.append((cells[0], float(cells[1])))
            for name, kind, c_re, c_im in spec:
                if kind == "real":
                    columns[name].append(complex(float(cells[c_re]), 0.0))
                else:
                    columns[name].append(complex(float(cells[c_re]), float(cells[c_im])))
        except ValueError as exc:
            raise DomainError(f"bad CSV number: {exc}") from exc
    functions = tuple((name, tuple(columns[name])) for name, _, _, _ in spec)
    return InputDocument(field, tuple(atoms), functions)


def write_document_csv(doc: InputDocument) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["atom_id", "weight"]
    for name, _ in doc.functions:
        if doc.field is Field.REAL:
            header.append(name)
        else:
            header.extend([name + "_re", name + "_im"])
    writer.writerow(header)
    for i, (atom, weight) in enumerate(doc.atoms):
        row = [atom, repr(weight)]
        for _, values in doc.functions:
            z = values[i]
            if doc.field is Field.REAL:
                row.append(repr(z.real))
            else:
                row.extend([repr(z.real), repr(z.imag)])
        writer.writerow(row)
    return out.getvalue()


def load_document(path: str) -> InputDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    if path.endswith(".csv"):
        return parse_document_csv(text)
    if path.endswith(".json"):
        return parse_document_json(text)
    try:
        return parse_document_json(text)
    except DomainError:
        return parse_document_csv(text)


def _document_echo(doc: InputDocument) -> dict:
    return {
        "field": doc.field.value,
        "atoms": [{"id": a, "weight": w} for a, w in doc.atoms],
    }


def _space_kind(args) -> SpaceKind:
    if args.space == "sup":
        if args.p is not None:
            raise DomainError("--p only applies to --space lp")
        return SpaceKind.sup()
    if args.space == "l1":
        if args.p is not None:
            raise DomainError("--p only applies to --space lp")
        return SpaceKind.l1()
    if args.p is None:
        raise DomainError("--space lp requires --p")
    return SpaceKind.lp(args.p)


def _tolerances(args) -> Tolerances:
    return Tolerances(
        rel_attain=args.tol_rel_attain,
        hull_eps=args.tol_hull_eps,
        oracle_margin=args.tol_oracle_margin,
    )


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("BJORTHO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"BJORTHO_SEED must be an integer, got {env!r}") from exc
    return 0


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def cmd_check(args) -> int:
    doc = load_document(args.input)
    kind = _space_kind(args)
    tol = _tolerances(args)
    space = doc.space()
    f = doc.vector(args.f)
    g = doc.vector(args.g)
    verdict = bj_orthogonal(space, kind, f, g, tol)
    report = {
        "command": "check",
        "space": args.space,
        "p": kind.p,
        "document": _document_echo(doc),
        "f": args.f,
        "g": args.g,
        "verdict": verdict.to_dict(),
        "oracle": None,
        "agreement": None,
        "tolerances": tol.to_dict(),
        "seed": _seed(args),
    }
    code = EXIT_TRUE if verdict.orthogonal else EXIT_FALSE
    if args.oracle:
        res = oracle_orthogonal(space, kind, f, g, tol)
        report["oracle"] = res.to_dict()
        if res.verdict is OracleVerdict.MARGIN_BAND:
            report["agreement"] = "margin_band"
            code = EXIT_BAND
        elif (res.verdict is OracleVerdict.ORTHOGONAL) != verdict.orthogonal:
            report["agreement"] = "disagreement"
            code = EXIT_BAND
        else:
            report["agreement"] = "confirmed"
    _emit(report)
    return code


def _attach_witnesses(report, space, kind, f, tol) -> None:
    verdict = classify(space, kind, f, tol)
    witnesses: dict = {}
    for side, flag in (
        (Side.LEFT, verdict.is_left_symmetric),
        (Side.RIGHT, verdict.is_right_symmetric),
    ):
        if flag:
            continue
        try:
            witnesses[side.value] = asymmetry_witness(space, kind, f, tol, side).to_dict()
        except WitnessLogicError as exc:
            witnesses[side.value] = {"unavailable": str(exc)}
    if not verdict.is_smooth and kind.family is not SpaceFamily.LP:
        try:
            g, h = nonsmooth_additivity_pair(space, kind, f, tol)
            witnesses["nonsmooth"] = {
                "g": [[z.real, z.imag] for z in g.values],
                "h": [[z.real, z.imag] for z in h.values],
                "violates": "f_perp_g_plus_h",
            }
        except WitnessLogicError as exc:
            witnesses["nonsmooth"] = {"unavailable": str(exc)}
    report["witnesses"] = witnesses


def cmd_classify(args) -> int:
    doc = load_document(args.input)
    kind = _space_kind(args)
    tol = _tolerances(args)
    space = doc.space()
    f = doc.vector(args.f)
    verdict = classify(space, kind, f, tol)
    report = {
        "command": "classify",
        "space": args.space,
        "p": kind.p,
        "document": _document_echo(doc),
        "f": args.f,
        "verdict": verdict.to_dict(),
        "tolerances": tol.to_dict(),
        "seed": _seed(args),
    }
    if args.witness:
        _attach_witnesses(report, space, kind, f, tol)
    _emit(report)
    return EXIT_TRUE


def cmd_selftest(args) -> int:
    tol = _tolerances(args)
    seed = _seed(args)
    spaces = tuple(args.spaces.split(","))
    for s in spaces:
        if s not in ("sup", "l1", "lp"):
            raise DomainError(f"unknown space family {s!r}")
    p_list = tuple(float(p) for p in args.p_list.split(",")) if args.p_list else DEFAULT_P_LIST
    for p in p_list:
        SpaceKind.lp(p)
    body, ok = run_selftest(args.trials, seed, args.dim_max, spaces, p_list, tol)
    report = {
        "command": "selftest",
        "trials": args.trials,
        "seed": seed,
        "dim_max": args.dim_max,
        "spaces": list(spaces),
        "p_list": list(p_list),
        "tolerances": tol.to_dict(),
    }
    report.update(body)
    _emit(report)
    return EXIT_TRUE if ok else EXIT_FALSE


def _add_tolerance_flags(sub) -> None:
    sub.add_argument("--tol-rel-attain", type=float, default=DEFAULT_TOL.rel_attain,
                     help="relative norm-attainment band (default %(default)g)")
    sub.add_argument("--tol-hull-eps", type=float, default=DEFAULT_TOL.hull_eps,
                     help="hull/pairing fattening (default %(default)g)")
    sub.add_argument("--tol-oracle-margin", type=float, default=DEFAULT_TOL.oracle_margin,
                     help="oracle relative margin (default %(default)g)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bjortho",
        description="Birkhoff-James orthogonality and pointwise symmetry "
        "on finite atomic measure spaces",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    check = subs.add_parser("check", help="decide f perp g")
    check.add_argument("--space", choices=("sup", "l1", "lp"), required=True)
    check.add_argument("--p", type=float, default=None, help="exponent for --space lp")
    check.add_argument("--input", required=True, help="JSON or CSV instance file")
    check.add_argument("--f", required=True, help="name of the left function")
    check.add_argument("--g", required=True, help="name of the right function")
    check.add_argument("--oracle", action="store_true",
                       help="cross-check against the brute-force oracle")
    check.add_argument("--seed", type=int, default=None)
    _add_tolerance_flags(check)
    check.set_defaults(run=cmd_check)

    cls = subs.add_parser("classify", help="smoothness and pointwise symmetry of f")
    cls.add_argument("--space", choices=("sup", "l1", "lp"), required=True)
    cls.add_argument("--p", type=float, default=None)
    cls.add_argument("--input", required=True)
    cls.add_argument("--f", required=True)
    cls.add_argument("--witness", action="store_true",
                     help="attach oracle-verified witnesses for every false flag")
    cls.add_argument("--seed", type=int, default=None)
    _add_tolerance_flags(cls)
    cls.set_defaults(run=cmd_classify)

    st = subs.add_parser("selftest", help="run the randomized verification suites")
    st.add_argument("--trials", type=int, default=200)
    st.add_argument("--seed", type=int, default=None)
    st.add_argument("--dim-max", type=int, default=6)
    st.add_argument("--spaces", default="sup,l1,lp",
                    help="comma-separated families (default %(default)s)")
    st.add_argument("--p-list", default=None,
                    help="comma-separated lp exponents (default 1.2,1.5,3,4,7)")
    _add_tolerance_flags(st)
    st.set_defaults(run=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except SpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
