"""Command-line front end.

Exit codes: 0 verified, 1 mismatch or failed verification, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import InvalidParameter, MonomialMcKayError, UnsupportedFormat
from .group_core import (
    Case,
    CaseTag,
    FiniteMonomialGroup,
    GroupSpec,
    MonomialElement,
    check_case_parameter,
    closure,
    diagonal_subgroup,
    standard_group,
)
from .junior_fan import (
    export_geometry,
    junior_set,
    overlattice,
    symmetric_triangulation,
    symmetry_action,
    verify_triangulation,
)
from .mckay_verify import McKayReport, sweep, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class SpecError(Exception):
    """Malformed group spec file; the message names the offending field."""


# ---------------------------------------------------------------------------
# spec files


def _parse_phase(text, where: str) -> Fraction:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise SpecError(f"{where}: expected a fraction string like \"1/3\", got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"{where}: cannot parse {text!r} as a fraction") from None


def _parse_element(item, i: int) -> MonomialElement:
    where = f"generators[{i}]"
    if not isinstance(item, dict):
        raise SpecError(f"{where}: expected an object with \"perm\" and \"phases\"")
    perm = item.get("perm")
    phases = item.get("phases")
    if not isinstance(perm, list) or sorted(perm) != [0, 1, 2] or not all(isinstance(p, int) for p in perm):
        raise SpecError(f"{where}.perm: expected a permutation of [0, 1, 2], got {perm!r}")
    if not isinstance(phases, list) or len(phases) != 3:
        raise SpecError(f"{where}.phases: expected three fraction strings, got {phases!r}")
    fr = tuple(_parse_phase(p, f"{where}.phases[{k}]") for k, p in enumerate(phases))
    return MonomialElement(tuple(perm), fr)


def parse_spec(doc) -> GroupSpec:
    if not isinstance(doc, dict):
        raise SpecError("spec: expected a JSON object")
    has_case, has_gens = "case" in doc, "generators" in doc
    if has_case == has_gens:
        raise SpecError("spec: give exactly one of \"case\" or \"generators\"")
    if has_case:
        try:
            case = Case.parse(str(doc["case"]))
        except InvalidParameter as exc:
            raise SpecError(f"case: {exc}") from None
        r = doc.get("r", 1)
        if not isinstance(r, int) or isinstance(r, bool):
            raise SpecError(f"r: expected an integer, got {r!r}")
        try:
            check_case_parameter(case, r)
        except InvalidParameter as exc:
            raise SpecError(f"r: {exc}") from None
        return standard_group(case, r)
    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise SpecError("generators: expected a nonempty list")
    return GroupSpec(tuple(_parse_element(item, i) for i, item in enumerate(gens)))


def load_group(path: str) -> tuple[FiniteMonomialGroup, CaseTag | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    spec = parse_spec(doc)
    try:
        g = closure(spec)
    except MonomialMcKayError as exc:
        raise SpecError(f"generators: {exc}") from None
    return g, spec.label


# ---------------------------------------------------------------------------
# output


_COLUMNS = [
    ("case", "case"),
    ("r", "r"),
    ("|G|", "group_order"),
    ("|G'|", "diagonal_order"),
    ("chi formula", "chi_formula"),
    ("chi geometric", "chi_geometric"),
    ("classes formula", "classes_formula"),
    ("classes", "classes_bruteforce"),
    ("orbifold", "orbifold_euler"),
    ("verdict", "verdict"),
]


def _cell(value) -> str:
    if isinstance(value, bool):
        return "ok" if value else "FAIL"
    return str(value)


def format_table(rows: list[dict]) -> str:
    header = [title for title, _ in _COLUMNS]
    body = [[_cell(row.get(key, "")) for _, key in _COLUMNS] for row in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for cells in body:
        lines.append("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    return "\n".join(lines)


def _dump(report: McKayReport) -> str:
    return json.dumps(report.to_dict())


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    try:
        g, tag = load_group(args.spec)
        report = verify(g, tag)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MonomialMcKayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, AssertionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.pretty:
        print(format_table([report.to_dict()]))
    else:
        print(_dump(report))
    return EXIT_OK if report.verdict else EXIT_FAIL


def parse_range(text: str) -> list[int]:
    parts = text.split("..")
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2:
        raise ValueError(f"bad range {text!r}; expected a..b")
    try:
        a, b = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected integers a..b") from None
    if a < 1 or b < a:
        raise ValueError(f"bad range {text!r}; need 1 <= a <= b")
    return list(range(a, b + 1))


def cmd_sweep(args) -> int:
    try:
        case = Case.parse(args.case)
        if case in (Case.ABELIAN, Case.UNSUPPORTED):
            raise InvalidParameter(f"cannot sweep case {case.value}")
        r_values = parse_range(args.range)
    except (InvalidParameter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if case in (Case.III, Case.IV):
        skipped = [r for r in r_values if r % 3 == 0]
        if skipped:
            print(
                f"note: skipping r = {', '.join(map(str, skipped))} (r must not be divisible by 3 for case {case.value})",
                file=sys.stderr,
            )
        r_values = [r for r in r_values if r % 3]
    elif case is Case.V:
        if any(r != 1 for r in r_values):
            print("note: case V has no parameter; only r = 1 is run", file=sys.stderr)
        r_values = [1]
    table = sweep(case, r_values)
    if args.ndjson:
        for row in table.rows:
            print(json.dumps(row.to_dict()))
    else:
        print(format_table([row.to_dict() for row in table.rows if row.report is not None]))
        for row in table.rows:
            if row.error:
                print(f"r={row.r}: {row.error}")
    return EXIT_OK if table.ok else EXIT_FAIL


def cmd_triangulate(args) -> int:
    try:
        g, _ = load_group(args.spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        gprime = diagonal_subgroup(g)
        n = overlattice(gprime)
        w = symmetry_action(g)
        tri = symmetric_triangulation(junior_set(gprime), w)
        data = export_geometry(tri, args.format, w)
    except UnsupportedFormat as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MonomialMcKayError as exc:
        print(f"triangulation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = verify_triangulation(tri, n, w)
    Path(args.out).write_bytes(data)
    basic = "yes" if report.checks.get("basic") else "no"
    equivariant = "yes" if report.checks.get("equivariant") else "no"
    print(f"triangles: {report.triangle_count} (|G'| = {report.group_order})")
    print(f"all basic: {basic}")
    print(f"equivariant under W (order {w.order}): {equivariant}")
    print(f"verification: {'ok' if report.ok else 'FAILED at ' + str(report.failure)}")
    return EXIT_OK if report.ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monomial-mckay", description="Crepant resolutions of C^3/G for monomial groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="verify the McKay identity for one group")
    p.add_argument("spec", help="group spec JSON file")
    p.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="verify a family over a range of r")
    p.add_argument("case", help="I, II, III, IV or V")
    p.add_argument("range", help="a..b")
    p.add_argument("--ndjson", action="store_true", help="one JSON object per line")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("triangulate", help="write the equivariant triangulation of the junior simplex")
    p.add_argument("spec", help="group spec JSON file")
    p.add_argument("--format", default="json", help="json or svg")
    p.add_argument("--out", required=True, help="output path")
    p.set_defaults(func=cmd_triangulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
