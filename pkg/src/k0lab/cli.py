"""Command-line front end.

Subcommands: ``cayley`` (one weighted Cayley graph), ``dihedral`` (the
dihedral family), ``scan`` (batch tables over a family), ``snf`` (raw
Smith form of a matrix file), ``compare`` (isomorphism test between two
specs).  Exit codes: 0 success, 2 non-generating set, 3 invalid spec or
hypothesis failure, 64 usage error, 65 malformed input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from multiprocessing import Pool

from .classify import dihedral_theorem_row, kp_compare
from .errors import (
    GroupTableError,
    InvalidSpecError,
    NotGeneratingError,
    NotPurelyInfiniteSimpleError,
)
from .graphs import CayleySpec, build_cayley, read_group_table
from .k0 import K0Report, analyze, closed_form_S01
from .zmatrix import MatrixFormatError, cokernel, det, read_matrix, snf

EXIT_OK = 0
EXIT_NOT_GENERATING = 2
EXIT_INVALID = 3
EXIT_USAGE = 64
EXIT_BAD_FILE = 65

DEFAULT_SCAN_CAP = 100_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from sys.exit(2)
        raise UsageError(message)


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers") from None


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _spec_from_args(args) -> CayleySpec:
    gens = _parse_int_list(args.gens, "--gens")
    if not gens:
        raise UsageError("--gens must name at least one generator")
    weights = None
    if args.weights is not None:
        weights = _parse_int_list(args.weights, "--weights")
        if len(weights) != len(gens):
            raise UsageError("--weights must match --gens in length")
    if getattr(args, "group_table", None):
        with open(args.group_table, "r", encoding="utf-8") as fh:
            table = read_group_table(fh.read())
        return CayleySpec(table, tuple(gens), tuple(weights or [1] * len(gens)))
    return CayleySpec.cyclic(args.n, gens, weights)


def cmd_cayley(args) -> int:
    spec = _spec_from_args(args)
    report = analyze(spec, method=args.method)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(build_cayley(spec).to_dot())
    if args.json:
        print(report.to_json())
    else:
        print(report.render_text(), end="")
    return EXIT_OK


def cmd_dihedral(args) -> int:
    spec = CayleySpec.dihedral(args.n)
    report = analyze(spec)
    expected_group, expected_class = dihedral_theorem_row(args.n)
    if args.json:
        data = report.to_json_dict()
        data["expected"] = {
            "k0": expected_group.display(),
            "classification": expected_class.display() if expected_class else None,
        }
        print(_json_text(data))
    else:
        print(report.render_text(), end="")
        expect = expected_group.display()
        if expected_class is not None:
            expect += f", {expected_class.display()}"
        print(f"theorem row (n mod 6 = {args.n % 6}): {expect}")
    return EXIT_OK


def _report_row(report: K0Report, label: str) -> dict:
    return {
        "instance": label,
        "n": report.n,
        "generators": list(report.generators or []),
        "weights": list(report.weights or []),
        "det": str(report.det_value),
        "k0": report.k0.display() if report.k0 is not None else "",
        "classification": report.classification.display() if report.classification else "",
    }


def _scan_worker(job) -> dict:
    family, params = job
    if family == "dihedral":
        (n,) = params
        return _report_row(analyze(CayleySpec.dihedral(n)), f"dihedral n={n}")
    if family == "complete":
        n, loops = params
        gens = list(range(n))
        weights = [loops if g == 0 else 1 for g in gens]
        report = analyze(CayleySpec.cyclic(n, gens, weights))
        return _report_row(report, f"complete n={n} loops={loops}")
    if family == "k_cycle":
        n, w = params
        return _report_row(analyze(CayleySpec.cyclic(n, [1], [w])), f"k_cycle n={n} W={w}")
    if family == "s01":
        n, a, b = params
        report = analyze(CayleySpec.cyclic(n, [0, 1], [a, b]))
        row = _report_row(report, f"s01 n={n} a={a} b={b}")
        row["closed_form"] = closed_form_S01(n, a, b).display()
        return row
    if family == "cyclic_s":
        n, gens, weights = params
        label = f"cyclic n={n} S={{{','.join(map(str, gens))}}} w={{{','.join(map(str, weights))}}}"
        return _report_row(analyze(CayleySpec.cyclic(n, list(gens), list(weights))), label)
    raise ValueError(f"unknown family {family}")


def _scan_jobs(args) -> list[tuple]:
    from itertools import combinations, product
    from math import gcd

    if args.n_min > args.n_max or args.n_min < 1:
        raise UsageError("need 1 <= n-min <= n-max")
    ns = range(args.n_min, args.n_max + 1)
    family = args.family
    jobs: list[tuple] = []
    if family == "dihedral":
        jobs = [("dihedral", (n,)) for n in ns]
    elif family == "complete":
        jobs = [("complete", (n, args.loops)) for n in ns]
    elif family == "k_cycle":
        if args.w_min > args.w_max or args.w_min < 1:
            raise UsageError("need 1 <= w-min <= w-max")
        jobs = [("k_cycle", (n, w)) for n in ns for w in range(args.w_min, args.w_max + 1)]
    elif family == "s01":
        for bound, name in ((args.a_min, "a-min"), (args.b_min, "b-min")):
            if bound < 1:
                raise UsageError(f"--{name} must be positive")
        jobs = [
            ("s01", (n, a, b))
            for n in ns
            if n >= 2
            for a in range(args.a_min, args.a_max + 1)
            for b in range(args.b_min, args.b_max + 1)
        ]
    elif family == "cyclic_s":
        if args.max_gens < 1:
            raise UsageError("--max-gens must be positive")
        if args.max_weight < 1:
            raise UsageError("--max-weight must be positive")
        for n in ns:
            for size in range(1, args.max_gens + 1):
                for gens in combinations(range(n), size):
                    if gcd(n, *gens) != 1:
                        continue
                    for weights in product(range(1, args.max_weight + 1), repeat=size):
                        jobs.append(("cyclic_s", (n, gens, weights)))
    else:
        raise UsageError(f"unknown family {family!r}")
    if not jobs:
        raise UsageError("scan ranges produced no instances")
    if len(jobs) > args.cap:
        raise UsageError(f"scan would visit {len(jobs)} instances, over the cap {args.cap}")
    return jobs


_SCAN_COLUMNS = ["instance", "n", "det", "k0", "classification"]


def _render_scan(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _json_text(rows) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fieldnames = list(rows[0].keys())
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), max(len(str(r[c])) for r in rows)) for c in _SCAN_COLUMNS}
    lines = ["  ".join(c.ljust(widths[c]) for c in _SCAN_COLUMNS)]
    for r in rows:
        lines.append("  ".join(str(r[c]).ljust(widths[c]) for c in _SCAN_COLUMNS))
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> int:
    jobs = _scan_jobs(args)
    if args.parallel:
        with Pool() as pool:
            rows = pool.map(_scan_worker, jobs, chunksize=16)
    else:
        rows = [_scan_worker(job) for job in jobs]
    sys.stdout.write(_render_scan(rows, args.format))
    return EXIT_OK


def cmd_snf(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        m = read_matrix(fh.read())
    result = snf(m)
    coker = cokernel(m)
    if args.json:
        payload = {
            "rows": m.rows,
            "cols": m.cols,
            "diag": [str(d) for d in result.diag],
            "coker": coker.display(),
            "det": str(det(m)) if m.is_square else None,
        }
        print(_json_text(payload))
    else:
        print("diag: " + " ".join(str(d) for d in result.diag))
        print(f"coker: {coker.display()}")
        if m.is_square:
            print(f"det = {det(m)}")
    return EXIT_OK


def _parse_descriptor(text: str) -> CayleySpec:
    """Spec mini-language: family:key=value:...

    cyclic:n=6:gens=2,3[:weights=1,1] | dihedral:n=5 |
    complete:n=3:l=1 | kcycle:n=4:w=3
    """
    parts = text.split(":")
    family = parts[0]
    kv: dict[str, str] = {}
    for part in parts[1:]:
        if "=" not in part:
            raise UsageError(f"bad descriptor segment {part!r} in {text!r}")
        key, _, value = part.partition("=")
        kv[key] = value

    def need_int(key: str) -> int:
        if key not in kv:
            raise UsageError(f"descriptor {text!r} is missing {key}=")
        try:
            return int(kv[key])
        except ValueError:
            raise UsageError(f"descriptor {text!r}: {key} must be an integer") from None

    if family == "cyclic":
        n = need_int("n")
        if "gens" not in kv:
            raise UsageError(f"descriptor {text!r} is missing gens=")
        gens = _parse_int_list(kv["gens"], "gens")
        weights = None
        for key in ("weights", "w"):
            if key in kv:
                weights = _parse_int_list(kv[key], "weights")
        if weights is not None and len(weights) != len(gens):
            raise UsageError("descriptor weights must match gens in length")
        return CayleySpec.cyclic(n, gens, weights)
    if family == "dihedral":
        return CayleySpec.dihedral(need_int("n"))
    if family == "complete":
        n = need_int("n")
        loops = need_int("l")
        gens = list(range(n))
        return CayleySpec.cyclic(n, gens, [loops if g == 0 else 1 for g in gens])
    if family == "kcycle":
        return CayleySpec.cyclic(need_int("n"), [1], [need_int("w")])
    raise UsageError(f"unknown spec family {family!r}")


def cmd_compare(args) -> int:
    left = analyze(_parse_descriptor(args.left))
    right = analyze(_parse_descriptor(args.right))
    if not left.pis or not right.pis:
        raise NotPurelyInfiniteSimpleError("compare needs purely infinite simple inputs")
    outcome = kp_compare(left, right)
    if args.json:
        payload = {
            "left": left.to_json_dict(),
            "right": right.to_json_dict(),
            "verdict": outcome.verdict,
            "detail": outcome.detail,
            "multiplier": outcome.multiplier,
        }
        print(_json_text(payload))
    else:
        print(f"left:  K0 = {left.k0.display()}, det = {left.det_value}, "
              f"identity order {left.identity_order}, {left.classification.display()}")
        print(f"right: K0 = {right.k0.display()}, det = {right.det_value}, "
              f"identity order {right.identity_order}, {right.classification.display()}")
        print(f"verdict: {outcome.verdict}")
        print(f"  {outcome.detail}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k0lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cayley", help="analyze one weighted Cayley graph")
    p.add_argument("--n", type=int, required=True, help="cyclic group order")
    p.add_argument("--gens", required=True, help="comma-separated generators")
    p.add_argument("--weights", help="comma-separated weights, one per generator")
    p.add_argument("--group-table", help="group table file (overrides --n's cyclic group)")
    p.add_argument("--method", choices=["auto", "full", "companion", "both"], default="auto")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="FILE", help="write the graph in dot format")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("dihedral", help="analyze the dihedral Cayley graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dihedral)

    p = sub.add_parser("scan", help="tabulate a family")
    p.add_argument("--family", required=True,
                   choices=["cyclic_s", "dihedral", "complete", "k_cycle", "s01"])
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--loops", type=int, default=1, help="complete family: loops per vertex")
    p.add_argument("--w-min", type=int, default=2, help="k_cycle family: smallest weight")
    p.add_argument("--w-max", type=int, default=2, help="k_cycle family: largest weight")
    p.add_argument("--a-min", type=int, default=1)
    p.add_argument("--a-max", type=int, default=1)
    p.add_argument("--b-min", type=int, default=1)
    p.add_argument("--b-max", type=int, default=1)
    p.add_argument("--max-gens", type=int, default=2, help="cyclic_s family: largest |S|")
    p.add_argument("--max-weight", type=int, default=1, help="cyclic_s family: largest weight")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_SCAN_CAP)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("snf", help="Smith normal form of a matrix file")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("compare", help="isomorphism test between two specs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"k0lab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotGeneratingError as exc:
        print(f"k0lab: {exc}", file=sys.stderr)
        return EXIT_NOT_GENERATING
    except (InvalidSpecError, NotPurelyInfiniteSimpleError) as exc:
        print(f"k0lab: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (MatrixFormatError, GroupTableError) as exc:
        print(f"k0lab: bad input file: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except FileNotFoundError as exc:
        print(f"k0lab: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE


if __name__ == "__main__":
    sys.exit(main())
