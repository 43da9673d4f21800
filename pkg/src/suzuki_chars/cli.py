"""suzuki-chars: tables, classes, verification and the acceptance run.

Exit codes: 0 pass, 1 verification failure, 2 parameter error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .field import FieldError
from .groups import ParameterError, SuzukiGroup, make_group

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARAM)


def _int_list(text: str) -> list[int]:
    body = text.strip().strip("[]()")
    try:
        return [int(x) for x in body.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def _epsilon(text: str):
    """An enumeration index ("3") or a coefficient list ("1,0" / "[1,0]")."""
    t = text.strip()
    if "," in t or t.startswith("["):
        return _int_list(t)
    try:
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"epsilon must be an index or a coefficient list, got {text!r}")


def _add_group_args(sp, required=True):
    sp.add_argument("--family", choices=["A", "B", "C", "D"], type=str.upper, required=required)
    sp.add_argument("--p", type=int, required=required)
    sp.add_argument("--m", type=int, required=required)
    sp.add_argument("--l", type=int, required=required)
    sp.add_argument("--epsilon", type=_epsilon, default=None,
                    help="index in [0, p^m) or little-endian coefficient list; families B, C, D only")
    sp.add_argument("--modulus", type=_int_list, default=None,
                    help="monic primitive modulus, coefficients from the leading 1 down")


def _group(args) -> SuzukiGroup:
    return make_group(args.family, args.p, args.m, args.l, args.epsilon, args.modulus)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_table(args) -> int:
    from .construct import character_table
    from .serialize import to_csv, to_json

    T = character_table(_group(args))
    _emit(to_csv(T) if args.format == "csv" else to_json(T), args.out)
    return EXIT_OK


def cmd_classes(args) -> int:
    from .serialize import dumps_json

    G = _group(args)
    F = G.ctx
    doc = {
        "group": G.describe(),
        "count": G.num_classes,
        "class_number_formula": G.class_number(),
        "classes": [{"rep": [list(F.coeffs(int(x))) for x in c.rep], "size": c.size}
                    for c in G.conjugacy_classes()],
    }
    _emit(dumps_json(doc), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .construct import character_table
    from .serialize import DocumentError, loads_json
    from .verify import ALL_CHECKS, document_check, run_checks

    checks = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else list(ALL_CHECKS)
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        print(f"error: unknown check(s) {', '.join(unknown)}; choose from {', '.join(ALL_CHECKS)}",
              file=sys.stderr)
        return EXIT_PARAM
    reports = []
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
            T = loads_json(text)
        except (OSError, UnicodeDecodeError, DocumentError) as e:
            print(f"error: cannot read {args.input}: {e}", file=sys.stderr)
            return EXIT_IO
        reports.append(document_check(T))
    else:
        if None in (args.family, args.p, args.m, args.l):
            print("error: give --input or all of --family --p --m --l", file=sys.stderr)
            return EXIT_PARAM
        T = character_table(_group(args))
    if reports[0:1] and not reports[0].passed:
        checks = [c for c in checks if c in ("classes", "closedform")]
    reports += run_checks(T, checks, args.threads)
    for r in reports:
        print(r.line())
    if args.report:
        from .serialize import dumps_json
        _emit(dumps_json({"group": T.group.describe(), "reports": [r.to_dict() for r in reports]}),
              args.report)
    failed = [r for r in reports if r.status == "fail"]
    if failed:
        print(f"FAIL: first counterexample in {failed[0].check}: "
              f"{json.dumps(failed[0].counterexample, sort_keys=True)}")
        sus = {r.check: r.counterexample.get("suspect") for r in failed if r.counterexample}
        if sus.get("orth1") is not None and sus.get("orth2") is not None:
            print(f"FAIL: suspect entry at character {sus['orth1']}, class {sus['orth2']}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    t0 = time.perf_counter()
    results = run_all(args.threads)
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed "
          f"in {time.perf_counter() - t0:.1f}s")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="suzuki-chars", description="Character tables of Suzuki p-groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="compute and print a character table")
    _add_group_args(t)
    t.add_argument("--format", choices=["json", "csv"], default="json")
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("classes", help="print the conjugacy classes")
    _add_group_args(c)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_classes)

    v = sub.add_parser("verify", help="verify a computed or stored table")
    _add_group_args(v, required=False)
    v.add_argument("--input", default=None, help="JSON document written by 'table'")
    v.add_argument("--checks", default=None,
                   help="comma-separated subset of orth1,orth2,central,profile,classes,closedform")
    v.add_argument("--threads", type=int, default=None,
                   help="worker threads for sampled orthogonality (default $SUZUKI_CHARS_THREADS or 1)")
    v.add_argument("--report", default=None, help="also write the reports as JSON to this path")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("selftest", help="run the acceptance corpus")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_PARAM
    try:
        return args.func(args)
    except (ParameterError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except BrokenPipeError:
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
