"""Command line: ``gamma0pic {verify-identities,scan,special-points,lambda-order}``.

Exit status is 0 when every check passes, 1 on a property violation and 2
on a configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .commands import (
    CertificateMismatch,
    ConfigInvalid,
    ScanConfig,
    cmd_lambda_order,
    cmd_scan,
    cmd_special_points,
    cmd_verify_identities,
    scan_csv,
)
from .symcheck import WeightGrading

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2


def dump_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _verify_text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
        if not c["passed"]:
            for key, val in c["details"].items():
                lines.append(f"      {key}: {val}")
    lines.append(f"{report['passed']}/{report['total']} checks pass")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gamma0pic", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-identities", help="polynomial identities and weight checks")
    v.add_argument("--json", action="store_true", help="emit the JSON report")
    v.add_argument("--self-test", action="store_true", help="run with the wrong grading wt(x0) = 3; the weight checks must fail")

    s = sub.add_parser("scan", help="all curves and level structures over F_{p^k}")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--level", type=int, required=True, choices=(2, 3))
    s.add_argument("--geometric", action="store_true", help="extend each curve until E[N] and its automorphisms are rational")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out", help="write the report here instead of stdout")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")

    sp = sub.add_parser("special-points", help="the j = 0 and j = 1728 worked examples")
    sp.add_argument("--p", type=int, required=True)

    lo = sub.add_parser("lambda-order", help="order of the Hodge bundle with both certificates")
    lo.add_argument("--level", type=int, required=True, choices=(2, 3))
    lo.add_argument("--p", type=int, required=True)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "verify-identities":
            grading = WeightGrading(x0=3) if args.self_test else WeightGrading()
            report = cmd_verify_identities(grading)
            _emit(dump_json(report) if args.json else _verify_text(report), None)
            return EXIT_OK if report["ok"] else EXIT_VIOLATION
        if args.command == "scan":
            cfg = ScanConfig(args.p, args.k, args.level, args.geometric, args.format)
            report = cmd_scan(cfg, jobs=args.jobs)
            for w in report["warnings"]:
                logging.warning(w)
            _emit(scan_csv(report) if cfg.format == "csv" else dump_json(report), args.out)
            return EXIT_OK if report["passed"] else EXIT_VIOLATION
        if args.command == "special-points":
            report = cmd_special_points(args.p)
            _emit(dump_json(report), None)
            return EXIT_OK if report["passed"] else EXIT_VIOLATION
        if args.command == "lambda-order":
            try:
                report = cmd_lambda_order(args.level, args.p)
            except CertificateMismatch as exc:
                logging.error("%s", exc)
                return EXIT_VIOLATION
            _emit(dump_json(report), None)
            return EXIT_OK
    except ConfigInvalid as exc:
        logging.error("%s", exc)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
