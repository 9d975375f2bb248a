#!/usr/bin/env python3
"""
Small Divisors in AP - command line

Analyze and classify single numbers, verify the classification over a
range, and enumerate families and prime triples.

Usage:
    python cli.py analyze 60
    python cli.py classify 105 --format json
    python cli.py verify --from 2 --to 1000000 --jobs 8
    python cli.py list IX --max 1000000
    python cli.py triples --max 1000 --format csv

Exit codes: 0 success / verified, 1 verification failure, 2 usage error.
"""

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import config
from ap_divisors import analyze
from arith_core import UINT64_LIMIT, factorize
from classifier import classify, explain, parse_case_id
from errors import ClassificationError, ConfigError, InvalidInputError, MemoryBudgetError
from generator import ap_numbers, enumerate_family, prime_ap_triples
from report_html import save_report_html
from verifier import VerifyConfig, lemma_consequence_checks, verification_passed, verify_range

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class OutputRecord:
    """Envelope for every machine-readable result."""

    schema_version: str
    command: str
    payload: dict

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "command": self.command, "payload": self.payload}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        return cls(data["schema_version"], data["command"], data["payload"])


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer") from None
    if value < 1:
        raise ConfigError(f"{name}={raw!r} must be positive")
    return value


def load_segment_size() -> int:
    """Segment size from APDIV_SEGMENT_SIZE, falling back to config.py."""
    return _env_int(config.ENV_SEGMENT_SIZE, config.SEGMENT_SIZE)


def load_jobs() -> int:
    """Worker count from APDIV_JOBS, falling back to config.py."""
    return _env_int(config.ENV_JOBS, config.DEFAULT_JOBS)


def setup_logging(level: Optional[str]) -> None:
    level = (level or os.getenv(config.ENV_LOG_LEVEL) or config.LOG_LEVEL).upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR"):
        raise ConfigError(f"unknown log level {level!r}")
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr, force=True)


def _uint64(text: str) -> int:
    try:
        value = int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1 or value >= UINT64_LIMIT:
        raise argparse.ArgumentTypeError(f"{text} is outside [1, 2**64)")
    return value


def _emit(record: OutputRecord, fmt: str, text_lines: Iterable[str],
          csv_header: Sequence[str], csv_rows: Iterable[Sequence]) -> None:
    if fmt == "json":
        print(record.to_json())
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
    else:
        for line in text_lines:
            print(line)


def _joined(values: Iterable[int]) -> str:
    return " ".join(str(v) for v in values)


def cmd_analyze(args: argparse.Namespace) -> int:
    n = args.n
    f = factorize(n)
    analysis = analyze(n, f)
    payload = analysis.to_dict()
    payload["factorization"] = str(f)
    payload["note"] = "n = 1 is a unit, outside the theorem hypothesis n >= 2" if n == 1 else ""
    record = OutputRecord(config.SCHEMA_VERSION, "analyze", payload)

    lines = [
        f"🔢 n = {n} = {f}",
        f"   S_n: {list(analysis.small_divisors)}",
        f"   A_n: {list(analysis.nontrivial_small_divisors)}  (k = {analysis.k})",
        f"   τ(n) = {analysis.tau}{'  (square)' if analysis.is_square else ''}",
    ]
    if analysis.is_ap:
        lines.append(
            f"✅ A_n is in AP (first term {analysis.first_term}, "
            f"common difference {analysis.common_difference})"
        )
    else:
        lines.append("❌ A_n is not in AP")
    if payload["note"]:
        lines.append(f"💡 {payload['note']}")

    header = ["n", "k", "tau", "is_square", "is_ap", "first_term", "common_difference",
              "small_divisors", "nontrivial_small_divisors"]
    row = [n, analysis.k, analysis.tau, analysis.is_square, analysis.is_ap,
           analysis.first_term if analysis.first_term is not None else "",
           analysis.common_difference if analysis.common_difference is not None else "",
           _joined(analysis.small_divisors), _joined(analysis.nontrivial_small_divisors)]
    _emit(record, args.format, lines, header, [row])
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    f = factorize(args.n)
    explanation = explain(f)
    label = classify(f)
    record = OutputRecord(config.SCHEMA_VERSION, "classify", {
        "n": args.n,
        "label": label.to_dict(),
        "explanation": explanation.to_dict(),
    })

    witnesses = ", ".join(str(p) for p in label.witnesses) or "-"
    lines = [
        f"🔢 n = {args.n} = {explanation.factorization}",
        f"   shape: {explanation.shape}",
        f"   branch: {explanation.branch}",
        f"   τ(n) = {explanation.tau}, forces k = {explanation.tau_case_k}",
        f"🏷️  {label.case_id} ({explanation.citation}), witnesses: {witnesses}",
    ]
    if explanation.note:
        lines.append(f"💡 {explanation.note}")

    header = ["n", "case_id", "witnesses", "predicted_k", "shape", "branch", "citation"]
    row = [args.n, label.case_id.value, _joined(label.witnesses),
           "" if label.predicted_k is None else label.predicted_k,
           explanation.shape, explanation.branch, explanation.citation]
    _emit(record, args.format, lines, header, [row])
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.lo < 2 or args.hi < args.lo:
        print(f"❌ invalid range [{args.lo}, {args.hi}]: need 2 <= from <= to", file=sys.stderr)
        return EXIT_USAGE

    settings = VerifyConfig(
        jobs=args.jobs if args.jobs is not None else load_jobs(),
        segment_size=args.segment_size if args.segment_size is not None else load_segment_size(),
        mismatch_cap=args.mismatch_cap,
        progress=config.SHOW_PROGRESS and not args.no_progress and args.format == "text",
    )
    report = verify_range(args.lo, args.hi, settings)
    checks = lemma_consequence_checks(report)
    passed = verification_passed(report, checks)

    record = OutputRecord(config.SCHEMA_VERSION, "verify", {
        "report": report.to_dict(),
        "checks": [c.to_dict() for c in checks],
        "passed": passed,
    })

    lines = [
        f"🔍 Verified [{report.lo:,}, {report.hi:,}] in {report.elapsed:.2f}s "
        f"({report.throughput:,.0f} n/s, {report.segments} segment(s))",
        f"   mismatches: {report.mismatch_count}   τ violations: {report.tau_violation_count}",
        f"   longest AP: {report.max_k_ap}   AP instances: {report.ap_instances:,}",
        "📊 Families:",
    ]
    lines += [f"   • {case}: {count:,}" for case, count in report.case_counts.items() if count]
    lines.append("📏 k histogram (AP instances):")
    lines += [f"   • k = {k}: {count:,}" for k, count in sorted(report.k_histogram_ap.items())]
    lines.append("🧪 Checks:")
    lines += [f"   {'✅' if c.passed else '❌'} {c.name}: {c.detail}" for c in checks]
    for m in report.mismatches:
        lines.append(
            f"⚠️  n = {m.n}: oracle AP = {m.oracle_is_ap}, classifier = {m.classifier_case}, "
            f"A_n = {list(m.nontrivial_small_divisors)}"
        )
    lines.append("✅ Theorem verified on this range" if passed else "❌ Verification failed")

    rows = [["range", "lo", report.lo], ["range", "hi", report.hi]]
    rows += [["case_counts", case, count] for case, count in report.case_counts.items()]
    rows += [["k_histogram_ap", k, count] for k, count in sorted(report.k_histogram_ap.items())]
    rows += [["totals", "mismatch_count", report.mismatch_count],
             ["totals", "tau_violation_count", report.tau_violation_count],
             ["totals", "max_k_ap", "" if report.max_k_ap is None else report.max_k_ap]]
    rows += [["checks", c.name, "pass" if c.passed else "fail"] for c in checks]
    _emit(record, args.format, lines, ["section", "key", "value"], rows)

    if args.html:
        save_report_html(report, checks, args.html)
        print(f"🌐 HTML report saved to: {args.html}", file=sys.stderr)

    return EXIT_OK if passed else EXIT_FAILED


def cmd_list(args: argparse.Namespace) -> int:
    if args.case.strip().lower() == "all":
        case_name = "all"
        members = ap_numbers(args.max) if args.max >= 2 else []
    else:
        case_id = parse_case_id(args.case)
        case_name = case_id.value
        members = enumerate_family(case_id, args.max)

    record = OutputRecord(config.SCHEMA_VERSION, "list", {
        "case_id": case_name,
        "max_n": args.max,
        "members": members,
    })
    lines = [f"📋 Family {case_name} up to {args.max:,}: {len(members):,} member(s)", str(members)]
    _emit(record, args.format, lines, ["n"], ([n] for n in members))
    return EXIT_OK


def cmd_triples(args: argparse.Namespace) -> int:
    if args.max < 2:
        print("❌ --max must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    triples = prime_ap_triples(args.max)
    record = OutputRecord(config.SCHEMA_VERSION, "triples", {
        "max_n": args.max,
        "triples": [t.to_dict() for t in triples],
    })
    lines = [f"🔺 Prime triples p < q < r with 2q = p + r and pqr <= {args.max:,}: {len(triples)}"]
    lines += [f"   ({t.p}, {t.q}, {t.r})  ->  {t.product:,}" for t in triples]
    _emit(record, args.format, lines, ["p", "q", "r", "product"],
          ([t.p, t.q, t.r, t.product] for t in triples))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="Output format (default: text)")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"),
                        type=str.upper, help=f"Logging level (default: ${config.ENV_LOG_LEVEL} or WARNING)")

    parser = argparse.ArgumentParser(
        prog="cli.py",
        description="Nontrivial small divisors in arithmetic progression.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("analyze", parents=[common], help="Show S_n, A_n and the AP verdict")
    p.add_argument("n", type=_uint64)
    p.set_defaults(handler=cmd_analyze)

    p = commands.add_parser("classify", parents=[common], help="Name the family of n")
    p.add_argument("n", type=_uint64)
    p.set_defaults(handler=cmd_classify)

    p = commands.add_parser("verify", parents=[common], help="Verify the classification over a range")
    p.add_argument("--from", dest="lo", type=_uint64, required=True, help="First n (>= 2)")
    p.add_argument("--to", dest="hi", type=_uint64, required=True, help="Last n")
    p.add_argument("--jobs", type=_uint64, help=f"Worker processes (default: ${config.ENV_JOBS} or CPU count)")
    p.add_argument("--segment-size", type=_uint64,
                   help=f"Numbers per sieve segment (default: ${config.ENV_SEGMENT_SIZE} or {config.SEGMENT_SIZE})")
    p.add_argument("--mismatch-cap", type=_uint64, default=config.MISMATCH_CAP,
                   help="Mismatches kept with witness data")
    p.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    p.add_argument("--html", metavar="FILE", help="Also write an HTML report to FILE")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("list", parents=[common], help="Enumerate one family (or 'all')")
    p.add_argument("case", help="I..XII, an alias such as 36-family, or 'all'")
    p.add_argument("--max", type=_uint64, required=True, help="Inclusive upper bound")
    p.set_defaults(handler=cmd_list)

    p = commands.add_parser("triples", parents=[common], help="Prime triples p < q < r with 2q = p + r")
    p.add_argument("--max", type=_uint64, required=True, help="Bound on the product pqr")
    p.set_defaults(handler=cmd_triples)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (None, 0) else EXIT_USAGE

    try:
        setup_logging(args.log_level)
        return args.handler(args)
    except (InvalidInputError, ConfigError, MemoryBudgetError) as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except ClassificationError as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
