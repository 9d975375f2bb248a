#!/usr/bin/env python3
"""
Range Verifier

Checks the classification theorem empirically over [lo, hi]: for every n
the brute-force oracle (divisor enumeration from a sieve segment) and the
shape classifier must agree, the tau identity must hold, and the
AP-length statistics must respect the |A_n| <= 5 bound.

Work is split into independent sieve segments that may run in worker
processes; per-segment reports are folded with an associative merge, so
the result does not depend on segmentation or parallelism.
"""

from __future__ import annotations

import dataclasses
import logging
import multiprocessing as mp
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import islice
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from tqdm import tqdm

import config
from ap_divisors import analyze, tau_identity_holds
from arith_core import spf_sieve
from classifier import SPORADIC, CaseId, classify, predicted_A
from errors import InvalidInputError, MemoryBudgetError

logger = logging.getLogger(__name__)

DIFFERENCE_CLASSES = ("a=1", "a=2", "a>2")

# Segments queued per worker process at a time.
_TASKS_PER_WORKER = 4


@dataclass(frozen=True)
class Mismatch:
    """An n on which the oracle and the classifier disagree."""

    n: int
    oracle_is_ap: bool
    classifier_case: str
    nontrivial_small_divisors: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "oracle_is_ap": self.oracle_is_ap,
            "classifier_case": self.classifier_case,
            "nontrivial_small_divisors": list(self.nontrivial_small_divisors),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Mismatch":
        return cls(
            n=data["n"],
            oracle_is_ap=data["oracle_is_ap"],
            classifier_case=data["classifier_case"],
            nontrivial_small_divisors=tuple(data["nontrivial_small_divisors"]),
        )


@dataclass(frozen=True)
class VerificationReport:
    """
    Aggregated results over [lo, hi].

    Lists (mismatches, tau_violations, extremal instances) are capped; the
    *_count fields keep the totals. elapsed and segments are execution
    metadata and do not take part in equality.
    """

    lo: int
    hi: int
    case_counts: Dict[str, int]
    mismatches: Tuple[Mismatch, ...]
    mismatch_count: int
    k_histogram_ap: Dict[int, int]
    max_k_ap: Optional[int]
    tau_violations: Tuple[int, ...]
    tau_violation_count: int
    max_k_by_difference: Dict[str, int]
    extremal_ap_instances: Dict[int, Tuple[int, ...]]
    mismatch_cap: int = config.MISMATCH_CAP
    extremal_cap: int = config.EXTREMAL_CAP
    elapsed: float = field(default=0.0, compare=False)
    segments: int = field(default=1, compare=False)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    @property
    def throughput(self) -> float:
        """Numbers verified per second."""
        return self.size / self.elapsed if self.elapsed > 0 else 0.0

    @property
    def ap_instances(self) -> int:
        return sum(self.k_histogram_ap.values())

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """
        Combine with the report of the range immediately to the right.

        Raises:
            InvalidInputError: The ranges are not adjacent
        """
        if other.lo != self.hi + 1:
            raise InvalidInputError(
                f"cannot merge [{self.lo}, {self.hi}] with non-adjacent [{other.lo}, {other.hi}]"
            )

        extremal = {}
        for k in sorted(set(self.extremal_ap_instances) | set(other.extremal_ap_instances)):
            joined = self.extremal_ap_instances.get(k, ()) + other.extremal_ap_instances.get(k, ())
            extremal[k] = joined[:self.extremal_cap]

        by_difference = dict(self.max_k_by_difference)
        for key, value in other.max_k_by_difference.items():
            by_difference[key] = max(by_difference.get(key, value), value)

        maxima = [k for k in (self.max_k_ap, other.max_k_ap) if k is not None]

        return VerificationReport(
            lo=self.lo,
            hi=other.hi,
            case_counts=_add_counts(self.case_counts, other.case_counts),
            mismatches=(self.mismatches + other.mismatches)[:self.mismatch_cap],
            mismatch_count=self.mismatch_count + other.mismatch_count,
            k_histogram_ap=_add_counts(self.k_histogram_ap, other.k_histogram_ap),
            max_k_ap=max(maxima) if maxima else None,
            tau_violations=(self.tau_violations + other.tau_violations)[:self.mismatch_cap],
            tau_violation_count=self.tau_violation_count + other.tau_violation_count,
            max_k_by_difference={k: by_difference[k] for k in DIFFERENCE_CLASSES if k in by_difference},
            extremal_ap_instances=extremal,
            mismatch_cap=self.mismatch_cap,
            extremal_cap=self.extremal_cap,
            elapsed=self.elapsed + other.elapsed,
            segments=self.segments + other.segments,
        )

    def to_dict(self) -> dict:
        return {
            "range": [self.lo, self.hi],
            "case_counts": dict(self.case_counts),
            "mismatches": [m.to_dict() for m in self.mismatches],
            "mismatch_count": self.mismatch_count,
            "k_histogram_ap": {str(k): v for k, v in sorted(self.k_histogram_ap.items())},
            "max_k_ap": self.max_k_ap,
            "tau_violations": list(self.tau_violations),
            "tau_violation_count": self.tau_violation_count,
            "max_k_by_difference": dict(self.max_k_by_difference),
            "extremal_ap_instances": {
                str(k): list(v) for k, v in sorted(self.extremal_ap_instances.items())
            },
            "mismatch_cap": self.mismatch_cap,
            "extremal_cap": self.extremal_cap,
            "elapsed": self.elapsed,
            "segments": self.segments,
            "throughput": self.throughput,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        lo, hi = data["range"]
        return cls(
            lo=lo,
            hi=hi,
            case_counts=dict(data["case_counts"]),
            mismatches=tuple(Mismatch.from_dict(m) for m in data["mismatches"]),
            mismatch_count=data["mismatch_count"],
            k_histogram_ap={int(k): v for k, v in data["k_histogram_ap"].items()},
            max_k_ap=data["max_k_ap"],
            tau_violations=tuple(data["tau_violations"]),
            tau_violation_count=data["tau_violation_count"],
            max_k_by_difference=dict(data["max_k_by_difference"]),
            extremal_ap_instances={
                int(k): tuple(v) for k, v in data["extremal_ap_instances"].items()
            },
            mismatch_cap=data["mismatch_cap"],
            extremal_cap=data["extremal_cap"],
            elapsed=data["elapsed"],
            segments=data["segments"],
        )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witnesses: Tuple[int, ...] = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": list(self.witnesses),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs for verify_range (defaults come from config.py)."""

    jobs: int = 1
    segment_size: int = config.SEGMENT_SIZE
    mismatch_cap: int = config.MISMATCH_CAP
    extremal_cap: int = config.EXTREMAL_CAP
    progress: bool = False


def _add_counts(left: dict, right: dict) -> dict:
    keys = list(left) + [k for k in right if k not in left]
    return {k: left.get(k, 0) + right.get(k, 0) for k in keys}


def _empty_case_counts() -> Dict[str, int]:
    return {case_id.value: 0 for case_id in CaseId}


def _empty_histogram() -> Dict[int, int]:
    return {k: 0 for k in range(6)}


def _difference_class(a: int) -> str:
    return "a=1" if a == 1 else "a=2" if a == 2 else "a>2"


def verify_segment(
    lo: int,
    hi: int,
    mismatch_cap: int = config.MISMATCH_CAP,
    extremal_cap: int = config.EXTREMAL_CAP,
    max_segment: Optional[int] = None,
) -> VerificationReport:
    """
    Verify a single sieve segment in the current process.

    Args:
        lo: First number (>= 2)
        hi: Last number (>= lo)
        mismatch_cap: Mismatches / tau violations kept with witness data
        extremal_cap: AP instances kept per k >= 4
        max_segment: Memory budget for the sieve segment

    Returns:
        VerificationReport: Report over [lo, hi]
    """
    started = time.perf_counter()
    table = spf_sieve(lo, hi, max_segment=max_segment)

    case_counts = Counter()
    histogram = Counter()
    by_difference: Dict[str, int] = {}
    extremal: Dict[int, List[int]] = {}
    mismatches: List[Mismatch] = []
    mismatch_count = 0
    tau_violations: List[int] = []
    tau_violation_count = 0

    for f in table.factorizations():
        n = f.n
        analysis = analyze(n, f)
        label = classify(f)
        case_counts[label.case_id.value] += 1

        if not tau_identity_holds(analysis):
            tau_violation_count += 1
            if len(tau_violations) < mismatch_cap:
                tau_violations.append(n)

        if analysis.is_ap:
            k = analysis.k
            histogram[k] += 1
            if k >= 2:
                key = _difference_class(analysis.common_difference)
                by_difference[key] = max(by_difference.get(key, k), k)
            if k >= 4:
                instances = extremal.setdefault(k, [])
                if len(instances) < extremal_cap:
                    instances.append(n)

        agree = label.is_ap == analysis.is_ap
        if agree and label.is_ap:
            agree = predicted_A(label) == list(analysis.nontrivial_small_divisors)
        if not agree:
            mismatch_count += 1
            if len(mismatches) < mismatch_cap:
                mismatches.append(
                    Mismatch(n, analysis.is_ap, label.case_id.value, analysis.nontrivial_small_divisors)
                )

    elapsed = time.perf_counter() - started
    if elapsed > config.SLOW_SEGMENT_SECONDS:
        logger.warning("Segment [%d, %d] took %.1fs", lo, hi, elapsed)
    if mismatch_count or tau_violation_count:
        logger.warning(
            "Segment [%d, %d]: %d mismatches, %d tau violations",
            lo, hi, mismatch_count, tau_violation_count,
        )

    counts = _empty_case_counts()
    counts.update(case_counts)
    hist = _empty_histogram()
    hist.update(histogram)
    hist = {k: hist[k] for k in sorted(hist)}

    return VerificationReport(
        lo=lo,
        hi=hi,
        case_counts=counts,
        mismatches=tuple(mismatches),
        mismatch_count=mismatch_count,
        k_histogram_ap=hist,
        max_k_ap=max(histogram) if histogram else None,
        tau_violations=tuple(tau_violations),
        tau_violation_count=tau_violation_count,
        max_k_by_difference={k: by_difference[k] for k in DIFFERENCE_CLASSES if k in by_difference},
        extremal_ap_instances={k: tuple(extremal[k]) for k in sorted(extremal)},
        mismatch_cap=mismatch_cap,
        extremal_cap=extremal_cap,
        elapsed=elapsed,
        segments=1,
    )


def _verify_segment_task(args: Tuple[int, int, int, int, int]) -> VerificationReport:
    lo, hi, mismatch_cap, extremal_cap, max_segment = args
    return verify_segment(lo, hi, mismatch_cap, extremal_cap, max_segment)


def split_range(lo: int, hi: int, segment_size: int) -> Iterator[Tuple[int, int]]:
    """Yield consecutive segments of [lo, hi] with at most segment_size numbers each."""
    for start in range(lo, hi + 1, segment_size):
        yield start, min(start + segment_size - 1, hi)


def verify_range(lo: int, hi: int, settings: Optional[VerifyConfig] = None) -> VerificationReport:
    """
    Verify every n in [lo, hi].

    Segments are produced lazily and each report is merged as soon as it
    arrives, so memory does not grow with the number of segments.

    Args:
        lo: First number (>= 2)
        hi: Last number (>= lo)
        settings: Parallelism, segment size and caps

    Returns:
        VerificationReport: Identical for any segmentation or job count
            (apart from elapsed and segments)

    Raises:
        InvalidInputError: lo < 2 or lo > hi
        MemoryBudgetError: segment_size above config.MAX_SEGMENT_SIZE
    """
    settings = settings or VerifyConfig()
    if lo < 2 or hi < lo:
        raise InvalidInputError(f"invalid verification range [{lo}, {hi}]")
    if settings.segment_size < 1:
        raise InvalidInputError(f"segment size must be positive, got {settings.segment_size}")
    if settings.segment_size > config.MAX_SEGMENT_SIZE:
        raise MemoryBudgetError(
            f"segment size {settings.segment_size} exceeds the budget of {config.MAX_SEGMENT_SIZE}"
        )

    segment_count = -(-(hi - lo + 1) // settings.segment_size)
    tasks = (
        (a, b, settings.mismatch_cap, settings.extremal_cap, config.MAX_SEGMENT_SIZE)
        for a, b in split_range(lo, hi, settings.segment_size)
    )
    jobs = max(1, min(settings.jobs, segment_count))
    logger.info("Verifying [%d, %d] in %d segments on %d worker(s)", lo, hi, segment_count, jobs)

    started = time.perf_counter()
    with tqdm(total=hi - lo + 1, desc="verify", unit=" n", file=sys.stderr,
              disable=not settings.progress) as progress_bar:
        if jobs == 1:
            report = _fold(map(_verify_segment_task, tasks), progress_bar)
        else:
            with mp.get_context().Pool(processes=jobs) as pool:
                report = _fold(_windowed_imap(pool, tasks, jobs * _TASKS_PER_WORKER), progress_bar)

    report = dataclasses.replace(report, elapsed=time.perf_counter() - started, segments=segment_count)
    logger.info(
        "Verified %d numbers in %.2fs (%.0f n/s): %d mismatches, %d tau violations",
        report.size, report.elapsed, report.throughput, report.mismatch_count, report.tau_violation_count,
    )
    return report


def _windowed_imap(pool, tasks: Iterator[tuple], window: int) -> Iterator[VerificationReport]:
    """imap over tasks, never queueing more than window segments at once."""
    while True:
        batch = list(islice(tasks, window))
        if not batch:
            return
        yield from pool.imap(_verify_segment_task, batch)


def _fold(results: Iterable[VerificationReport], progress_bar: tqdm) -> VerificationReport:
    """Merge segment reports in order while advancing the progress bar."""
    total = None
    for segment in results:
        total = segment if total is None else total.merge(segment)
        progress_bar.update(segment.size)
        if total.mismatch_count:
            progress_bar.set_postfix_str(f"mismatches: {total.mismatch_count}")
    return total


def lemma_consequence_checks(report: VerificationReport) -> List[CheckResult]:
    """
    Range-level consequences of the length lemmas and case eliminations.

    Returns:
        List[CheckResult]: NO-K-GE-6, NO-K-EQ-4, MAX-K-IS-5-ONLY-AT-60,
            SPORADIC-UNIQUENESS, SMALL-DIFFERENCE-BOUND, LARGE-DIFFERENCE-BOUND
    """
    hist, extremal = report.k_histogram_ap, report.extremal_ap_instances
    checks = []

    long_counts = {k: c for k, c in hist.items() if k >= 6 and c}
    long_witnesses = tuple(n for k in sorted(extremal) if k >= 6 for n in extremal[k])
    checks.append(CheckResult(
        "NO-K-GE-6",
        not long_counts,
        long_witnesses,
        f"AP instances with k >= 6: {sum(long_counts.values())}",
    ))

    four = hist.get(4, 0)
    checks.append(CheckResult(
        "NO-K-EQ-4", four == 0, extremal.get(4, ()), f"AP instances with k = 4: {four}",
    ))

    fives = extremal.get(5, ())
    five_count = hist.get(5, 0)
    checks.append(CheckResult(
        "MAX-K-IS-5-ONLY-AT-60",
        five_count == len(fives) and all(n == 60 for n in fives),
        tuple(n for n in fives if n != 60),
        f"AP instances with k = 5: {five_count}",
    ))

    off = []
    for n, case_id in sorted(SPORADIC.items()):
        expected = 1 if report.lo <= n <= report.hi else 0
        if report.case_counts.get(case_id.value, 0) != expected:
            off.append(n)
    checks.append(CheckResult(
        "SPORADIC-UNIQUENESS",
        not off,
        tuple(off),
        "families IX, XI, XII have one member each when in range",
    ))

    small = max(report.max_k_by_difference.get("a=1", 0), report.max_k_by_difference.get("a=2", 0))
    checks.append(CheckResult(
        "SMALL-DIFFERENCE-BOUND", small <= 5, (), f"max k with a in {{1, 2}}: {small}",
    ))
    large = report.max_k_by_difference.get("a>2", 0)
    checks.append(CheckResult(
        "LARGE-DIFFERENCE-BOUND", large <= 5, (), f"max k with a > 2: {large}",
    ))
    return checks


def verification_passed(report: VerificationReport, checks: Optional[List[CheckResult]] = None) -> bool:
    """True iff there are no mismatches, no tau violations and every check passes."""
    checks = lemma_consequence_checks(report) if checks is None else checks
    return (
        report.mismatch_count == 0
        and report.tau_violation_count == 0
        and all(check.passed for check in checks)
    )
