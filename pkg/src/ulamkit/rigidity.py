"""Finite-segment agreement between generated sequences and pattern codes.

Agreement is only ever certified on the checked range; reports say
"agrees" about [N, M], never anything about the infinite sequence. A
mismatch records the least offending integer and which side claimed it.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import (
    MAX_HORIZON_DEFAULT,
    UlamParams,
    UlamPrefix,
    generate_to_horizon,
    validate_params,
)
from .errors import ApplicabilityError, UlamkitError
from .fsutil import atomic_write_text
from .patterns import PatternCode, code_id, component_points

IN_ULAM_NOT_PATTERN = "in-ulam-not-pattern"
IN_PATTERN_NOT_ULAM = "in-pattern-not-ulam"


@dataclass(frozen=True)
class SegmentReport:
    a: int
    b: int
    code: str
    N: int
    M: int
    agrees: bool
    first_mismatch: tuple[int, str] | None
    matched_count: int


@dataclass(frozen=True)
class SweepEntry:
    n: int
    report: SegmentReport | None
    error: str | None


def _check_applicability(code: PatternCode, params: UlamParams,
                         override: bool) -> None:
    app = code.applicability
    if app is not None and not override and not app.admits(params.b):
        raise ApplicabilityError(
            f"code claims b ≡ {app.residue} (mod {app.modulus}), got b={params.b}"
        )


def _pattern_points_in_range(code: PatternCode, a: int, b: int,
                             lo: int, hi: int) -> np.ndarray:
    pts: set[int] = set()
    for comp in code.components:
        pts.update(component_points(comp, a, b, lo=lo, hi=hi))
    return np.array(sorted(pts), dtype=np.int64)


def _member_points_in_range(prefix: UlamPrefix, lo: int, hi: int) -> np.ndarray:
    i0 = int(np.searchsorted(prefix.terms, lo, side="left"))
    i1 = int(np.searchsorted(prefix.terms, hi, side="right"))
    return prefix.terms[i0:i1]


def _ensure_prefix(params: UlamParams, M: int, prefix: UlamPrefix | None,
                   max_horizon: int) -> UlamPrefix:
    if prefix is not None and prefix.params == params and prefix.horizon >= M:
        return prefix
    return generate_to_horizon(params, max(M, params.b), max_horizon)


def verify_segment(code: PatternCode, params: UlamParams, N: int, M: int,
                   prefix: UlamPrefix | None = None,
                   override_applicability: bool = False,
                   max_horizon: int = MAX_HORIZON_DEFAULT) -> SegmentReport:
    """Compare membership against the pattern pointwise on [N, M].

    matched_count is the number of positions confirmed agreeing before the
    first mismatch (the whole range when there is none). An empty range
    agrees vacuously.
    """
    _check_applicability(code, params, override_applicability)
    ident = code_id(code)
    if N > M:
        return SegmentReport(params.a, params.b, ident, N, M, True, None, 0)
    prefix = _ensure_prefix(params, M, prefix, max_horizon)
    members = _member_points_in_range(prefix, N, M)
    pattern = _pattern_points_in_range(code, params.a, params.b, N, M)
    sym = np.setxor1d(members, pattern)
    if sym.size == 0:
        return SegmentReport(params.a, params.b, ident, N, M, True, None,
                             M - N + 1)
    first = int(sym[0])
    i = int(np.searchsorted(members, first))
    in_ulam = i < members.size and int(members[i]) == first
    direction = IN_ULAM_NOT_PATTERN if in_ulam else IN_PATTERN_NOT_ULAM
    return SegmentReport(params.a, params.b, ident, N, M, False,
                         (first, direction), first - N)


def search_threshold(code: PatternCode, params: UlamParams, M: int,
                     prefix: UlamPrefix | None = None,
                     override_applicability: bool = False,
                     max_horizon: int = MAX_HORIZON_DEFAULT) -> int | None:
    """Least N <= M such that [N, M] agrees, or None when even [M, M] fails.

    Agreement is monotone in N (shrinking the range can only remove
    mismatches), so the answer is one past the last mismatch in [0, M].
    """
    _check_applicability(code, params, override_applicability)
    prefix = _ensure_prefix(params, M, prefix, max_horizon)
    members = _member_points_in_range(prefix, 0, M)
    pattern = _pattern_points_in_range(code, params.a, params.b, 0, M)
    sym = np.setxor1d(members, pattern)
    if sym.size == 0:
        return 0
    last = int(sym[-1])
    return last + 1 if last < M else None


def family_sweep(code: PatternCode, modulus: int, residue: int,
                 n_values, segment_rule: tuple[int, int], a: int = 1,
                 override_applicability: bool = False,
                 threads: int | None = None,
                 max_horizon: int = MAX_HORIZON_DEFAULT) -> list[SweepEntry]:
    """Verify the code against U(a, n) on [1, c*n + d] for each n.

    Entries keep the order of n_values. Per-n failures (wrong residue
    class, horizon limits, degenerate parameters) become error entries and
    the sweep continues.
    """
    c_seg, d_seg = segment_rule

    def one(n: int) -> SweepEntry:
        if n % modulus != residue:
            return SweepEntry(n, None, f"n={n} not ≡ {residue} (mod {modulus})")
        M = c_seg * n + d_seg
        try:
            params = validate_params(a, n)
            report = verify_segment(code, params, 1, M,
                                    override_applicability=override_applicability,
                                    max_horizon=max_horizon)
        except UlamkitError as e:
            return SweepEntry(n, None, str(e))
        return SweepEntry(n, report, None)

    todo = list(n_values)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, todo))
    return [one(n) for n in todo]


def report_obj(report: SegmentReport) -> dict:
    mismatch = None
    if report.first_mismatch is not None:
        mismatch = {"m": report.first_mismatch[0],
                    "direction": report.first_mismatch[1]}
    return {
        "a": report.a, "b": report.b, "code": report.code,
        "N": report.N, "M": report.M, "agrees": report.agrees,
        "first_mismatch": mismatch, "matched_count": report.matched_count,
    }


def entry_obj(entry: SweepEntry) -> dict:
    return {
        "n": entry.n,
        "report": None if entry.report is None else report_obj(entry.report),
        "error": entry.error,
    }


def sweep_jsonl(entries) -> str:
    """One JSON object per line, in entry order."""
    return "".join(json.dumps(entry_obj(e), separators=(",", ":")) + "\n"
                   for e in entries)


def sweep_csv(entries) -> str:
    """Summary table: n, range, agrees, first_mismatch."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "range_lo", "range_hi", "agrees", "first_mismatch", "error"])
    for e in entries:
        if e.report is None:
            writer.writerow([e.n, "", "", "", "", e.error])
        else:
            r = e.report
            mm = "" if r.first_mismatch is None else r.first_mismatch[0]
            writer.writerow([e.n, r.N, r.M, str(r.agrees).lower(), mm, ""])
    return buf.getvalue()


def write_sweep_reports(entries, jsonl_path: str | None = None,
                        csv_path: str | None = None) -> None:
    if jsonl_path:
        atomic_write_text(jsonl_path, sweep_jsonl(entries))
    if csv_path:
        atomic_write_text(csv_path, sweep_csv(entries))
