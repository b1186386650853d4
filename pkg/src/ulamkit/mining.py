"""Recover interval patterns with endpoints linear in n for U(1, n).

A computed window of U(1, n) is decomposed into maximal runs; runs are
aligned across several n values by index, endpoint coefficients are fitted
exactly from the two extreme samples, and the remaining samples plus
held-out n values act as verification. Only trivial masks are produced;
anything that cannot be expressed as aligned integer-sloped runs is a hard
failure, never a silent drop.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import MAX_HORIZON_DEFAULT, generate_to_horizon, validate_params
from .errors import AlignmentFailure, FitFailure, InvalidParameters
from .patterns import Applicability, PatternCode, PatternComponent
from .rigidity import SegmentReport, verify_segment


@dataclass(frozen=True)
class RunDecomposition:
    n: int
    runs: tuple  # ((lo, hi), ...) disjoint, sorted, maximal


@dataclass(frozen=True)
class MinedComponent:
    slope_lo: int
    intercept_lo: int
    slope_hi: int
    intercept_hi: int
    verified_on: tuple
    misaligned_on: tuple


def _check_class(modulus: int, residue: int) -> None:
    if not isinstance(modulus, int) or not isinstance(residue, int):
        raise InvalidParameters("modulus and residue must be integers")
    if modulus < 1 or not 0 <= residue < modulus:
        raise InvalidParameters(
            f"invalid residue class {residue} (mod {modulus})")


def runs(values) -> tuple:
    """Maximal-run decomposition of a sorted duplicate-free integer list."""
    seq = [int(v) for v in values]
    if any(y <= x for x, y in zip(seq, seq[1:])):
        raise InvalidParameters("values must be strictly increasing")
    out: list[list[int]] = []
    for v in seq:
        if out and v == out[-1][1] + 1:
            out[-1][1] = v
        else:
            out.append([v, v])
    return tuple((lo, hi) for lo, hi in out)


def run_decomposition(n: int, values) -> RunDecomposition:
    return RunDecomposition(n, runs(values))


def flatten(decomp: RunDecomposition) -> list[int]:
    """Inverse of runs(): the underlying sorted point list."""
    out: list[int] = []
    for lo, hi in decomp.runs:
        out.extend(range(lo, hi + 1))
    return out


def _fit_line(n1: int, v1: int, n2: int, v2: int, run_index: int,
              side: str) -> tuple[int, int]:
    num = v2 - v1
    den = n2 - n1
    if num % den:
        raise FitFailure(
            f"run {run_index}: {side} endpoints {v1}@n={n1}, {v2}@n={n2} "
            f"give non-integer slope {num}/{den}", run_index=run_index)
    slope = num // den
    return slope, v1 - slope * n1


def fit_components(samples, modulus: int, residue: int) -> list[MinedComponent]:
    """Fit endpoint lines per run index across aligned samples.

    Needs at least 3 samples with distinct n, all in the residue class and
    all with the same run count. The two extreme n fix each line; the rest
    verify it, and samples a fitted component misses are recorded in its
    misaligned_on field rather than dropped.
    """
    _check_class(modulus, residue)
    samples = sorted(samples, key=lambda s: s[0])
    if len(samples) < 3:
        raise InvalidParameters("need at least 3 samples to fit and verify")
    ns = [n for n, _ in samples]
    if len(set(ns)) != len(ns):
        raise InvalidParameters("sample n values must be distinct")
    off_class = [n for n in ns if n % modulus != residue]
    if off_class:
        raise InvalidParameters(
            f"samples {off_class} not ≡ {residue} (mod {modulus})")
    counts = {n: len(d.runs) for n, d in samples}
    if len(set(counts.values())) != 1:
        raise AlignmentFailure(
            f"run counts differ across samples: {counts}", counts=counts)
    (n1, d1), (n2, d2) = samples[0], samples[-1]
    components = []
    for i in range(len(d1.runs)):
        slope_lo, intercept_lo = _fit_line(
            n1, d1.runs[i][0], n2, d2.runs[i][0], i, "lower")
        slope_hi, intercept_hi = _fit_line(
            n1, d1.runs[i][1], n2, d2.runs[i][1], i, "upper")
        verified, misaligned = [], []
        for n, d in samples:
            expected = (slope_lo * n + intercept_lo, slope_hi * n + intercept_hi)
            (verified if d.runs[i] == expected else misaligned).append(n)
        components.append(MinedComponent(
            slope_lo, intercept_lo, slope_hi, intercept_hi,
            tuple(verified), tuple(misaligned)))
    return components


def mine(modulus: int, residue: int, n_samples, segment_rule: tuple[int, int],
         holdout=None, max_horizon: int = MAX_HORIZON_DEFAULT,
         log: list | None = None) -> tuple[PatternCode, list[SegmentReport]]:
    """Mine a trivially masked code for U(1, n) over one residue class.

    Each sample n contributes the window [1, c*n + d] (c, d = segment_rule).
    The mined code carries applicability {modulus, residue} and is verified
    with full-segment reports on the holdout n values (default: the next
    two class members beyond the samples). Optional `log` collects session
    events as dicts.
    """
    _check_class(modulus, residue)
    c_seg, d_seg = segment_rule
    ns = sorted(set(int(n) for n in n_samples))
    samples = []
    for n in ns:
        params = validate_params(1, n)
        horizon = c_seg * n + d_seg
        if horizon < n:
            raise InvalidParameters(
                f"segment rule {segment_rule} gives horizon {horizon} < n={n}")
        prefix = generate_to_horizon(params, horizon, max_horizon)
        decomp = run_decomposition(n, prefix.term_list())
        samples.append((n, decomp))
        if log is not None:
            log.append({"event": "sample", "n": n, "horizon": horizon,
                        "runs": [list(r) for r in decomp.runs]})
    components = fit_components(samples, modulus, residue)
    bad = [(i, c.misaligned_on) for i, c in enumerate(components)
           if c.misaligned_on]
    if bad:
        raise FitFailure(
            f"fitted lines miss some samples: "
            + "; ".join(f"run {i} at n={list(ns)}" for i, ns in bad),
            run_index=bad[0][0])
    code = PatternCode(
        tuple(PatternComponent(A1=0, A2=c.slope_lo, B1=0, B2=c.slope_hi,
                               p=c.intercept_lo, q=c.intercept_hi)
              for c in components),
        Applicability(modulus, residue),
    )
    if log is not None:
        log.append({"event": "fit",
                    "components": [[c.slope_lo, c.intercept_lo,
                                    c.slope_hi, c.intercept_hi]
                                   for c in components]})
    if holdout is None:
        step = modulus
        holdout = [ns[-1] + step, ns[-1] + 2 * step]
    reports = []
    for n in holdout:
        report = verify_segment(code, validate_params(1, n), 1,
                                c_seg * n + d_seg, max_horizon=max_horizon)
        reports.append(report)
        if log is not None:
            log.append({"event": "verify", "n": n, "agrees": report.agrees})
    return code, reports
