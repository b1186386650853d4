"""Arithmetic-progression form of a gap-regular tail, with formula export.

A validated periodicity candidate splits the sequence into the finite set
of terms below its threshold plus p progressions of common difference G
(one per gap in the period, anchored at consecutive tail terms). The
membership predicate of that shape is also printed as a first-order
formula over 0, 1, + and ordering, in a fixed grammar:

    formula = "⊥" | clause { " ∨ " clause }
    clause  = "x = " integer
            | "∃t (x = " integer " + " integer "·t)"

Singleton clauses come first in ascending order, then progression clauses
ascending by first term. Exported artifacts are marked candidate-grade:
they certify agreement with a computed prefix, nothing beyond it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engine import UlamParams, UlamPrefix, require_analysis_grade
from .errors import StaleCandidate
from .patterns import PatternCode, PatternComponent
from .regularity import PeriodicityCandidate, candidate_matches_prefix


@dataclass(frozen=True)
class APDecomposition:
    params: UlamParams
    candidate: PeriodicityCandidate
    initial_set: tuple
    progressions: tuple  # ((first, diff), ...) with one shared diff


def ap_decomposition(prefix: UlamPrefix, candidate: PeriodicityCandidate,
                     allow_non_coprime: bool = False) -> APDecomposition:
    """Split the prefix into initial terms plus p progressions of difference G.

    The candidate must reproduce the prefix tail exactly, and its next
    predicted term must land beyond the horizon (otherwise the periodic
    model claims a member inside the region the prefix already decided
    empty, and the candidate is stale).
    """
    require_analysis_grade(prefix.params, allow_non_coprime)
    if not candidate_matches_prefix(prefix, candidate):
        raise StaleCandidate(
            f"candidate (N={candidate.N}, p={candidate.p}) does not "
            f"reproduce the prefix tail"
        )
    terms = prefix.terms
    N, p = candidate.N, candidate.p
    last_index = len(prefix) - 1
    next_gap = candidate.period_gaps[(last_index - N) % p]
    predicted_next = int(terms[-1]) + next_gap
    if predicted_next <= prefix.horizon:
        raise StaleCandidate(
            f"periodic model predicts a member at {predicted_next} inside "
            f"the decided-empty region up to horizon {prefix.horizon}"
        )
    u_N = int(terms[N])
    firsts = [u_N + sum(candidate.period_gaps[:r]) for r in range(p)]
    assert firsts == [int(t) for t in terms[N:N + p]]
    return APDecomposition(
        params=prefix.params,
        candidate=candidate,
        initial_set=tuple(int(t) for t in terms[:N]),
        progressions=tuple((first, candidate.G) for first in firsts),
    )


def ap_member(decomp: APDecomposition, m: int) -> bool:
    """Membership under the decomposition: initial set or some progression."""
    if m in decomp.initial_set:
        return True
    return any(m >= first and (m - first) % diff == 0
               for first, diff in decomp.progressions)


def ap_points_upto(decomp: APDecomposition, horizon: int) -> list[int]:
    """All members the decomposition claims in [0, horizon], ascending."""
    chunks = [np.asarray([v for v in decomp.initial_set if v <= horizon],
                         dtype=np.int64)]
    for first, diff in decomp.progressions:
        if first <= horizon:
            chunks.append(np.arange(first, horizon + 1, diff, dtype=np.int64))
    return np.unique(np.concatenate(chunks)).tolist()


def to_presburger_text(decomp: APDecomposition) -> str:
    """Render the membership predicate in the module's fixed grammar."""
    clauses = [f"x = {v}" for v in sorted(decomp.initial_set)]
    clauses += [f"∃t (x = {first} + {diff}·t)"
                for first, diff in sorted(decomp.progressions)]
    if not clauses:
        return "⊥"
    return " ∨ ".join(clauses)


def ap_to_pattern_code(decomp: APDecomposition,
                       horizon: int | None = None) -> PatternCode:
    """Equivalent pattern code: singletons plus one masked component per
    progression (period G, single residue), bounded at horizon when given."""
    comps = [PatternComponent(p=v, q=v) for v in sorted(decomp.initial_set)]
    for first, diff in decomp.progressions:
        if horizon is None:
            comps.append(PatternComponent(
                p=first, L=diff, S=frozenset({0}), unbounded=True))
        else:
            comps.append(PatternComponent(
                p=first, q=horizon, L=diff, S=frozenset({0})))
    return PatternCode(tuple(comps))


def effective_density(decomp: APDecomposition) -> Fraction:
    """Exact density of the progression union: p/G in lowest terms."""
    if not decomp.progressions:
        return Fraction(0)
    return Fraction(len(decomp.progressions), decomp.progressions[0][1])


def decomposition_obj(decomp: APDecomposition) -> dict:
    return {
        "grade": "candidate",
        "a": decomp.params.a,
        "b": decomp.params.b,
        "initial_set": list(decomp.initial_set),
        "progressions": [{"first": first, "diff": diff}
                         for first, diff in decomp.progressions],
    }


def decomposition_json(decomp: APDecomposition) -> str:
    return json.dumps(decomposition_obj(decomp), separators=(",", ":"))
