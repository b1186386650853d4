"""Independent brute-force reference implementations used by the tests.

Everything here follows the definitions directly, with no sieving or
incremental state, so it is slow but obviously correct. The real package
must agree with these bit for bit on small inputs.
"""

import re

import numpy as np


def naive_ulam(a, b, horizon):
    """All terms of the sequence starting a, b up to horizon, by definition.

    A candidate m joins when it has exactly one representation m = x + y
    with x < y both already in the sequence.
    """
    assert 1 <= a < b
    terms = [a, b]
    term_set = {a, b}
    for m in range(b + 1, horizon + 1):
        reps = 0
        for x in terms:
            if 2 * x >= m:
                break
            if (m - x) in term_set:
                reps += 1
                if reps > 1:
                    break
        if reps == 1:
            terms.append(m)
            term_set.add(m)
    return [t for t in terms if t <= horizon]


def rep_table(terms, horizon):
    """Exact pair-sum counts: table[n] = #{x < y in terms : x + y = n}."""
    arr = np.asarray(terms, dtype=np.int64)
    sums = (arr[:, None] + arr[None, :])[np.triu_indices(len(arr), k=1)]
    sums = sums[sums <= horizon]
    table = np.zeros(horizon + 1, dtype=np.int64)
    if sums.size:
        np.add.at(table, sums, 1)
    return table


def naive_rep_count(terms, n):
    """Number of unordered pairs of distinct terms summing to n."""
    term_set = set(terms)
    return sum(1 for x in terms if 2 * x < n and (n - x) in term_set)


def naive_runs(values):
    """Maximal-interval decomposition of a sorted duplicate-free list."""
    out = []
    for v in values:
        if out and v == out[-1][1] + 1:
            out[-1][1] = v
        else:
            out.append([v, v])
    return [(lo, hi) for lo, hi in out]


def random_component(rng):
    """Seeded generator covering the full component field space."""
    from ulamkit.patterns import PatternComponent
    L = rng.randint(1, 8)
    size = rng.randint(0, L)
    S = frozenset(rng.sample(range(L), size))
    unbounded = rng.random() < 0.15
    return PatternComponent(
        A1=rng.randint(-50, 50), A2=rng.randint(-50, 50),
        B1=rng.randint(-50, 50), B2=rng.randint(-50, 50),
        p=rng.randint(-1000, 1000), q=rng.randint(-1000, 1000),
        L=L, S=S, unbounded=unbounded,
    )


def random_code(rng, max_components=6):
    from ulamkit.patterns import Applicability, PatternCode
    comps = tuple(random_component(rng)
                  for _ in range(rng.randint(0, max_components)))
    applicability = None
    if rng.random() < 0.5:
        modulus = rng.randint(1, 12)
        applicability = Applicability(modulus, rng.randint(0, modulus - 1))
    return PatternCode(comps, applicability)


PRESBURGER = re.compile(
    r"^(?:⊥|x = (-?\d+)|∃t \(x = (-?\d+) \+ (-?\d+)·t\))$"
)


def parse_presburger(text):
    """Tiny evaluator for the exported membership-formula grammar."""
    if text == "⊥":
        return lambda m: False
    singletons, progs = set(), []
    for clause in text.split(" ∨ "):
        match = PRESBURGER.match(clause)
        assert match, f"unparseable clause: {clause!r}"
        if match.group(1) is not None:
            singletons.add(int(match.group(1)))
        else:
            progs.append((int(match.group(2)), int(match.group(3))))
    return lambda m: (m in singletons or
                      any(m >= f and (m - f) % d == 0 for f, d in progs))
