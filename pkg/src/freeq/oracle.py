"""Exhaustive enumeration and coverage certification for equation solutions.

The brute-force enumerator is the independent route against which the
descriptive machinery is certified: it scans all pairs of reduced coefficient
words inside a length ball and keeps those solving the equation, tagging each
with the rank of the subgroup the pair generates.

``certify`` then replays a variety description against the enumeration:
every brute solution must be reproduced by the description's families
(lattice members, parameter recovery, or the orbit closure of the minimal
solutions under the canonical generators).  Uncovered pairs are reported in
the result, never raised.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass

from .graphs import build_subgroup_graph
from .solver import (
    KIND_EMPTY,
    KIND_JSJ,
    KIND_PARAMETRIC,
    KIND_RANK1_ONLY,
    KIND_TRIVIAL,
    STATUS_OK,
    CanonicalGenerator,
    Equation,
    Rank1Family,
    TrivialFamily,
    VarietyDescription,
    apply_to_solution,
)
from .words import (
    WordError,
    evaluate,
    invert,
    multiply,
    pair_key,
    power,
    primitive_root,
    reduce_word,
    words_upto,
)

Pair = tuple[str, str]


@dataclass(frozen=True)
class BruteForceResult:
    equation: Equation
    max_len: int
    solutions: tuple[tuple[str, str, int], ...]  # (g1, g2, subgroup rank)

    def pairs(self) -> tuple[Pair, ...]:
        return tuple((g1, g2) for g1, g2, _ in self.solutions)

    def rank_counts(self) -> tuple[int, int, int]:
        counts = [0, 0, 0]
        for _, _, rank in self.solutions:
            counts[rank] += 1
        return tuple(counts)


def pair_rank(eq: Equation, g1: str, g2: str) -> int:
    return build_subgroup_graph(eq.alphabet, [g1, g2]).rank()


def _variable_runs(w: str) -> list[tuple[str, int]]:
    """Signed run-length form: [('x', 2), ('y', -1), ...]."""
    runs: list[tuple[str, int]] = []
    for c in w:
        base = c.lower()
        step = 1 if c.islower() else -1
        if runs and runs[-1][0] == base:
            runs[-1] = (base, runs[-1][1] + step)
        else:
            runs.append((base, step))
    return runs


def _single_run_shape(w: str) -> tuple[str, int, int, int] | None:
    """Detect the shape s^a z^k s^b (one run of the variable z); returns
    (z, a, k, b) or None."""
    runs = _variable_runs(reduce_word(w))
    for z, s in (("y", "x"), ("x", "y")):
        inner = [r for r in runs if r[0] == z]
        if len(inner) != 1:
            continue
        pattern = [r[0] for r in runs]
        if pattern in ([s, z, s], [s, z], [z, s], [z]):
            k = inner[0][1]
            a = runs[0][1] if runs[0][0] == s else 0
            b = runs[-1][1] if len(runs) > 1 and runs[-1][0] == s else 0
            return z, a, k, b
    return None


def _kth_root(w: str, k: int) -> str | None:
    """The unique g with g^k == w, if it exists (k non-zero)."""
    if w == "":
        return ""
    if k < 0:
        w, k = invert(w), -k
    root, e = primitive_root(w)
    if e % k != 0:
        return None
    return power(root, e // k)


def _solve_single_run(eq: Equation, shape, max_len: int, candidates) -> list[Pair]:
    """Solve s^a z^k s^b = u by unique k-th roots, one per candidate s-value."""
    z, a, k, b = shape
    out = []
    for g in candidates:
        rhs = multiply(power(g, -a), eq.rhs, power(g, -b))
        other = _kth_root(rhs, k)
        if other is None or len(other) > max_len:
            continue
        pair = (g, other) if z == "y" else (other, g)
        if eq.holds_for(*pair):
            out.append(pair)
    return out


def _scan_chunk(args) -> list[Pair]:
    eq, shape, max_len, chunk = args
    if shape is not None:
        return _solve_single_run(eq, shape, max_len, chunk)
    everything = list(words_upto(eq.alphabet, max_len))
    out = []
    for g1 in chunk:
        for g2 in everything:
            if eq.holds_for(g1, g2):
                out.append((g1, g2))
    return out


def brute_force_solutions(eq: Equation, max_len: int, jobs: int = 1) -> BruteForceResult:
    """All solutions with both coordinates of length at most ``max_len``.

    When the left side has a single run of one variable, that variable is
    eliminated by unique root extraction and the scan is linear in the ball;
    otherwise every pair in the ball is tested.
    """
    if max_len < 0:
        raise WordError("the ball radius must be non-negative")
    shape = _single_run_shape(eq.lhs)
    candidates = list(words_upto(eq.alphabet, max_len))
    if jobs > 1:
        chunks = [candidates[i::jobs] for i in range(jobs)]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_scan_chunk, [(eq, shape, max_len, c) for c in chunks])
        pairs = [p for part in parts for p in part]
    else:
        pairs = _scan_chunk((eq, shape, max_len, candidates))
    pairs = sorted(set(pairs), key=pair_key)
    solutions = tuple((g1, g2, pair_rank(eq, g1, g2)) for g1, g2 in pairs)
    return BruteForceResult(equation=eq, max_len=max_len, solutions=solutions)


def delta_orbit_closure(
    seeds,
    generators: tuple[CanonicalGenerator, ...],
    max_len: int,
    max_visited: int = 10**6,
) -> frozenset:
    """Orbit of the seed solutions under the canonical generators, restricted
    to pairs whose coordinates both fit in the length ball."""
    auts = [g.aut for g in generators] + [g.aut.inverse() for g in generators]
    seen = set()
    queue = []
    for s in seeds:
        s = (reduce_word(s[0]), reduce_word(s[1]))
        if len(s[0]) <= max_len and len(s[1]) <= max_len and s not in seen:
            seen.add(s)
            queue.append(s)
    head = 0
    while head < len(queue):
        pair = queue[head]
        head += 1
        for aut in auts:
            new = apply_to_solution(aut, pair)
            if len(new[0]) > max_len or len(new[1]) > max_len:
                continue
            if new not in seen:
                if len(seen) >= max_visited:
                    raise WordError("orbit closure exceeded its visit budget")
                seen.add(new)
                queue.append(new)
    return frozenset(seen)


def _rank1_in_ball(family: Rank1Family | None, max_len: int) -> set:
    # A reduced power r^n has length |n|*|core(r)| + 2|conjugator|, so |n| can
    # never exceed the ball radius; sweeping that far and filtering by actual
    # length is exact even for cyclically non-reduced roots.
    out: set[Pair] = set()
    if family is None or family.is_empty():
        return out
    span = max_len + abs(family.base[0]) + abs(family.base[1]) + 2
    for n in range(-span, span + 1):
        n1, n2 = family.exponents(n)
        g1, g2 = power(family.root, n1), power(family.root, n2)
        if len(g1) <= max_len and len(g2) <= max_len:
            out.add((g1, g2))
    return out


def _trivial_in_ball(family: TrivialFamily, eq: Equation, max_len: int) -> set:
    out = {("", "")}
    for r in words_upto(eq.alphabet, max_len):
        if not r or primitive_root(r)[1] > 1:
            continue
        for n1 in range(-max_len, max_len + 1):
            for n2 in range(-max_len, max_len + 1):
                if family.contains_exponents(n1, n2):
                    g1, g2 = power(r, n1), power(r, n2)
                    if len(g1) <= max_len and len(g2) <= max_len:
                        out.add((g1, g2))
    return out


@dataclass(frozen=True)
class CertifyReport:
    equation: Equation
    description_kind: str
    formula: str
    max_len: int
    closure_len: int | None
    total_solutions: int
    rank_counts: tuple[int, int, int]
    covered: bool
    uncovered: tuple[Pair, ...]
    family_exact: bool | None
    elapsed: float


def certify(eq: Equation, desc: VarietyDescription, max_len: int, jobs: int = 1) -> CertifyReport:
    """Check that a description covers every brute-force solution in a ball.

    Coverage is per the description's kind: lattice membership for the
    commuting families, parameter recovery for a primitive left side, and
    orbit closure (inside a ball widened by twice the right side's length)
    for the rank-two part.  The report lists uncovered pairs verbatim.
    """
    if desc.status != STATUS_OK:
        raise WordError("cannot certify an unresolved description")
    started = time.monotonic()
    brute = brute_force_solutions(eq, max_len, jobs=jobs)
    pairs = brute.pairs()

    closure_len: int | None = None
    family_exact: bool | None = None
    if desc.kind == KIND_EMPTY:
        covered_set = set()
    elif desc.kind == KIND_TRIVIAL:
        covered_set = _trivial_in_ball(desc.trivial, eq, max_len)
        family_exact = covered_set == set(pairs)
    elif desc.kind == KIND_PARAMETRIC:
        covered_set = set()
        for g1, g2 in pairs:
            z = desc.parametric.parameter_of(g1, g2)
            if desc.parametric.member(desc.reduced.rhs, z) == (g1, g2):
                covered_set.add((g1, g2))
    elif desc.kind == KIND_RANK1_ONLY:
        covered_set = _rank1_in_ball(desc.rank1, max_len)
    elif desc.kind == KIND_JSJ:
        closure_len = max_len + 2 * len(desc.reduced.rhs)
        covered_set = set(_rank1_in_ball(desc.rank1, max_len))
        covered_set |= delta_orbit_closure(desc.minimal, desc.generators, closure_len)
    else:
        raise WordError(f"cannot certify a description of kind {desc.kind!r}")

    uncovered = tuple(p for p in pairs if p not in covered_set)
    return CertifyReport(
        equation=eq,
        description_kind=desc.kind,
        formula=desc.formula,
        max_len=max_len,
        closure_len=closure_len,
        total_solutions=len(pairs),
        rank_counts=brute.rank_counts(),
        covered=not uncovered,
        uncovered=uncovered,
        family_exact=family_exact,
        elapsed=time.monotonic() - started,
    )
