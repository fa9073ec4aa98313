"""Solution-set descriptions for equations w(x, y) = u over a free group.

The left side ``w`` is a word in the variables ``x, y``; the right side ``u``
is a word over a coefficient alphabet.  A solution is a pair of coefficient
words ``(g1, g2)`` with ``w(g1, g2) = u``.  The describing pipeline:

1. reject empty or one-variable ``w``;
2. trivial right side: all solutions commute and form a power lattice;
3. primitive ``w``: one free parameter describes everything;
4. proper-power ``w = v^n``: take the unique n-th root of both sides;
5. the rank-one lattice of commuting solutions;
6. right side a proper power: no non-commuting solutions exist at all;
7. otherwise classify ``w`` (orbit of the commutator / splits over an edge
   letter / neither), compute canonical solution-moving automorphisms, and
   search the finitely many terminal subgroup bases for minimal rank-two
   solutions.

Every emitted solution pair is re-verified against the equation before it is
returned.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from math import gcd

from .autf2 import (
    IDENTITY,
    TYPE1_AUTOMORPHISMS,
    AutF2,
    INVERSION_MOVES,
    NielsenMove,
    PRODUCT_MOVES,
    SearchBudgetExceeded,
    inner,
    is_primitive,
    moves_to_standard,
    nielsen_reduce_pair,
    orbit_automorphism,
)
from .graphs import build_subgroup_graph, graph_from_edges
from .words import (
    VARIABLES,
    Alphabet,
    WordError,
    commutator,
    conjugate,
    conjugating_word,
    evaluate,
    exponent_sum,
    invert,
    multiply,
    pair_key,
    power,
    primitive_root,
    reduce_word,
    shortlex_key,
)

Pair = tuple[str, str]

STATUS_OK = "ok"
STATUS_UNRESOLVED = "unresolved"

KIND_EMPTY = "empty"
KIND_TRIVIAL = "trivial-rhs"
KIND_PARAMETRIC = "parametric"
KIND_RANK1_ONLY = "rank1-only"
KIND_JSJ = "jsj"

CASE_RIGID = "rigid"
CASE_HNN = "hnn"
CASE_QH = "qh"
CASE_UNRESOLVED = "unresolved"

FORMULA_EMPTY = "empty"
FORMULA_KERNEL = "kernel-lattice"
FORMULA_PARAMETRIC = "parametric-substitution"
FORMULA_POWER = "power-lattice"
FORMULA_CONJUGATES = "u-conjugates"
FORMULA_HNN = "hnn-twist"
FORMULA_ORBIT = "automorphism-orbit"

_FORMULA_BY_CASE = {
    CASE_RIGID: FORMULA_CONJUGATES,
    CASE_HNN: FORMULA_HNN,
    CASE_QH: FORMULA_ORBIT,
}

DELTA_X = AutF2("yx", "y")
DELTA_Y = AutF2("x", "xy")


@dataclass(frozen=True)
class Budgets:
    """Deterministic caps for the semi-decision searches."""

    orbit_max_visited: int = 10**6
    hnn_max_bases: int = 10**4
    partition_max: int = 10**5
    minimize_widenings: int = 3


@dataclass(frozen=True)
class Equation:
    """w(x, y) = u with w over the variables and u over the coefficients."""

    alphabet: Alphabet
    lhs: str
    rhs: str

    def __post_init__(self) -> None:
        for v in VARIABLES.letters:
            if v in self.alphabet:
                raise WordError(f"coefficient alphabet must not contain the variable {v!r}")
        object.__setattr__(self, "lhs", reduce_word(VARIABLES.check_word(self.lhs)))
        object.__setattr__(self, "rhs", reduce_word(self.alphabet.check_word(self.rhs)))

    def __str__(self) -> str:
        return f"{self.lhs or '1'} = {self.rhs or '1'}"

    def holds_for(self, g1: str, g2: str) -> bool:
        return evaluate(self.lhs, g1, g2) == self.rhs


def verify_solution(eq: Equation, g1: str, g2: str) -> tuple[bool, int]:
    """Check a candidate pair; returns (is-solution, rank of the pair)."""
    g1 = reduce_word(eq.alphabet.check_word(g1))
    g2 = reduce_word(eq.alphabet.check_word(g2))
    ok = eq.holds_for(g1, g2)
    rank = build_subgroup_graph(eq.alphabet, [g1, g2]).rank()
    return ok, rank


@dataclass(frozen=True)
class Rank1Family:
    """Commuting solutions (root^(p + n dx), root^(q + n dy)), n an integer."""

    root: str
    base: tuple[int, int] | None
    direction: tuple[int, int]

    def is_empty(self) -> bool:
        return self.base is None

    def exponents(self, n: int) -> tuple[int, int]:
        if self.base is None:
            raise WordError("the commuting-solution family is empty")
        return (self.base[0] + n * self.direction[0], self.base[1] + n * self.direction[1])

    def member(self, n: int) -> Pair:
        n1, n2 = self.exponents(n)
        return (power(self.root, n1), power(self.root, n2))


@dataclass(frozen=True)
class TrivialFamily:
    """Solutions of w = 1: (r^n1, r^n2) over any root r, (n1, n2) in a lattice."""

    generators: tuple[tuple[int, int], ...]

    def contains_exponents(self, n1: int, n2: int) -> bool:
        if len(self.generators) == 2:
            return True
        d1, d2 = self.generators[0]
        if n1 * d2 != n2 * d1:
            return False
        k, lead = (n1, d1) if d1 else (n2, d2)
        return k % lead == 0

    def member(self, root: str, n1: int, n2: int) -> Pair:
        if not self.contains_exponents(n1, n2):
            raise WordError(f"exponents ({n1}, {n2}) are outside the kernel lattice")
        return (power(root, n1), power(root, n2))


@dataclass(frozen=True)
class ParametricFamily:
    """All solutions for a primitive left side, one free word parameter."""

    aut: AutF2  # carries the lhs to the single letter x
    recover_y: str  # inverse image of y: evaluates to the parameter

    def member(self, rhs: str, z: str) -> Pair:
        return (evaluate(self.aut.image_x, rhs, z), evaluate(self.aut.image_y, rhs, z))

    def parameter_of(self, g1: str, g2: str) -> str:
        return evaluate(self.recover_y, g1, g2)


@dataclass(frozen=True)
class HnnWitness:
    """An edge splitting: w lies in <p, q> with q = t^-1 p t, balanced in t."""

    p: str
    q: str
    t: str
    basis_aut: AutF2  # x -> p, y -> t
    rewritten: str  # w over the basis (p, t)


@dataclass(frozen=True)
class JsjClassification:
    kind: str
    hnn: HnnWitness | None = None
    normalizer: AutF2 | None = None  # carries w to the commutator target
    target: str = ""
    note: str = ""


@dataclass(frozen=True)
class CanonicalGenerator:
    symbol: str
    name: str
    aut: AutF2


@dataclass(frozen=True)
class TerminalData:
    """End state of Nielsen-reducing a solution pair against its equation."""

    pair: Pair
    word: str
    aut: AutF2
    moves: tuple[NielsenMove, ...]


@dataclass(frozen=True)
class VarietyDescription:
    equation: Equation
    reduced: Equation
    status: str
    kind: str
    formula: str
    note: str = ""
    rank1: Rank1Family | None = None
    trivial: TrivialFamily | None = None
    parametric: ParametricFamily | None = None
    classification: JsjClassification | None = None
    generators: tuple[CanonicalGenerator, ...] = ()
    minimal: tuple[Pair, ...] = ()

    def generator_by_symbol(self, symbol: str) -> CanonicalGenerator:
        for g in self.generators:
            if g.symbol == symbol:
                return g
        raise WordError(f"no canonical generator named {symbol!r}")


def _bezout(a: int, b: int) -> tuple[int, int]:
    """Integers (s, t) with s*a + t*b == gcd(|a|, |b|) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t


def _check_lhs(w: str) -> str:
    w = reduce_word(VARIABLES.check_word(w))
    if not w:
        raise WordError("the left side of the equation must not be trivial")
    present = {c.lower() for c in w}
    if present != {"x", "y"}:
        raise WordError("the left side must involve both variables")
    return w


def solve_trivial_rhs(eq: Equation) -> TrivialFamily:
    """Kernel lattice for w = 1: every solution is a pair of powers of one root."""
    sx = exponent_sum(eq.lhs, "x")
    sy = exponent_sum(eq.lhs, "y")
    if sx == 0 and sy == 0:
        return TrivialFamily(generators=((1, 0), (0, 1)))
    d = gcd(abs(sx), abs(sy))
    gen = (sy // d, -sx // d)
    if gen[0] < 0 or (gen[0] == 0 and gen[1] < 0):
        gen = (-gen[0], -gen[1])
    return TrivialFamily(generators=(gen,))


def rank1_family(eq: Equation) -> Rank1Family:
    """The lattice of commuting solutions of w = u (u non-trivial)."""
    root, e = primitive_root(eq.rhs)
    sx = exponent_sum(eq.lhs, "x")
    sy = exponent_sum(eq.lhs, "y")
    d = gcd(abs(sx), abs(sy))
    if d == 0 or e % d != 0:
        return Rank1Family(root=root, base=None, direction=(0, 0))
    s, t = _bezout(sx, sy)
    k = e // d
    family = Rank1Family(root=root, base=(s * k, t * k), direction=(sy // d, -sx // d))
    g1, g2 = family.member(0)
    if not eq.holds_for(g1, g2):
        raise AssertionError("rank-one particular solution failed verification")
    return family


def reduce_proper_power(eq: Equation) -> Equation | None:
    """Replace v^n = u by v = u^(1/n); None when no n-th root exists."""
    root_w, n = primitive_root(eq.lhs)
    if n <= 1:
        return eq
    if not eq.rhs:
        return Equation(eq.alphabet, root_w, "")
    root_u, e = primitive_root(eq.rhs)
    if e % n != 0:
        return None
    return Equation(eq.alphabet, root_w, power(root_u, e // n))


def detect_hnn_splitting(w: str, budgets: Budgets = Budgets()) -> HnnWitness | None:
    """Search basis pairs (p, t) for an edge splitting of w.

    Pairs are enumerated breadth-first from (x, y) under elementary Nielsen
    moves, expanding only within total length max(|w|, 2).  A pair is a
    witness when w, rewritten over (p, t), has zero t-exponent, and w lies in
    the rank-two subgroup <p, t^-1 p t>.  Exhausting the bounded space
    without a witness returns None; exceeding the tested-basis budget raises
    :class:`SearchBudgetExceeded`.
    """
    w = reduce_word(w)
    bound = max(len(w), 2)
    start: Pair = ("x", "y")
    queue = [start]
    visited = {start}
    tested = 0
    head = 0
    while head < len(queue):
        p, t = queue[head]
        head += 1
        tested += 1
        if tested > budgets.hnn_max_bases:
            raise SearchBudgetExceeded(
                f"edge-splitting search tested {budgets.hnn_max_bases} bases without a verdict"
            )
        basis = AutF2(p, t)
        rewritten = basis.inverse().apply(w)
        if exponent_sum(rewritten, "y") == 0:
            q = conjugate(p, t)
            sub = build_subgroup_graph(VARIABLES, [p, q])
            if sub.rank() == 2 and sub.contains(w):
                return HnnWitness(p=p, q=q, t=t, basis_aut=basis, rewritten=rewritten)
        for move in PRODUCT_MOVES + INVERSION_MOVES:
            new = move.apply((p, t))
            if len(new[0]) + len(new[1]) <= bound and new not in visited:
                visited.add(new)
                queue.append(new)
    return None


def classify_jsj(w: str, budgets: Budgets = Budgets()) -> JsjClassification:
    """Orbit-of-commutator / edge-splitting / rigid trichotomy for w.

    The commutator test runs first; a word in the orbit of [x, y] (or its
    inverse) is never reported as split even though it also admits splittings.
    """
    w = _check_lhs(w)
    try:
        for target in ("XYxy", "xyXY"):
            nu = orbit_automorphism(w, target, budgets.orbit_max_visited)
            if nu is not None:
                return JsjClassification(kind=CASE_QH, normalizer=nu, target=target)
        witness = detect_hnn_splitting(w, budgets)
    except SearchBudgetExceeded as exc:
        return JsjClassification(kind=CASE_UNRESOLVED, note=str(exc))
    if witness is not None:
        return JsjClassification(kind=CASE_HNN, hnn=witness)
    return JsjClassification(
        kind=CASE_RIGID,
        note=f"no splitting among bases of total length at most {max(len(w), 2)}",
    )


_SYMMETRY_SYMBOLS = "pqruvz"


def _symmetry_generators(w: str) -> list[AutF2]:
    """Finite symmetries of w: signed letter permutations fixed up by an inner.

    For every non-identity signed permutation ``pi`` whose image of ``w`` is
    conjugate to ``w``, the composite ``inner(h) . pi`` (with ``h`` the
    conjugator) fixes ``w`` exactly.  These capture the finite part of the
    stabilizer — e.g. for ``xxyy`` the swap-and-rotate symmetry, whose
    abelianization has determinant -1 and is therefore not a product of
    conjugations and twists.
    """
    out = []
    seen = set()
    for perm in TYPE1_AUTOMORPHISMS:
        if perm.is_identity():
            continue
        image = perm.apply(w)
        h = conjugating_word(image, w)
        if h is None:
            continue
        sigma = inner(h).compose(perm)
        key = (sigma.image_x, sigma.image_y)
        if key not in seen and not sigma.is_identity():
            seen.add(key)
            out.append(sigma)
    return out


def canonical_generators(cls: JsjClassification, w: str) -> tuple[CanonicalGenerator, ...]:
    """Automorphisms fixing w that carry solutions to solutions.

    Beyond the conjugation by w itself and the case-specific twists, the
    finite permutation symmetries of w are included: without them the orbit
    of a single minimal solution can miss mirror-image solutions (the
    twist subgroup sits at finite index in the full stabilizer).
    """
    w = reduce_word(w)
    gens = [CanonicalGenerator("c", "conjugation-by-lhs", inner(w))]
    if cls.kind == CASE_HNN:
        basis = cls.hnn.basis_aut
        twist = basis.compose(AutF2("x", "xy")).compose(basis.inverse())
        gens.append(CanonicalGenerator("t", "edge-twist", twist))
    elif cls.kind == CASE_QH:
        nu = cls.normalizer
        nui = nu.inverse()
        gens.append(CanonicalGenerator("d", "boundary-twist-x", nui.compose(DELTA_X).compose(nu)))
        gens.append(CanonicalGenerator("e", "boundary-twist-y", nui.compose(DELTA_Y).compose(nu)))
    for i, sigma in enumerate(_symmetry_generators(w)):
        if i >= len(_SYMMETRY_SYMBOLS):
            break
        gens.append(CanonicalGenerator(_SYMMETRY_SYMBOLS[i], f"symmetry-{i}", sigma))
    for g in gens:
        if g.aut.apply(w) != w:
            raise AssertionError(f"canonical generator {g.name} does not fix the left side")
    return tuple(gens)


def apply_to_solution(aut: AutF2, pair: Pair) -> Pair:
    """Precompose a solution with an automorphism fixing the left side."""
    return (evaluate(aut.image_x, pair[0], pair[1]), evaluate(aut.image_y, pair[0], pair[1]))


def terminal_data(alphabet: Alphabet, w: str, g1: str, g2: str) -> TerminalData:
    """Nielsen-reduce a rank-two solution pair, dragging the equation along.

    Returns the canonical basis pair of <g1, g2>, the rewritten variable word
    ``word`` with ``evaluate(word, *pair) == evaluate(w, g1, g2)``, the
    automorphism ``aut`` with ``aut.apply(w) == word``, and the move list.
    """
    w = reduce_word(VARIABLES.check_word(w))
    value = evaluate(w, g1, g2)
    pair, moves = nielsen_reduce_pair(alphabet, g1, g2)
    cur: Pair = (reduce_word(g1), reduce_word(g2))
    word = w
    aut = IDENTITY
    for move in moves:
        cur = move.apply(cur)
        step = move.as_aut().inverse()
        word = step.apply(word)
        aut = step.compose(aut)
        if evaluate(word, cur[0], cur[1]) != value:
            raise AssertionError("terminal reduction broke the equation invariant")
    return TerminalData(pair=cur, word=word, aut=aut, moves=moves)


def _set_partitions(n: int, limit: int):
    """Restricted-growth strings: block index per element, lexicographic."""
    assignment = [0] * n
    count = 0
    while True:
        count += 1
        if count > limit:
            raise SearchBudgetExceeded(f"more than {limit} cycle partitions")
        yield tuple(assignment)
        # advance to the next restricted-growth string
        i = n - 1
        while i > 0:
            bound = max(assignment[:i]) + 1
            if assignment[i] < bound:
                assignment[i] += 1
                for j in range(i + 1, n):
                    assignment[j] = 0
                break
            i -= 1
        else:
            return


def terminal_candidates(eq: Equation, budgets: Budgets = Budgets()):
    """Rank-two subgroup bases that can host a minimal solution.

    Every candidate subgroup is filled by the right side, so its core graph
    is a folded quotient of the u-labelled cycle; all such quotients are
    enumerated by partitioning the cycle's vertices.  Returns deduplicated
    ``(basis_pair, rewritten_u)`` entries sorted by the basis pair.
    """
    u = eq.rhs
    if not u:
        raise WordError("terminal candidates need a non-trivial right side")
    m = len(u)
    cycle_edges = []
    for i, c in enumerate(u):
        src, dst = i, (i + 1) % m
        cycle_edges.append((src, c, dst) if c.islower() else (dst, c.lower(), src))
    seen = set()
    results = []
    for blocks in _set_partitions(m, budgets.partition_max):
        mapped = [(blocks[s], c, blocks[d]) for (s, c, d) in cycle_edges]
        graph = graph_from_edges(eq.alphabet, max(blocks) + 1, mapped, base=blocks[0])
        if graph in seen:
            continue
        seen.add(graph)
        if graph.rank() != 2:
            continue
        basis = graph.canonical_basis()
        results.append((basis.generators, basis.express(u)))
    results.sort(key=lambda item: pair_key(item[0]))
    return tuple(results)


def _orbit_ball(seed: Pair, actions, ball: int, budgets: Budgets):
    """Explore a solution's orbit inside a total-length ball.

    Returns (best pair, visited set, hit_boundary).
    """
    best = seed
    visited = {seed}
    queue = [seed]
    head = 0
    hit = False
    while head < len(queue):
        pair = queue[head]
        head += 1
        for aut in actions:
            new = apply_to_solution(aut, pair)
            if len(new[0]) + len(new[1]) > ball:
                hit = True
                continue
            if new in visited:
                continue
            if len(visited) >= budgets.orbit_max_visited:
                raise SearchBudgetExceeded("orbit minimization visited too many solutions")
            visited.add(new)
            queue.append(new)
            if pair_key(new) < pair_key(best):
                best = new
    return best, visited, hit


def minimal_rank2_solutions(
    eq: Equation,
    gens: tuple[CanonicalGenerator, ...],
    budgets: Budgets = Budgets(),
) -> tuple[Pair, ...]:
    """Minimal representatives of the rank-two solutions, one per orbit found.

    For each terminal candidate basis, an orbit search matches the left side
    to the rewritten right side; a hit pulls back to a solution, which is
    then minimized over the canonical generator orbit within a widening
    length ball (components are ball-relative).
    """
    seeds = []
    for pair, rewritten in terminal_candidates(eq, budgets):
        match = orbit_automorphism(eq.lhs, rewritten, budgets.orbit_max_visited)
        if match is None:
            continue
        sol = (evaluate(match.image_x, *pair), evaluate(match.image_y, *pair))
        if not eq.holds_for(*sol):
            raise AssertionError("terminal candidate produced a non-solution")
        seeds.append(sol)
    if not seeds:
        return ()

    actions = [g.aut for g in gens] + [g.aut.inverse() for g in gens]
    reps = []
    claimed: set[Pair] = set()
    for seed in sorted(set(seeds), key=pair_key):
        if seed in claimed:
            continue
        ball = max(2 * len(eq.rhs) + 4, len(seed[0]) + len(seed[1]))
        previous = None
        for _ in range(budgets.minimize_widenings + 1):
            best, visited, hit = _orbit_ball(seed, actions, ball, budgets)
            if not hit or best == previous:
                break
            previous = best
            ball *= 2
        else:
            raise SearchBudgetExceeded(
                "orbit minimization kept improving at the widest ball"
            )
        claimed |= visited
        reps.append(best)
    return tuple(sorted(set(reps), key=pair_key))


def describe_variety(eq: Equation, budgets: Budgets = Budgets()) -> VarietyDescription:
    """Full description of the solution set of one equation."""
    w = _check_lhs(eq.lhs)

    if eq.rhs == "":
        return VarietyDescription(
            equation=eq,
            reduced=eq,
            status=STATUS_OK,
            kind=KIND_TRIVIAL,
            formula=FORMULA_KERNEL,
            trivial=solve_trivial_rhs(eq),
        )

    try:
        to_x = is_primitive(w)
    except SearchBudgetExceeded as exc:
        return VarietyDescription(
            equation=eq, reduced=eq, status=STATUS_UNRESOLVED,
            kind=KIND_PARAMETRIC, formula="", note=str(exc),
        )
    if to_x is not None:
        family = ParametricFamily(aut=to_x, recover_y=to_x.inverse().image_y)
        g1, g2 = family.member(eq.rhs, "")
        if not eq.holds_for(g1, g2):
            raise AssertionError("parametric family failed verification")
        return VarietyDescription(
            equation=eq, reduced=eq, status=STATUS_OK,
            kind=KIND_PARAMETRIC, formula=FORMULA_PARAMETRIC, parametric=family,
        )

    reduced = reduce_proper_power(eq)
    if reduced is None:
        return VarietyDescription(
            equation=eq, reduced=eq, status=STATUS_OK,
            kind=KIND_EMPTY, formula=FORMULA_EMPTY,
            note="the right side has no root matching the left side's power",
        )
    if reduced != eq:
        inner_desc = describe_variety(reduced, budgets)
        return dataclasses.replace(inner_desc, equation=eq)

    family = rank1_family(eq)
    _, e = primitive_root(eq.rhs)
    if e > 1:
        if family.is_empty():
            return VarietyDescription(
                equation=eq, reduced=eq, status=STATUS_OK,
                kind=KIND_EMPTY, formula=FORMULA_EMPTY, rank1=family,
                note="the power lattice is empty and no non-commuting solutions exist",
            )
        return VarietyDescription(
            equation=eq, reduced=eq, status=STATUS_OK,
            kind=KIND_RANK1_ONLY, formula=FORMULA_POWER, rank1=family,
        )

    cls = classify_jsj(w, budgets)
    if cls.kind == CASE_UNRESOLVED:
        return VarietyDescription(
            equation=eq, reduced=eq, status=STATUS_UNRESOLVED,
            kind=KIND_JSJ, formula="", note=cls.note,
            classification=cls, rank1=family,
        )
    gens = canonical_generators(cls, w)
    try:
        minimal = minimal_rank2_solutions(eq, gens, budgets)
    except SearchBudgetExceeded as exc:
        return VarietyDescription(
            equation=eq, reduced=eq, status=STATUS_UNRESOLVED,
            kind=KIND_JSJ, formula=_FORMULA_BY_CASE[cls.kind], note=str(exc),
            classification=cls, generators=gens, rank1=family,
        )
    return VarietyDescription(
        equation=eq, reduced=eq, status=STATUS_OK,
        kind=KIND_JSJ, formula=_FORMULA_BY_CASE[cls.kind],
        classification=cls, generators=gens, rank1=family, minimal=minimal,
    )


# ---------------------------------------------------------------------------
# Generation of further solutions from a description


def _checked(eq: Equation, pair: Pair) -> Pair:
    pair = (reduce_word(pair[0]), reduce_word(pair[1]))
    if not eq.holds_for(*pair):
        raise AssertionError("generated pair failed verification against the equation")
    return pair


def generate_rank1(desc: VarietyDescription, n: int) -> Pair:
    if desc.rank1 is None or desc.rank1.is_empty():
        raise WordError("this description has no commuting-solution family")
    return _checked(desc.reduced, desc.rank1.member(n))


def generate_trivial(desc: VarietyDescription, root: str, n1: int, n2: int) -> Pair:
    if desc.trivial is None:
        raise WordError("this description has no trivial-right-side family")
    root = reduce_word(desc.reduced.alphabet.check_word(root))
    return _checked(desc.reduced, desc.trivial.member(root, n1, n2))


def generate_parametric(desc: VarietyDescription, z: str) -> Pair:
    if desc.parametric is None:
        raise WordError("this description has no parametric family")
    z = reduce_word(desc.reduced.alphabet.check_word(z))
    return _checked(desc.reduced, desc.parametric.member(desc.reduced.rhs, z))


def _minimal_solution(desc: VarietyDescription, index: int) -> Pair:
    if not desc.minimal:
        raise WordError("this description has no rank-two solutions")
    if not 0 <= index < len(desc.minimal):
        raise WordError(f"solution index {index} out of range 0..{len(desc.minimal) - 1}")
    return desc.minimal[index]


def generate_conjugates(desc: VarietyDescription, index: int, n: int) -> Pair:
    """Item for every case: conjugate a minimal solution by a power of u."""
    sol = _minimal_solution(desc, index)
    c = power(desc.reduced.rhs, n)
    return _checked(desc.reduced, (conjugate(sol[0], c), conjugate(sol[1], c)))


def generate_hnn(desc: VarietyDescription, index: int, n: int, m: int) -> Pair:
    """Edge-splitting item: conjugate the edge group and twist the stable letter.

    With p, t the splitting basis evaluated at the solution, the new pair
    substitutes ``p -> u^-n p u^n`` and ``t -> u^-n (t q^m) u^n`` into the
    expression of the solution over (p, t).
    """
    if desc.classification is None or desc.classification.kind != CASE_HNN:
        raise WordError("this description has no edge-splitting family")
    sol = _minimal_solution(desc, index)
    witness = desc.classification.hnn
    basis = witness.basis_aut
    inv = basis.inverse()
    p_val = evaluate(basis.image_x, *sol)
    t_val = evaluate(basis.image_y, *sol)
    q_val = multiply(invert(t_val), p_val, t_val)
    c = power(desc.reduced.rhs, n)
    new_p = conjugate(p_val, c)
    new_t = conjugate(multiply(t_val, power(q_val, m)), c)
    return _checked(
        desc.reduced,
        (evaluate(inv.image_x, new_p, new_t), evaluate(inv.image_y, new_p, new_t)),
    )


def generate_orbit(desc: VarietyDescription, index: int, sigma: str) -> Pair:
    """Apply a word in the canonical generators to a minimal solution.

    ``sigma`` is spelled with the generator symbols (inverses by upper case)
    and is applied left to right.
    """
    sol = _minimal_solution(desc, index)
    symbols = {g.symbol for g in desc.generators}
    for c in sigma:
        if c.lower() not in symbols:
            raise WordError(f"unknown canonical generator {c!r}")
        gen = desc.generator_by_symbol(c.lower())
        aut = gen.aut if c.islower() else gen.aut.inverse()
        sol = apply_to_solution(aut, sol)
    return _checked(desc.reduced, sol)


# ---------------------------------------------------------------------------
# The two-level worked family


MEGA_ALPHABET = Alphabet.from_string("ab")
FIRST_LEVEL_LHS = multiply(power(commutator("x", "y"), 2), "x")


def mega_word() -> str:
    """The nested test word [a^-1 b a [b, a] [x,y]^2 x, a] over letters and variables."""
    head = multiply("Aba", commutator("b", "a"), FIRST_LEVEL_LHS)
    return commutator(head, "a")


def two_level_base(n: int) -> Pair:
    return (multiply("B", power("a", n)), "Bab")


def two_level_conjugator(n: int) -> str:
    base = two_level_base(n)
    return evaluate(FIRST_LEVEL_LHS, *base)


def two_level_member(n: int, m: int) -> Pair:
    """The (n, m) member: the base pair conjugated by the m-th power of the
    value the first-level word takes on it."""
    base = two_level_base(n)
    c = power(two_level_conjugator(n), m)
    return (conjugate(base[0], c), conjugate(base[1], c))


def verify_two_level(g1: str, g2: str) -> bool:
    return evaluate(mega_word(), g1, g2) == ""
