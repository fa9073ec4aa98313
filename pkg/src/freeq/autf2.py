"""Automorphisms of the free group of rank two.

An automorphism is stored by its images of ``x`` and ``y``.  Construction
validates that the image pair is a free basis, which in rank two can be
decided greedily: a basis pair of total length above two always admits an
elementary Nielsen transformation that strictly shortens it, so repeated
shortening ends at a signed permutation of ``(x, y)`` exactly when the pair
was a basis.

The same move bookkeeping drives pair reduction with a recorded move list,
automorphism inversion, and the Whitehead-automorphism search used to decide
whether two words lie in the same orbit of the automorphism group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .graphs import build_subgroup_graph
from .words import (
    VARIABLES,
    WordError,
    conjugate,
    conjugating_word,
    cyclic_length,
    cyclic_normal_form,
    evaluate,
    exponent_sum,
    invert,
    multiply,
    pair_key,
    power,
    reduce_word,
    shortlex_key,
)

Pair = tuple[str, str]


class NotAnAutomorphism(WordError):
    """The given images of x and y do not form a free basis."""


class SearchBudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before reaching a verdict."""


@dataclass(frozen=True)
class AutF2:
    """An automorphism of F(x, y), stored by its images of x and y."""

    image_x: str
    image_y: str

    def __post_init__(self) -> None:
        ix = reduce_word(VARIABLES.check_word(self.image_x))
        iy = reduce_word(VARIABLES.check_word(self.image_y))
        object.__setattr__(self, "image_x", ix)
        object.__setattr__(self, "image_y", iy)
        if not is_basis_pair(ix, iy):
            raise NotAnAutomorphism(f"({ix!r}, {iy!r}) is not a free basis")

    def apply(self, w: str) -> str:
        return evaluate(w, self.image_x, self.image_y)

    def apply_pair(self, pair: Pair) -> Pair:
        return (self.apply(pair[0]), self.apply(pair[1]))

    def compose(self, other: "AutF2") -> "AutF2":
        """self after other: ``(self.compose(other)).apply(w) == self.apply(other.apply(w))``."""
        return AutF2(self.apply(other.image_x), self.apply(other.image_y))

    def inverse(self) -> "AutF2":
        moves = moves_to_standard((self.image_x, self.image_y))
        inv = IDENTITY
        for m in moves:
            inv = inv.compose(m.as_aut())
        return inv

    def is_identity(self) -> bool:
        return self.image_x == "x" and self.image_y == "y"

    def abelianized(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Column-per-image exponent matrix ((x-row), (y-row))."""
        return (
            (exponent_sum(self.image_x, "x"), exponent_sum(self.image_y, "x")),
            (exponent_sum(self.image_x, "y"), exponent_sum(self.image_y, "y")),
        )

    def __str__(self) -> str:
        return f"x->{self.image_x or '1'}, y->{self.image_y or '1'}"


@dataclass(frozen=True)
class NielsenMove:
    """Elementary Nielsen transformation of an ordered pair.

    ``side`` 0 replaces the first component, 1 the second.  Writing the kept
    component as ``b`` and the replaced one as ``a``, the replacement is
    ``(a^e1 b^e2)^e3`` with ``e1, e3 in {1, -1}`` and ``e2 in {-1, 0, 1}``.
    """

    side: int
    e1: int
    e2: int
    e3: int

    def apply(self, pair: Pair) -> Pair:
        a, b = pair if self.side == 0 else (pair[1], pair[0])
        new = power(multiply(power(a, self.e1), power(b, self.e2)), self.e3)
        return (new, pair[1]) if self.side == 0 else (pair[0], new)

    def as_aut(self) -> AutF2:
        images = self.apply(("x", "y"))
        return AutF2(*images)


PRODUCT_MOVES: tuple[NielsenMove, ...] = tuple(
    NielsenMove(side, e1, e2, e3)
    for side in (0, 1)
    for e1 in (1, -1)
    for e2 in (1, -1)
    for e3 in (1, -1)
)
INVERSION_MOVES: tuple[NielsenMove, ...] = (
    NielsenMove(0, -1, 0, 1),
    NielsenMove(1, -1, 0, 1),
)


def _greedy_shorten(pair: Pair) -> tuple[Pair, list[NielsenMove]]:
    """Apply strictly length-decreasing product moves until none remain.

    Deterministic: among all shortening moves, the one with the smallest
    resulting pair (by total length, then ShortLex, then move index) is taken.
    """
    cur = (reduce_word(pair[0]), reduce_word(pair[1]))
    trail: list[NielsenMove] = []
    while True:
        total = len(cur[0]) + len(cur[1])
        best = None
        for idx, move in enumerate(PRODUCT_MOVES):
            new = move.apply(cur)
            if len(new[0]) + len(new[1]) < total:
                cand = (pair_key(new), idx)
                if best is None or cand < best[0]:
                    best = (cand, move, new)
        if best is None:
            return cur, trail
        _, move, cur = best
        trail.append(move)


def _standard_fixups() -> dict[Pair, tuple[NielsenMove, ...]]:
    """Move sequences sending each signed permutation pair to exactly (x, y).

    Found once by breadth-first search bounded at total length four (the
    swap detour passes through length-three pairs).
    """
    moves = PRODUCT_MOVES + INVERSION_MOVES
    table: dict[Pair, tuple[NielsenMove, ...]] = {}
    starts = [
        (a, b)
        for a in ("x", "X", "y", "Y")
        for b in ("x", "X", "y", "Y")
        if a.lower() != b.lower()
    ]
    for start in starts:
        queue = deque([(start, ())])
        seen = {start}
        while queue:
            pair, trail = queue.popleft()
            if pair == ("x", "y"):
                table[start] = trail
                break
            for move in moves:
                new = move.apply(pair)
                if len(new[0]) + len(new[1]) <= 4 and new not in seen:
                    seen.add(new)
                    queue.append((new, trail + (move,)))
        else:
            raise AssertionError(f"no fixup path from {start}")
    return table


_FIXUPS = _standard_fixups()


def moves_to_standard(pair: Pair) -> tuple[NielsenMove, ...]:
    """A move sequence carrying the basis pair to exactly ``("x", "y")``.

    Raises :class:`NotAnAutomorphism` when the pair is not a free basis of
    F(x, y) — greedy shortening of a basis pair cannot stall above total
    length two, so stalling higher (or ending anywhere other than a signed
    permutation pair) is a disproof.
    """
    cur, trail = _greedy_shorten(pair)
    fix = _FIXUPS.get(cur)
    if fix is None:
        raise NotAnAutomorphism(f"({pair[0]!r}, {pair[1]!r}) is not a free basis")
    return tuple(trail) + fix


def is_basis_pair(w1: str, w2: str) -> bool:
    """Do the two words form a free basis of F(x, y)?"""
    a = exponent_sum(w1, "x") * exponent_sum(w2, "y")
    b = exponent_sum(w1, "y") * exponent_sum(w2, "x")
    if abs(a - b) != 1:
        return False
    cur, _ = _greedy_shorten((w1, w2))
    return cur in _FIXUPS


IDENTITY = AutF2("x", "y")


def inner(g: str) -> AutF2:
    """Conjugation by ``g``: every word maps to ``g^-1 w g``."""
    return AutF2(conjugate("x", g), conjugate("y", g))


def _type1_automorphisms() -> tuple[AutF2, ...]:
    images = [
        (a, b)
        for a in ("x", "X", "y", "Y")
        for b in ("x", "X", "y", "Y")
        if a.lower() != b.lower()
    ]
    return tuple(AutF2(a, b) for a, b in images)


def _type2_automorphisms() -> tuple[AutF2, ...]:
    auts = []
    for a in ("x", "X", "y", "Y"):
        z = "y" if a.lower() == "x" else "x"
        for image in (multiply(z, a), multiply(invert(a), z), conjugate(z, a)):
            if a.lower() == "x":
                auts.append(AutF2("x", image))
            else:
                auts.append(AutF2(image, "y"))
    return tuple(auts)


TYPE1_AUTOMORPHISMS = _type1_automorphisms()
TYPE2_AUTOMORPHISMS = _type2_automorphisms()
WHITEHEAD_AUTOMORPHISMS = TYPE1_AUTOMORPHISMS + TYPE2_AUTOMORPHISMS


def whitehead_minimize(w: str) -> tuple[str, AutF2]:
    """Greedily drive the cyclic length down; returns ``(image, aut)``.

    Each step applies the single-letter Whitehead automorphism that shortens
    the cyclic length the most (ties broken by the image's cyclic normal
    form, then by position in the fixed automorphism list), stopping when no
    strict improvement exists.  The image is then rotated to its cyclic
    normal form by a final conjugation, so it is cyclically reduced and
    canonical; the returned ``aut`` satisfies ``aut.apply(w) == image``
    exactly.
    """
    cur = reduce_word(w)
    total = IDENTITY
    while True:
        base = cyclic_length(cur)
        best = None
        for idx, t in enumerate(TYPE2_AUTOMORPHISMS):
            img = t.apply(cur)
            cl = cyclic_length(img)
            if cl < base:
                cand = (cl, shortlex_key(cyclic_normal_form(img)), idx)
                if best is None or cand < best[0]:
                    best = (cand, t, img)
        if best is None:
            break
        _, t, cur = best
        total = t.compose(total)
    form = cyclic_normal_form(cur)
    if form != cur:
        h = conjugating_word(cur, form)
        total = inner(h).compose(total)
        cur = form
    return cur, total


def orbit_automorphism(source: str, target: str, max_visited: int = 10**6) -> AutF2 | None:
    """Search for an automorphism with ``aut.apply(source) == target``.

    Tri-state outcome: an exact automorphism, None when the words are
    provably in different orbits, or :class:`SearchBudgetExceeded` when the
    level search visits more than ``max_visited`` cyclic forms.

    Both words are Whitehead-minimized; if the minimal cyclic lengths agree,
    a breadth-first search over cyclic normal forms at that level (all twenty
    Whitehead automorphisms, images staying on the level) connects them
    exactly when some automorphism does.  A conjugation fix-up then upgrades
    the cyclic match to an exact one.
    """
    source = reduce_word(source)
    target = reduce_word(target)
    if source == "" or target == "":
        return IDENTITY if source == target else None
    sx, sy = abs(exponent_sum(source, "x")), abs(exponent_sum(source, "y"))
    tx, ty = abs(exponent_sum(target, "x")), abs(exponent_sum(target, "y"))
    if gcd(sx, sy) != gcd(tx, ty):
        return None
    m1, a1 = whitehead_minimize(source)
    m2, a2 = whitehead_minimize(target)
    level = cyclic_length(m1)
    if level != cyclic_length(m2):
        return None

    start = cyclic_normal_form(m1)
    goal = cyclic_normal_form(m2)
    reached: dict[str, tuple[AutF2, str]] = {start: (IDENTITY, m1)}
    queue = deque([start])
    found: AutF2 | None = None
    if start == goal:
        found = IDENTITY
    while queue and found is None:
        node = queue.popleft()
        aut, word = reached[node]
        for t in WHITEHEAD_AUTOMORPHISMS:
            img = t.apply(word)
            if cyclic_length(img) != level:
                continue
            form = cyclic_normal_form(img)
            if form in reached:
                continue
            if len(reached) >= max_visited:
                raise SearchBudgetExceeded(
                    f"orbit search visited {max_visited} cyclic forms without a verdict"
                )
            reached[form] = (t.compose(aut), img)
            if form == goal:
                found = reached[form][0]
                queue.clear()
                break
            queue.append(form)
    if found is None:
        return None

    # found(m1) is conjugate to m2; compose with the conjugation that matches
    # them exactly, then undo the two minimizing automorphisms.
    h = conjugating_word(found.apply(m1), m2)
    if h is None:
        raise AssertionError("cyclic forms matched but words are not conjugate")
    exact = a2.inverse().compose(inner(h).compose(found.compose(a1)))
    if exact.apply(source) != target:
        raise AssertionError("orbit search produced a wrong automorphism")
    return exact


def is_primitive(w: str) -> AutF2 | None:
    """An automorphism carrying ``w`` to ``x``, if ``w`` is primitive."""
    if reduce_word(w) == "":
        return None
    return orbit_automorphism(w, "x")


def nielsen_reduce_pair(alphabet, g1: str, g2: str):
    """Carry a rank-two pair of coefficient words to its canonical basis.

    Returns ``((b1, b2), moves)`` where ``(b1, b2)`` is the canonical basis
    of the subgroup the pair generates and applying ``moves`` in order to
    ``(g1, g2)`` yields exactly ``(b1, b2)``.
    """
    graph = build_subgroup_graph(alphabet, [g1, g2])
    if graph.rank() != 2:
        raise WordError("the pair does not generate a rank-two subgroup")
    basis = graph.canonical_basis()
    expressed = (basis.express(g1), basis.express(g2))
    moves = moves_to_standard(expressed)
    pair = (reduce_word(g1), reduce_word(g2))
    for m in moves:
        pair = m.apply(pair)
    if pair != basis.generators:
        raise AssertionError("move replay did not land on the canonical basis")
    return basis.generators, moves
