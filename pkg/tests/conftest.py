"""Shared test helpers: random words and a graph-free membership oracle."""

import itertools

from freeq.words import invert, multiply, reduce_word


def random_reduced_word(rng, max_len, letters="abAB"):
    return reduce_word("".join(rng.choice(letters) for _ in range(rng.randint(1, max_len))))


# A naive membership oracle that shares no code with the folding machinery:
# Nielsen-reduce the generating tuple by repeated pairwise shortening, then
# decide membership by a depth-first search over length-non-increasing
# strips (with a little slack).


def naive_nielsen_reduce(gens):
    gens = [reduce_word(g) for g in gens if reduce_word(g)]
    changed = True
    while changed:
        changed = False
        gens = [g for g in gens if g]
        for i, j in itertools.permutations(range(len(gens)), 2):
            a, b = gens[i], gens[j]
            for cand in (multiply(a, b), multiply(a, invert(b)),
                         multiply(b, a), multiply(invert(b), a)):
                if len(cand) < len(a):
                    gens[i] = cand
                    changed = True
                    break
            if changed:
                break
    return sorted(set(g for g in gens if g))


def naive_member(reduced, w):
    """Decide w in <reduced> for an already Nielsen-reduced tuple."""
    w = reduce_word(w)
    if not w:
        return True
    if not reduced:
        return False
    # for a Nielsen-reduced set, a member's strip sequence never grows
    cap = len(w) + 4
    steps = [g for r in reduced for g in (r, invert(r))]
    seen = set()
    stack = [w]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        for s in steps:
            nxt = multiply(invert(s), cur)
            if not nxt:
                return True
            if len(nxt) <= cap and nxt not in seen:
                stack.append(nxt)
    return False
