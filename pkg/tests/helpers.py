"""Random generators and brute-force oracles shared by the test modules.

The oracles here avoid the library routine they are checking: they work
from definitions (pair scans, linear spans, sums of generators) instead.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from onepoint import linalg
from onepoint.algebra import AlgebraElement
from onepoint.catalog import semigroup
from onepoint.derivation import from_components
from onepoint.semigroup import INF

POINTED = ["N", "N2", "N<2,3>", "A2"]

_cache = {}


def sg(name):
    """Catalog semigroups are shared so memoized searches are reused."""
    if name not in _cache:
        _cache[name] = semigroup(name)
    return _cache[name]


def rand_coef(rng: random.Random) -> Fraction:
    num = rng.choice([x for x in range(-5, 6) if x])
    return Fraction(num, rng.randint(1, 3))


def random_element(rng, S, over_inf=False, max_s=3, max_terms=4, inf_prob=0.5):
    pool = S.sublevel(max_s)
    terms = {}
    for a in rng.sample(pool, min(len(pool), rng.randint(1, max_terms))):
        terms[a] = rand_coef(rng)
    if over_inf and rng.random() < inf_prob:
        terms[INF] = rand_coef(rng)
    return AlgebraElement(S, terms, over_inf=over_inf)


def admissible_forms(S, e):
    """Integer basis of linear forms phi with phi(h) = 0 whenever h + e is outside S."""
    bad = [list(h) for h in S.hilbert_basis() if not S.contains(linalg.add(h, e))]
    return linalg.nullspace(bad, S.rank)


def random_component(rng, S, box=2, root_prob=0.3):
    """A random (e, phi) that satisfies the closure condition and has phi != 0."""
    roots = S.roots(box)
    while True:
        if roots and rng.random() < root_prob:
            e, rho = rng.choice(roots)
            lam = rand_coef(rng)
            return e, tuple(lam * x for x in rho)
        e = tuple(rng.randint(-box, box) for _ in range(S.rank))
        basis = admissible_forms(S, e)
        if not basis:
            continue
        phi = [Fraction(0)] * S.rank
        for v in basis:
            c = rand_coef(rng)
            phi = [p + c * x for p, x in zip(phi, v)]
        if any(phi):
            return e, tuple(phi)


def random_derivation(rng, S, max_components=2, box=2):
    comps = {}
    for _ in range(rng.randint(1, max_components)):
        e, phi = random_component(rng, S, box)
        comps[e] = phi
    return from_components(S, list(comps.items()))


def brute_decompositions(S, a, bound):
    """All (b, c) with b + c = a by scanning the box of radius ``bound``."""
    out = []
    for b in itertools.product(range(-bound, bound + 1), repeat=S.rank):
        c = linalg.sub(a, b)
        if S.contains(b) and S.contains(c):
            out.append((b, c))
    return sorted(out)


def brute_s_value(S, a):
    """Max number of Hilbert summands, by enumerating multiplicity vectors."""
    H = S.hilbert_basis()
    top = S.height(a)
    best = None
    ranges = [range(top // S.height(h) + 1) for h in H]
    for mult in itertools.product(*ranges):
        v = S.zero
        for m, h in zip(mult, H):
            v = linalg.add(v, linalg.scale(m, h))
        if v == tuple(a):
            best = max(best or 0, sum(mult))
    return best


def span_member(f: AlgebraElement, i: int, max_s: int) -> bool:
    """Is f a rational combination of chi^b (chi^a - chi^inf) with s(a) > i?

    Multipliers and generators are truncated so that s(a + b) <= max_s; f must
    be supported in that range. Solved as a plain linear system.
    """
    S = f.semigroup
    gens = set()
    for a in S.sublevel(max_s):
        if S.s_value(a) <= i:
            continue
        for b in S.sublevel(max_s):
            c = linalg.add(a, b)
            if S.contains(c) and S.s_value(c) <= max_s:
                gens.add(c)
    gens = sorted(gens)
    keys = sorted({a for a in f.terms if a is not INF} | set(gens)) + [INF]
    cols = []
    for c in gens:
        cols.append([1 if k == c else (-1 if k is INF else 0) for k in keys])
    target = [f.coefficient(k) for k in keys]
    if not gens:
        return not any(target)
    A = [list(row) for row in zip(*cols)]
    return linalg.solve(A, target) is not None
