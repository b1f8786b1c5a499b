"""Named example semigroups and derivations used by tests and the CLI."""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraElement, CompletionTower
from .derivation import from_components, lift
from .semigroup import INF, AffineSemigroup

SEMIGROUPS = {
    "N": [(1,)],
    "N2": [(1, 0), (0, 1)],
    "Z": [(1,), (-1,)],
    "N<2,3>": [(2,), (3,)],
    "<2,-3>": [(2,), (-3,)],
    "A2": [(1, 0), (1, 1), (1, 2)],
}

# (semigroup name, degree, linear form, expected verdict)
CLASSIFY_CASES = [
    ("N", (-1,), (1,), "not-integrable"),
    ("N", (0,), (1,), "not-integrable"),
    ("N", (1,), (1,), "integrable"),
    ("N", (2,), (1,), "integrable"),
    ("N2", (-1, 0), (1, 0), "not-integrable"),
    ("N2", (1, 0), (1, 1), "integrable"),
    ("N2", (1, 1), (1, 1), "integrable"),
    ("N<2,3>", (2,), (1,), "integrable"),
    ("N<2,3>", (3,), (1,), "integrable"),
]


def semigroup(name: str) -> AffineSemigroup:
    try:
        gens = SEMIGROUPS[name]
    except KeyError:
        raise KeyError(f"unknown semigroup {name!r}; choose from {sorted(SEMIGROUPS)}") from None
    return AffineSemigroup(gens)


def classify_cases():
    """Yield (S, lifted derivation, expected verdict) for every catalog case."""
    cache = {}
    for name, e, phi, expected in CLASSIFY_CASES:
        S = cache.setdefault(name, semigroup(name))
        yield name, S, lift(from_components(S, [(e, phi)])), expected


def halving_tower(L: int, S: AffineSemigroup | None = None) -> CompletionTower:
    """f_l = 2^-l chi^inf + sum_{k <= l} 2^-k chi^k in C[N_l], for l = 0..L.

    Compatible under psi, but never stabilizes, so its limit is not in C[N_inf].
    """
    S = S or semigroup("N")
    levels = []
    for l in range(L + 1):
        terms = {(k,): Fraction(1, 2 ** k) for k in range(l + 1)}
        terms[INF] = Fraction(1, 2 ** l)
        levels.append(AlgebraElement(S, terms, over_inf=True, level=l))
    return CompletionTower(tuple(levels))
