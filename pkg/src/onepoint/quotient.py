"""Finite quotients S_i = H_i u {inf} of S_inf and the tower S_0 <- S_1 <- ...

H_i is the set of elements of length s(a) <= i. A sum that leaves H_i
becomes inf, and inf absorbs everything. The bonding map phi_i: S_{i+1} -> S_i
fixes H_i and sends the rest to inf.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .semigroup import INF, AffineSemigroup, exponent_key


@dataclass(frozen=True)
class FiniteQuotient:
    level: int
    elements: tuple  # H_i sorted by (s, lex), then INF
    table: dict = field(repr=False)  # (x, y) -> x + y in S_i

    def add(self, x, y):
        return self.table[(x, y)]

    @property
    def lattice_elements(self) -> tuple:
        return self.elements[:-1]

    def __len__(self):
        return len(self.elements)

    def semigroup_violation(self):
        """A witness of non-commutativity or non-associativity, or None.

        Returns ``("commutativity", (x, y))`` or ``("associativity", (x, y, z))``.
        """
        els = self.elements
        for x, y in itertools.combinations(els, 2):
            if self.table[(x, y)] != self.table[(y, x)]:
                return "commutativity", (x, y)
        for x, y, z in itertools.product(els, repeat=3):
            if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)):
                return "associativity", (x, y, z)
        return None

    def to_json(self) -> dict:
        def enc(x):
            return "inf" if x is INF else list(x)

        return {
            "level": self.level,
            "elements": [enc(x) for x in self.elements],
            "table": [[enc(self.add(x, y)) for y in self.elements] for x in self.elements],
        }

    @classmethod
    def from_json(cls, obj) -> "FiniteQuotient":
        def dec(x):
            return INF if x == "inf" else tuple(x)

        els = tuple(dec(x) for x in obj["elements"])
        table = {}
        for x, row in zip(els, obj["table"]):
            for y, z in zip(els, row):
                table[(x, y)] = dec(z)
        return cls(int(obj["level"]), els, table)


def build_quotient(S: AffineSemigroup, i: int) -> FiniteQuotient:
    """Materialize S_i with its full addition table."""
    H = S.sublevel(i)
    members = set(H)
    table = {}
    for x in H:
        for y in H:
            z = linalg.add(x, y)
            table[(x, y)] = z if z in members else INF
    for x in H + [INF]:
        table[(x, INF)] = INF
        table[(INF, x)] = INF
    return FiniteQuotient(i, tuple(H) + (INF,), table)


def bonding_map(upper: FiniteQuotient, lower: FiniteQuotient) -> dict:
    """phi: S_{i+1} -> S_i, identity on H_i and INF elsewhere."""
    keep = set(lower.elements)
    return {x: (x if x in keep else INF) for x in upper.elements}


def phi(S: AffineSemigroup, i: int) -> dict:
    return bonding_map(build_quotient(S, i + 1), build_quotient(S, i))


def homomorphism_violation(upper, lower, mapping):
    """(x, y) with phi(x + y) != phi(x) + phi(y), or a non-surjectivity witness."""
    for x, y in itertools.product(upper.elements, repeat=2):
        if mapping[upper.add(x, y)] != lower.add(mapping[x], mapping[y]):
            return "homomorphism", (x, y)
    missed = set(lower.elements) - set(mapping.values())
    if missed:
        return "surjectivity", (min(missed, key=exponent_key),)
    return None


@dataclass
class TowerReport:
    passed: bool
    levels: int
    sizes: list
    counterexample: tuple | None = None  # (kind, level, data)
    threads_checked: int = 0

    def __bool__(self):
        return self.passed


def _thread(top, maps):
    """Images of ``top`` at every level, from level 0 up to the top level."""
    out = [top]
    x = top
    for m in reversed(maps):
        x = m[x]
        out.append(x)
    return out[::-1]


def check_tower(S: AffineSemigroup, L: int, quotients=None) -> TowerReport:
    """Verify the truncated tower S_0 <- ... <- S_L.

    Checks every S_i is a commutative semigroup, every phi_i is a surjective
    homomorphism, H_i grows monotonically, and every thread through the
    tower is either constantly inf, or inf below level s(a) and constantly a
    from level s(a) on. ``quotients`` replaces the freshly built levels (used
    to inject faults).
    """
    if L < 1:
        raise ValueError("need at least one bonding map (L >= 1)")
    qs = list(quotients) if quotients is not None else [build_quotient(S, i) for i in range(L + 1)]
    sizes = [len(q) for q in qs]
    report = TowerReport(True, L, sizes)

    def fail(kind, level, data):
        report.passed = False
        report.counterexample = (kind, level, data)
        return report

    for q in qs:
        bad = q.semigroup_violation()
        if bad:
            return fail(bad[0], q.level, bad[1])
    maps = []
    for lower, upper in zip(qs, qs[1:]):
        if not set(lower.lattice_elements) <= set(upper.lattice_elements):
            return fail("monotonicity", lower.level, ())
        m = bonding_map(upper, lower)
        bad = homomorphism_violation(upper, lower, m)
        if bad:
            return fail(bad[0], lower.level, bad[1])
        maps.append(m)

    for top in qs[-1].elements:
        thread = _thread(top, maps)
        report.threads_checked += 1
        if top is INF:
            ok = all(x is INF for x in thread)
        else:
            s = S.s_value(top)
            ok = all((x is INF) if lvl < s else (x == top) for lvl, x in enumerate(thread))
        if not ok:
            return fail("thread", len(thread) - 1, tuple(thread))
    return report
