"""Affine semigroups S in a lattice, with membership and the length function s.

Construction takes generators in ambient coordinates. Every other method
works in the coordinates of the lattice ``M = ZS`` (see
:meth:`AffineSemigroup.to_m` / :meth:`AffineSemigroup.to_ambient`), which
coincide with ambient coordinates whenever the generators span the standard
lattice, as for N, N^2 or <2, 3>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import linalg
from .errors import NotInSemigroupError, NotPointedError, RankError, DimensionError
from .lattice import (
    MAX_RANK,
    Cone,
    demazure_roots,
    in_cone,
    lattice_basis,
    pairing,
    vector,
)


class _Infinity:
    """The absorbing element of S_inf."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def exponent_key(a, s_value=None):
    """Sort key putting lattice points first (by s-value, then lex) and INF last."""
    if a is INF:
        return (1,)
    return (0, s_value(a) if s_value is not None else 0, a)


@dataclass(frozen=True)
class Representation:
    """a = sum of multiplicities[k] * hilbert[k]."""

    multiplicities: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.multiplicities.values())

    def evaluate(self, hilbert, rank):
        out = (0,) * rank
        for k, m in self.multiplicities.items():
            out = linalg.add(out, linalg.scale(m, hilbert[k]))
        return out


class Root(NamedTuple):
    degree: tuple
    ray: tuple


class AffineSemigroup:
    """The semigroup generated by finitely many lattice vectors.

    Non-pointed semigroups can be built (and report ``pointed == False``),
    but everything that needs a bounded search raises
    :class:`NotPointedError` on them.
    """

    def __init__(self, generators, ambient_rank=None):
        gens = []
        for g in generators:
            g = vector(g)
            if ambient_rank is not None and len(g) != ambient_rank:
                raise DimensionError(
                    f"generator {list(g)} does not have length {ambient_rank}"
                )
            if any(g) and g not in gens:
                gens.append(g)
        if not gens:
            raise ValueError("an affine semigroup needs a nonzero generator")
        if any(len(g) != len(gens[0]) for g in gens):
            raise DimensionError("generators have different lengths")
        self.ambient_rank = len(gens[0])
        self.generators = tuple(gens)
        self.basis = lattice_basis(gens)
        self.rank = self.basis.rank
        if self.rank > MAX_RANK:
            raise RankError(f"rank {self.rank} exceeds the supported maximum {MAX_RANK}")
        self.m_generators = tuple(self.basis.coords(g) for g in gens)
        self.cone = Cone(self.m_generators)
        self.dual_rays = self.cone.dual_rays
        self.pointed = self.cone.strongly_convex
        self.zero = (0,) * self.rank

        self._gen_member_memo = {}
        self._rep_memo = {}
        self._s_memo = {}
        self._elements_memo = {}
        self._roots_memo = {}

        self.positivity = None
        self.hilbert = None
        if self.pointed:
            u = tuple(sum(c) for c in zip(*self.dual_rays))
            if any(pairing(g, u) < 1 for g in self.m_generators):
                raise AssertionError(
                    "sum of dual rays is not strictly positive on a pointed cone"
                )
            self.positivity = u
            self.hilbert = self._hilbert_filter()
            self._heights = tuple(pairing(h, u) for h in self.hilbert)

    def __repr__(self):
        return f"AffineSemigroup({[list(g) for g in self.generators]})"

    # -- coordinates -------------------------------------------------------

    def to_m(self, a):
        """Ambient vector -> M-coordinates; raises if ``a`` is not in ZS."""
        c = self.basis.coords(vector(a))
        if c is None:
            raise NotInSemigroupError(f"{list(a)} is not in the lattice ZS")
        return c

    def to_ambient(self, c):
        return self.basis.to_ambient(c)

    def _check(self, a):
        a = vector(a)
        if len(a) != self.rank:
            raise DimensionError(f"expected {self.rank} M-coordinates, got {len(a)}")
        return a

    def _need_pointed(self):
        if not self.pointed:
            raise NotPointedError(f"{self!r} is not pointed")

    def height(self, a) -> int:
        """<a, u> for the positivity functional u."""
        self._need_pointed()
        return pairing(a, self.positivity)

    def is_pointed(self) -> bool:
        return self.pointed

    # -- Hilbert basis -------------------------------------------------------

    def _gen_member(self, a) -> bool:
        """Membership over the raw generator list (used before H is known)."""
        if not any(a):
            return True
        if pairing(a, self.positivity) <= 0:
            return False
        memo = self._gen_member_memo
        if a not in memo:
            memo[a] = any(
                self._gen_member(linalg.sub(a, g)) for g in self.m_generators
            )
        return memo[a]

    def _hilbert_filter(self):
        gens = self.m_generators
        irreducible = []
        for g in gens:
            if not any(o != g and self._gen_member(linalg.sub(g, o)) for o in gens):
                irreducible.append(g)
        return tuple(sorted(irreducible))

    def hilbert_basis(self) -> list:
        self._need_pointed()
        return list(self.hilbert)

    # -- membership ------------------------------------------------------------

    def _represent(self, residual, k):
        """Multiplicities for hilbert[k:] summing to ``residual``, or None."""
        if not any(residual):
            return {}
        if k == len(self.hilbert):
            return None
        key = (residual, k)
        memo = self._rep_memo
        if key in memo:
            return memo[key]
        h = self.hilbert[k]
        result = None
        for m in range(pairing(residual, self.positivity) // self._heights[k], -1, -1):
            rest = linalg.sub(residual, linalg.scale(m, h))
            sub = self._represent(rest, k + 1)
            if sub is not None:
                result = dict(sub)
                if m:
                    result[k] = m
                break
        memo[key] = result
        return result

    def member(self, a):
        """A representation of ``a`` over the Hilbert basis, or None."""
        self._need_pointed()
        a = self._check(a)
        if pairing(a, self.positivity) < 0:
            return None
        rep = self._represent(a, 0)
        return None if rep is None else Representation(rep)

    def contains(self, a) -> bool:
        return self.member(a) is not None

    def __contains__(self, a):
        return self.contains(a)

    def s_value(self, a) -> int:
        """The largest number of Hilbert basis summands in a representation of a."""
        self._need_pointed()
        a = self._check(a)
        s = self._s(a)
        if s is None:
            raise NotInSemigroupError(f"{list(a)} is not in S")
        return s

    def _s(self, a):
        if not any(a):
            return 0
        if pairing(a, self.positivity) <= 0:
            return None
        memo = self._s_memo
        if a in memo:
            return memo[a]
        best = None
        for h in self.hilbert:
            sb = self._s(linalg.sub(a, h))
            if sb is not None and (best is None or sb + 1 > best):
                best = sb + 1
        memo[a] = best
        return best

    def decompositions(self, a) -> list:
        """All ordered pairs (b, c) in S x S with b + c = a."""
        self._need_pointed()
        a = self._check(a)
        bound = pairing(a, self.positivity)
        if bound < 0:
            return []
        out = []
        for b in self.elements(bound):
            c = linalg.sub(a, b)
            if self.member(c) is not None:
                out.append((b, c))
        return out

    def elements(self, max_height: int) -> list:
        """All elements of S with height <= max_height, sorted lexicographically."""
        self._need_pointed()
        memo = self._elements_memo
        if max_height not in memo:
            seen = {self.zero}
            frontier = [self.zero]
            while frontier:
                nxt = []
                for x in frontier:
                    for h in self.hilbert:
                        y = linalg.add(x, h)
                        if y not in seen and pairing(y, self.positivity) <= max_height:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            memo[max_height] = sorted(seen)
        return list(memo[max_height])

    def max_hilbert_height(self) -> int:
        self._need_pointed()
        return max(self._heights)

    def sublevel(self, i: int) -> list:
        """H_i = {a in S : s(a) <= i}, sorted by (s, lex)."""
        self._need_pointed()
        if i < 0:
            raise ValueError("level must be nonnegative")
        pts = [a for a in self.elements(i * self.max_hilbert_height()) if self._s(a) <= i]
        return sorted(pts, key=lambda a: (self._s(a), a))

    def sat_member(self, a) -> bool:
        """Is the ambient vector ``a`` in S^sat = ZS cap cone(S)?"""
        c = self.basis.coords(vector(a))
        return c is not None and in_cone(c, self.cone)

    # -- Demazure roots --------------------------------------------------------

    def roots(self, box: int) -> list:
        """Demazure roots of S with max-norm <= box, with their distinguished rays.

        These are the roots of the saturation that stabilize C[S]: h + e in S
        for every Hilbert basis element h with <h, rho> != 0.
        """
        self._need_pointed()
        if box in self._roots_memo:
            return list(self._roots_memo[box])
        out = []
        for idx, rho in enumerate(self.dual_rays):
            for e in demazure_roots(self.cone, idx, box):
                if all(
                    self.contains(linalg.add(h, e))
                    for h in self.hilbert
                    if pairing(h, rho) != 0
                ):
                    out.append(Root(e, rho))
        out.sort()
        self._roots_memo[box] = tuple(out)
        return out

    def root_ray(self, e, box=None):
        """The distinguished ray of ``e`` if it is a root of S, else None."""
        e = self._check(e)
        if box is None:
            box = max(1, max(abs(x) for x in e))
        for root in self.roots(box):
            if root.degree == e:
                return root.ray
        return None

    def root_reduction(self, e, box: int):
        """A witness (e', a) with e = e' + a, a in S \\ {0}, e' another root; or None."""
        e = self._check(e)
        roots = self.roots(box)
        if e not in {r.degree for r in roots}:
            raise ValueError(f"{list(e)} is not a root of S within box {box}")
        for r in roots:
            if r.degree == e:
                continue
            a = linalg.sub(e, r.degree)
            if any(a) and self.contains(a):
                return r.degree, a
        return None

    def is_root_reducible(self, e, box: int) -> bool:
        return self.root_reduction(e, box) is not None


def build(ambient_rank, generators) -> AffineSemigroup:
    return AffineSemigroup(generators, ambient_rank=ambient_rank)
