"""Lattice and cone geometry in exact integer coordinates.

Lattice vectors are plain tuples of ``int``. A :class:`Cone` always lives in
the coordinates of the lattice ``M`` it spans, i.e. it is full dimensional;
its dual rays are integer vectors in the dual coordinates of ``N``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .errors import DimensionError, NotPointedError, RankError

MAX_RANK = 6

Vector = tuple  # tuple[int, ...]


def vector(coords) -> Vector:
    """Coerce an iterable of integral numbers into a lattice vector."""
    out = []
    for c in coords:
        if isinstance(c, bool) or int(c) != c:
            raise TypeError(f"lattice coordinates must be integers, got {c!r}")
        out.append(int(c))
    return tuple(out)


def is_primitive(v) -> bool:
    return any(v) and linalg.content(v) == 1


def pairing(m, u) -> int:
    """<m, u> for m in M and u in N, written in dual coordinates."""
    return linalg.dot(m, u)


@dataclass(frozen=True)
class LatticeBasis:
    """A Z-basis of the lattice spanned by some generators, in HNF."""

    vectors: tuple
    ambient_rank: int
    _pivots: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def coords(self, a):
        """Integer coordinates of ``a`` in this basis, or None if a is not in the lattice."""
        if len(a) != self.ambient_rank:
            raise DimensionError(
                f"vector of length {len(a)} in ambient rank {self.ambient_rank}"
            )
        residual = list(a)
        out = []
        for b, p in zip(self.vectors, self._pivots):
            q, r = divmod(residual[p], b[p])
            if r:
                return None
            out.append(q)
            if q:
                residual = [x - q * y for x, y in zip(residual, b)]
        if any(residual):
            return None
        return tuple(out)

    def to_ambient(self, c):
        if len(c) != self.rank:
            raise DimensionError(f"expected {self.rank} coordinates, got {len(c)}")
        out = [0] * self.ambient_rank
        for q, b in zip(c, self.vectors):
            for k, x in enumerate(b):
                out[k] += q * x
        return tuple(out)


def lattice_basis(generators) -> LatticeBasis:
    """Basis of the subgroup of Z^n generated by ``generators`` (Hermite form)."""
    gens = [vector(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise DimensionError("generators have different lengths")
    rows, pivots = linalg.hermite_rows(gens, n)
    return LatticeBasis(tuple(rows), n, tuple(pivots))


def in_lattice(a, basis: LatticeBasis) -> bool:
    return basis.coords(vector(a)) is not None


def lattice_coords(a, basis: LatticeBasis):
    return basis.coords(vector(a))


@dataclass(frozen=True)
class Cone:
    """cone(A) for a finite set A of lattice vectors spanning Q^dim."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(vector(g) for g in self.generators)
        if not gens:
            raise ValueError("a cone needs at least one generator")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise DimensionError("cone generators have different lengths")
        if d > MAX_RANK:
            raise RankError(f"rank {d} exceeds the supported maximum {MAX_RANK}")
        if linalg.rank(gens) != d:
            raise RankError("generators are rank deficient; pass to M-coordinates first")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @cached_property
    def dual_rays(self) -> tuple:
        return tuple(_facet_normals(self.generators, self.dim))

    @cached_property
    def strongly_convex(self) -> bool:
        zero = (0,) * self.dim
        return not linalg.nonnegative_combination_exists(
            self.generators, zero, nontrivial=True
        )


def _facet_normals(gens, r):
    found = set()
    for subset in itertools.combinations(gens, r - 1):
        u = linalg.orthogonal_complement_vector(subset, r)
        if not any(u):
            continue
        u = linalg.primitive(u)
        signs = [pairing(g, u) for g in gens]
        if all(s >= 0 for s in signs):
            found.add(u)
        elif all(s <= 0 for s in signs):
            found.add(tuple(-x for x in u))
    return sorted(found)


def dual_rays(cone: Cone) -> list:
    """Primitive ray generators of the dual cone (primitive facet normals)."""
    return list(cone.dual_rays)


def is_strongly_convex(cone: Cone) -> bool:
    return cone.strongly_convex


def in_cone(a, cone: Cone) -> bool:
    a = vector(a)
    if len(a) != cone.dim:
        raise DimensionError(f"vector of length {len(a)} for a cone of dim {cone.dim}")
    # no rays means the cone is all of R^dim
    return all(pairing(a, u) >= 0 for u in cone.dual_rays)


def demazure_roots(cone: Cone, ray_index: int, box: int) -> list:
    """Demazure roots of ``cone`` for one distinguished ray, inside a box.

    Returns every e with max-norm <= ``box`` such that <e, rho> = -1 for the
    ray with index ``ray_index`` and <e, rho'> >= 0 for all other rays,
    sorted lexicographically. The full set is infinite; ``box`` truncates it.
    """
    if not cone.strongly_convex:
        raise NotPointedError("Demazure roots need a strongly convex cone")
    rays = cone.dual_rays
    if not 0 <= ray_index < len(rays):
        raise IndexError(f"ray index {ray_index} out of range for {len(rays)} rays")
    if box < 0:
        raise ValueError("box must be nonnegative")
    rho = rays[ray_index]
    others = [u for k, u in enumerate(rays) if k != ray_index]
    out = []
    for e in itertools.product(range(-box, box + 1), repeat=cone.dim):
        if pairing(e, rho) != -1:
            continue
        if all(pairing(e, u) >= 0 for u in others):
            out.append(e)
    return out
