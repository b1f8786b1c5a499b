"""Derivations of C[S] and C[S_inf].

A derivation is stored through its homogeneous decomposition: finitely many
pairs (e, phi) with e in M and phi a rational linear form on M, acting as
chi^a -> phi(a) chi^(a + e). A derivation of C[S_inf] is the lift of one of
C[S]: chi^a -> (1 - chi^inf) d'(chi^a) and chi^inf -> 0, so it stores the
same data with a carrier flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import AlgebraElement, in_I_infty, monomial
from .errors import CarrierError, ClosureError, DimensionError, InconsistentImagesError
from .lattice import vector
from .semigroup import INF, AffineSemigroup


def _form(phi, rank):
    phi = tuple(Fraction(x) if not isinstance(x, str) else Fraction(x.strip()) for x in phi)
    if len(phi) != rank:
        raise DimensionError(f"linear form needs {rank} coefficients, got {len(phi)}")
    return phi


def _eval(phi, a) -> Fraction:
    return sum((p * x for p, x in zip(phi, a)), Fraction(0))


@dataclass(frozen=True)
class HomogeneousDerivation:
    """chi^a -> phi(a) chi^(a + e) on C[S]."""

    semigroup: AffineSemigroup
    degree: tuple
    form: tuple

    def __post_init__(self):
        S = self.semigroup
        e = vector(self.degree)
        if len(e) != S.rank:
            raise DimensionError(f"degree needs {S.rank} coordinates, got {len(e)}")
        object.__setattr__(self, "degree", e)
        object.__setattr__(self, "form", _form(self.form, S.rank))
        for h in S.hilbert_basis():
            if self.value(h) != 0 and not S.contains(linalg.add(h, e)):
                raise ClosureError(
                    f"phi({list(h)}) != 0 but {list(h)} + {list(e)} is not in S", generator=h
                )

    def value(self, a) -> Fraction:
        return _eval(self.form, a)

    def is_zero(self) -> bool:
        return not any(self.form)

    def iterate_coefficient(self, a, n: int) -> Fraction:
        """Coefficient of chi^(a + n e) in the n-th iterate applied to chi^a."""
        c = Fraction(1)
        x = tuple(a)
        for _ in range(n):
            c *= self.value(x)
            if not c:
                return c
            x = linalg.add(x, self.degree)
        return c


def make_homogeneous(S, e, phi) -> HomogeneousDerivation:
    return HomogeneousDerivation(S, tuple(e), tuple(phi))


class Derivation:
    """A finite sum of homogeneous derivations with distinct degrees."""

    def __init__(self, semigroup: AffineSemigroup, components=(), on_inf=False):
        self.semigroup = semigroup
        self.on_inf = on_inf
        comps = {}
        for c in components:
            if c.semigroup is not semigroup:
                raise ValueError("component belongs to a different semigroup")
            if c.degree in comps:
                raise ValueError(f"two components share the degree {list(c.degree)}")
            if not c.is_zero():
                comps[c.degree] = c
        self.components = {e: comps[e] for e in sorted(comps)}

    @property
    def carrier(self) -> str:
        return "S_inf" if self.on_inf else "S"

    @property
    def degrees(self) -> list:
        return list(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def is_homogeneous(self) -> bool:
        return len(self.components) == 1

    def single_component(self) -> HomogeneousDerivation:
        if len(self.components) != 1:
            raise ValueError(f"derivation has {len(self.components)} homogeneous components")
        return next(iter(self.components.values()))

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return (self.semigroup is other.semigroup and self.on_inf == other.on_inf
                and {e: c.form for e, c in self.components.items()}
                == {e: c.form for e, c in other.components.items()})

    def __hash__(self):
        return hash((id(self.semigroup), self.on_inf,
                     tuple((e, c.form) for e, c in self.components.items())))

    def __repr__(self):
        parts = ", ".join(
            f"e={list(e)} phi={[str(x) for x in c.form]}" for e, c in self.components.items()
        )
        return f"Derivation[{self.carrier}]({parts})"

    # -- action -------------------------------------------------------------

    def monomial_image(self, a) -> dict:
        """Terms of d(chi^a) for a in S (before the lift factor)."""
        out = {}
        for e, c in self.components.items():
            v = c.value(a)
            if v:
                k = linalg.add(a, e)
                out[k] = out.get(k, 0) + v
        return out

    def apply(self, f: AlgebraElement) -> AlgebraElement:
        if f.semigroup is not self.semigroup:
            raise CarrierError("element and derivation live over different semigroups")
        if f.level is not None or f.over_inf != self.on_inf:
            raise CarrierError(f"cannot apply a derivation of C[{self.carrier}] to {f.carrier}")
        out = {}
        for a, c in f.terms.items():
            if a is INF:
                continue
            for k, v in self.monomial_image(a).items():
                out[k] = out.get(k, 0) + c * v
                if self.on_inf:
                    out[INF] = out.get(INF, 0) - c * v
        return AlgebraElement(self.semigroup, out, over_inf=self.on_inf, check=False)

    __call__ = apply

    def iterate(self, f: AlgebraElement, n: int) -> AlgebraElement:
        if n < 0:
            raise ValueError("iteration count must be nonnegative")
        for _ in range(n):
            if f.is_zero():
                break
            f = self.apply(f)
        return f

    def to_json(self) -> dict:
        def fmt(x):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "carrier": self.carrier,
            "components": [
                {"degree": list(e), "phi": [fmt(x) for x in c.form]}
                for e, c in self.components.items()
            ],
        }


def from_components(S, components, on_inf=False) -> Derivation:
    """Build from ``[(e, phi), ...]``."""
    return Derivation(S, [make_homogeneous(S, e, phi) for e, phi in components], on_inf)


def zero_derivation(S, on_inf=False) -> Derivation:
    return Derivation(S, (), on_inf)


def from_generator_images(S: AffineSemigroup, images, on_inf=None) -> Derivation:
    """Derivation determined by the images of chi^h for h in the Hilbert basis.

    ``images`` maps Hilbert basis elements to algebra elements; missing
    generators map to 0. Over S_inf every image must lie in I_inf, and only
    its finite part carries information. Each degree e = b - h collects the
    prescribed values phi_e(h); a rational linear system then decides whether
    an additive phi_e exists.
    """
    H = S.hilbert_basis()
    imgs = {}
    for h, f in images.items():
        h = vector(h)
        if h not in H:
            raise ValueError(f"{list(h)} is not a Hilbert basis element")
        imgs[h] = f
    if on_inf is None:
        on_inf = any(f.over_inf for f in imgs.values())
    values = {}
    for h, f in imgs.items():
        if f.semigroup is not S or f.level is not None:
            raise CarrierError("generator image lives in a different ring")
        if f.over_inf != on_inf:
            raise CarrierError("generator images mix C[S] and C[S_inf]")
        if on_inf and not in_I_infty(f):
            raise InconsistentImagesError(
                f"image of x^{list(h)} is not annihilated by x^inf, so no derivation of "
                "C[S_inf] has it"
            )
        for b, c in f.terms.items():
            if b is INF:
                continue
            e = linalg.sub(b, h)
            values.setdefault(e, {})[h] = c
    comps = []
    for e in sorted(values):
        rhs = [values[e].get(h, Fraction(0)) for h in H]
        phi = linalg.solve([list(h) for h in H], rhs)
        if phi is None:
            raise InconsistentImagesError(
                f"no linear form phi on M matches the prescribed values for degree {list(e)}",
                degree=e,
            )
        comps.append(HomogeneousDerivation(S, e, phi))
    return Derivation(S, comps, on_inf)


def generator_images(d: Derivation) -> dict:
    return {h: d.apply(monomial(d.semigroup, h, over_inf=d.on_inf))
            for h in d.semigroup.hilbert_basis()}


def lift(d: Derivation) -> Derivation:
    """C[S] -> C[S_inf]: chi^a -> (1 - chi^inf) d(chi^a), chi^inf -> 0."""
    if d.on_inf:
        raise CarrierError("lift expects a derivation of C[S]")
    return Derivation(d.semigroup, d.components.values(), on_inf=True)


def project(d: Derivation) -> Derivation:
    """C[S_inf] -> C[S]: keep the finite part of every generator image."""
    if not d.on_inf:
        raise CarrierError("project expects a derivation of C[S_inf]")
    images = {h: f.finite_part() for h, f in generator_images(d).items()}
    return from_generator_images(d.semigroup, images, on_inf=False)


# -- local nilpotency -------------------------------------------------------------

@dataclass(frozen=True)
class LndVerdict:
    is_lnd: bool
    method: str  # "closed-form" or "oracle"
    ray: tuple | None = None  # distinguished ray when a Demazure root
    scalar: Fraction | None = None  # phi = scalar * <., ray>
    depth: int | None = None
    witness: tuple | None = None  # Hilbert element whose iterates survive the depth

    def __bool__(self):
        return self.is_lnd


def lnd_oracle(d: Derivation, depth: int = 12) -> LndVerdict:
    """Iterate on every chi^h, h in the Hilbert basis, up to ``depth`` times.

    Nilpotence on the generators implies local nilpotence by the Leibniz
    rule. A survivor is evidence (not proof) of non-nilpotence.
    """
    S = d.semigroup
    for h in S.hilbert_basis():
        f = monomial(S, h, over_inf=d.on_inf)
        if not d.iterate(f, depth).is_zero():
            return LndVerdict(False, "oracle", depth=depth, witness=h)
    return LndVerdict(True, "oracle", depth=depth)


def is_lnd(d: Derivation, depth: int = 12) -> LndVerdict:
    """Local nilpotency.

    A single homogeneous component is decided in closed form: it is an LND
    iff its degree is a Demazure root of S and phi is a multiple of the
    distinguished ray. Sums of several components fall back to the bounded
    oracle. A derivation of C[S_inf] gets the verdict of its projection.
    """
    if d.on_inf:
        d = project(d)
    if d.is_zero():
        return LndVerdict(True, "closed-form")
    if not d.is_homogeneous():
        return lnd_oracle(d, depth)
    c = d.single_component()
    rho = d.semigroup.root_ray(c.degree)
    if rho is None:
        return LndVerdict(False, "closed-form")
    k = next(i for i, x in enumerate(rho) if x)
    lam = c.form[k] / rho[k]
    if tuple(lam * x for x in rho) != c.form:
        return LndVerdict(False, "closed-form")
    return LndVerdict(True, "closed-form", ray=rho, scalar=lam)
